"""Tropical nearby monodromy eigenvalues of Newton polyhedra.

Coordinate sets ``I`` are 0-based tuples. ``N^I`` is the projection of
``N`` deleting the ``I`` coordinates and lives in ``Q^Ī``; fibers and
fiber polyhedra live in ``Q^I``.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from .cones import Cone
from .fans import AmbientCone, WeightedFan, direct_image, dual_fan, fan_sum, normal_form, scale
from .lattice_core import primitive_functional
from .polyhedra import (
    Face,
    LatticePolyhedron,
    VFace,
    VirtualPolyhedron,
    complement,
    fiber,
    fiber_polyhedron,
    is_trivial,
    lattice_volume,
    minkowski_sum,
    project,
    segment_lattice_points,
    v_faces,
)


class MonodromyError(ValueError):
    """Precondition violation (maps to CLI exit code 3)."""


class InvariantBreach(RuntimeError):
    """Two computations that must agree did not (maps to CLI exit code 4)."""


TAGS = ("TNE", "CASE1", "CASE2", "CASE3", "CASE4")


# ----------------------------------------------------------------------
# zeta functions

@dataclass(frozen=True)
class ZetaFactors:
    """Formal product of ``(1 - t^M)^e`` over the entries of ``factors``."""

    factors: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_map(cls, m: dict[int, int]) -> "ZetaFactors":
        return cls(tuple(sorted((int(M), int(e)) for M, e in m.items() if e)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(f"(1-t^{M})^{e}" for M, e in self.factors)


def eigenvalues(z: ZetaFactors, n: int) -> Counter:
    """Monodromy eigenvalues ``exp(2 pi i q)`` as a multiset of ``q in [0,1)``.

    Reads the zeta function as the alternating product of characteristic
    polynomials on reduced cohomology of an isolated singularity in ``n``
    variables; entries with negative multiplicity indicate a non-isolated case.
    """
    out: Counter = Counter()
    sign = (-1) ** (n - 1)
    for M, e in z.factors:
        for j in range(M):
            out[Fraction(j, M)] += sign * e
    out[Fraction(0)] -= sign
    return Counter({q: c for q, c in out.items() if c})


def zeta_factors(N: LatticePolyhedron, I: Sequence[int] = ()) -> ZetaFactors:
    """Product over bounded V-faces ``B`` of ``N^I`` of ``(1-t^{m_B})^{(-1)^{dim B} Vol B}``."""
    acc: dict[int, int] = {}
    for vf in _bounded_vfaces(project(N, I)):
        e = (-1) ** vf.dim * lattice_volume(vf.face)
        acc[vf.m] = acc.get(vf.m, 0) + int(e)
    return ZetaFactors.from_map(acc)


def _bounded_vfaces(NI: LatticePolyhedron) -> list[VFace]:
    return [vf for vf in v_faces(NI) if vf.bounded]


def _divisors(d: int) -> list[int]:
    return [k for k in range(1, d + 1) if d % k == 0]


def tautological_denominators(N: LatticePolyhedron) -> set[int]:
    """Divisors of the exponents of monomial factors ``x_i^{d_i}``, ``d_i = min x_i`` over ``N``."""
    out = {1}
    for i in range(N.dim):
        d = min(v[i] for v in N.vertices)
        if d > 0 and d.denominator == 1:
            out |= set(_divisors(int(d)))
    return out


# ----------------------------------------------------------------------
# queries

@dataclass(frozen=True)
class TneQuery:
    N: LatticePolyhedron
    I: tuple[int, ...]
    m: int
    k: int = 1
    allow_tautological: bool = False

    def __post_init__(self):
        object.__setattr__(self, "I", tuple(sorted(set(self.I))))
        if any(not 0 <= i < self.N.dim for i in self.I):
            raise MonodromyError("coordinate index out of range")
        if self.m < 2 or gcd(self.k, self.m) != 1:
            raise MonodromyError("need coprime k and m with m >= 2")
        if not self.allow_tautological and self.m in tautological_denominators(self.N):
            raise MonodromyError("tautological denominator")

    @property
    def Ibar(self) -> tuple[int, ...]:
        return complement(self.I, self.N.dim)

    @property
    def projection(self) -> LatticePolyhedron:
        return project(self.N, self.I)


def contributing_faces(q: TneQuery) -> list[VFace]:
    """Bounded V-faces ``B`` of ``N^I`` with ``m | m_B``."""
    return [vf for vf in _bounded_vfaces(q.projection) if vf.m % q.m == 0]


def codim0_weight(q: TneQuery) -> Fraction:
    return sum(((-1) ** vf.dim * lattice_volume(vf.face) for vf in contributing_faces(q)), Fraction(0))


def tne_codim0(q: TneQuery) -> bool:
    return codim0_weight(q) != 0


def psi(N: LatticePolyhedron, I: Sequence[int], m: int) -> VirtualPolyhedron:
    """``Ψ_{m,I}``: contributing edges enter with ``+``, contributing vertices with ``-``.

    In general dimension the sign of a contributing face ``B`` is
    ``(-1)^(dim B + 1)``.
    """
    I = tuple(sorted(I))
    rec = LatticePolyhedron(len(I), [(0,) * len(I)], [tuple(r[i] for i in I) for r in N.rays if any(r[i] for i in I)])
    plus, minus = rec, rec
    for vf in _bounded_vfaces(project(N, I)):
        if vf.m % m:
            continue
        P = fiber_polyhedron(N, I, vf.face)
        if vf.dim % 2:
            plus = minkowski_sum(plus, P)
        else:
            minus = minkowski_sum(minus, P)
    return VirtualPolyhedron(plus, minus)


def codim1_class(N: LatticePolyhedron, I: Sequence[int], m: int) -> WeightedFan:
    """``Σ ± [∫_B N]`` over contributing faces, in the negative orthant of ``Q^I``."""
    I = tuple(sorted(I))
    amb = AmbientCone.negative_orthant(len(I))
    terms = []
    for vf in _bounded_vfaces(project(N, I)):
        if vf.m % m:
            continue
        F = dual_fan(fiber_polyhedron(N, I, vf.face), 1, amb)
        terms.append(F if vf.dim % 2 else scale(-1, F))
    return fan_sum(terms, amb, len(I) - 1)


@dataclass(frozen=True)
class Witness:
    a: tuple[int, ...]
    B: Face


def _is_contributing_vertex(q: TneQuery, a: tuple) -> bool:
    return any(vf.dim == 0 and vf.face.vertices[0] == tuple(Fraction(x) for x in a)
               for vf in contributing_faces(q))


def tne_codim1(q: TneQuery) -> tuple[bool, Optional[Witness]]:
    """Witness criterion for ``|Ī| = 2``; larger ``|Ī|`` falls back to non-triviality of ``psi``."""
    nb = len(q.Ibar)
    if nb < 2:
        raise MonodromyError("codim 1 undefined here")
    if nb > 2:
        return (not is_trivial(psi(q.N, q.I, q.m)), None)
    for vf in contributing_faces(q):
        if vf.dim != 1:
            continue
        for a in segment_lattice_points(vf.face.polyhedron):
            if any(x.denominator != 1 for x in a):
                continue
            a = tuple(int(x) for x in a)
            if _is_contributing_vertex(q, a):
                continue
            if not is_trivial(fiber(q.N, q.I, a)):
                return True, Witness(a, vf.face)
    return False, None


# ----------------------------------------------------------------------
# classification

def _interior_points(B: Face) -> list[tuple]:
    return segment_lattice_points(B.polyhedron)[1:-1]


def _lattice_length(B: Face) -> int:
    return len(segment_lattice_points(B.polyhedron)) - 1


def _trivial_fiber(q: TneQuery, b) -> bool:
    return is_trivial(fiber(q.N, q.I, b))


def _exception_case(q: TneQuery, contrib: list[VFace]) -> Optional[str]:
    if not contrib:
        return "CASE1"
    verts = [vf for vf in contrib if vf.dim == 0]
    edges = [vf for vf in contrib if vf.dim == 1]
    if len(contrib) != len(verts) + len(edges):
        return None
    vset = {vf.face.vertices[0] for vf in verts}
    if len(edges) == 1 and len(verts) == 2:
        B = edges[0].face
        inner = _interior_points(B)
        if set(B.vertices) == vset and len(inner) == 1 and _trivial_fiber(q, inner[0]):
            return "CASE2"

    def pair_ok(a, B: Face) -> bool:
        if a not in B.vertices or _lattice_length(B) != 1:
            return False
        (b,) = [v for v in B.vertices if v != a]
        return b not in vset and _trivial_fiber(q, b)

    if len(edges) == len(verts) and len(edges) in (1, 2):
        pairs = []
        for vf in verts:
            a = vf.face.vertices[0]
            match = [e.face for e in edges if pair_ok(a, e.face)]
            if len(match) != 1:
                return None
            pairs.append(match[0])
        if len(set(id(B) for B in pairs)) == len(pairs):
            return "CASE3" if len(pairs) == 1 else "CASE4"
    return None


def coroldim4_classify(q: TneQuery) -> str:
    """``TNE`` or the exception case of the four-case corollary for ``|Ī| = 2``."""
    if len(q.Ibar) != 2:
        raise MonodromyError("codim 1 undefined here")
    if tne_codim0(q) or tne_codim1(q)[0]:
        return "TNE"
    tag = _exception_case(q, contributing_faces(q))
    if tag is None:
        raise InvariantBreach("no t.n.e. found but no exception case matches")
    return tag


# ----------------------------------------------------------------------
# reports

@dataclass
class TneReport:
    I: tuple[int, ...]
    m: int
    codim0: bool
    codim0_weight: Fraction
    zeta: ZetaFactors
    codim1: Optional[bool] = None
    witness: Optional[Witness] = None
    psi: Optional[VirtualPolyhedron] = None
    case: Optional[str] = None


def candidate_denominators(N: LatticePolyhedron, I: Sequence[int]) -> list[int]:
    ms = set()
    for vf in _bounded_vfaces(project(N, I)):
        ms |= {d for d in _divisors(vf.m) if d >= 2}
    return sorted(ms)


def report_entry(N: LatticePolyhedron, I: Sequence[int], m: int, allow_tautological: bool = False) -> TneReport:
    q = TneQuery(N, tuple(I), m, allow_tautological=allow_tautological)
    rep = TneReport(q.I, m, tne_codim0(q), codim0_weight(q), zeta_factors(N, q.I))
    if len(q.Ibar) == 2 and len(q.I) >= 2:
        found, wit = tne_codim1(q)
        P = psi(N, q.I, m)
        # the codim-1 theorems assume a non-tautological m; forced queries are reported unchecked
        forced = m in tautological_denominators(N)
        if found == is_trivial(P) and not forced:
            raise InvariantBreach("witness criterion and psi disagree")
        rep.codim1, rep.witness, rep.psi = found, wit, P
        try:
            rep.case = coroldim4_classify(q)
        except InvariantBreach:
            if not forced:
                raise
    return rep


def _entry(args) -> TneReport:
    return report_entry(*args)


def tne_report(N: LatticePolyhedron, allow_tautological: bool = False, jobs: int = 1) -> list[TneReport]:
    """Scan all coordinate sets and candidate denominators."""
    taut = tautological_denominators(N)
    tasks = []
    for r in range(N.dim + 1):
        for I in combinations(range(N.dim), r):
            for m in candidate_denominators(N, I):
                if allow_tautological or m not in taut:
                    tasks.append((N, I, m, allow_tautological))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_entry, tasks))
    return [_entry(t) for t in tasks]


# ----------------------------------------------------------------------
# resolution data

@dataclass(frozen=True)
class Orbit:
    gens: tuple[tuple[int, ...], ...]
    I: tuple[int, ...]

    def cone(self, n: int) -> Cone:
        return Cone.from_generators(n, self.gens)


@dataclass(frozen=True)
class Stratum:
    M: int
    H: int
    E: int
    euler: int


@dataclass
class ResolutionData:
    n: int
    fan: list[Orbit]
    strata: list[Stratum]
    compact: list[int] = field(default_factory=list)

    def in_closure(self, E: int, H: int) -> bool:
        """Orbit ``E`` lies in the closure of orbit ``H`` iff the cone of ``H`` is a face of that of ``E``."""
        cE, cH = self.fan[E].cone(self.n), self.fan[H].cone(self.n)
        if not all(cE.contains(g) for g in cH.generators()):
            return False
        x = cH.relint_point()
        tight = cE.tight_facets(x)
        face = Cone(self.n, [g for g in cE.rays if all(sum(a * b for a, b in zip(f, g)) == 0 for f in tight)],
                    cE.lineality)
        return face == cH

    def validate(self, I: Optional[Sequence[int]] = None) -> None:
        bad = []
        for s in self.strata:
            if not (0 <= s.H < len(self.fan) and 0 <= s.E < len(self.fan)):
                bad.append(f"stratum (M={s.M}, H={s.H}, E={s.E}) references an unknown orbit")
            elif not self.in_closure(s.E, s.H):
                bad.append(f"orbit {s.E} is not in the closure of orbit {s.H}")
        if bad:
            raise MonodromyError("; ".join(bad))
        if I is not None:
            I = tuple(sorted(I))
            have = {s.H for s in self.strata if s.H == s.E}
            missing = [h for h, o in enumerate(self.fan) if o.I == I and h not in have]
            if missing:
                raise MonodromyError("strata table is missing entries for orbits " + ", ".join(map(str, missing)))


def phi_from_resolution(rd: ResolutionData, I: Sequence[int], m: int) -> dict[int, WeightedFan]:
    """Pushed-forward classes ``Φ_{m,I}`` graded by fan dimension in ``Q^I``."""
    I = tuple(sorted(I))
    rd.validate(I)
    k = len(I)
    amb = AmbientCone.negative_orthant(k) if k else AmbientCone.full(0)
    p = [[int(j == i) for j in range(rd.n)] for i in I]
    compact = set(rd.compact)
    cells: dict[int, list] = {}
    for s in rd.strata:
        if rd.fan[s.H].I != I or s.M % m or s.E not in compact or s.euler == 0:
            continue
        c = rd.fan[s.E].cone(rd.n)
        F = direct_image(p, WeightedFan(AmbientCone.full(rd.n), c.dim, [(c, s.euler)]), amb) if k else \
            WeightedFan(amb, 0, [(Cone.point(0), s.euler)] if c.dim == 0 else [])
        if F.cells:
            cells.setdefault(F.dim, []).extend(F.cells)
    return {d: normal_form(WeightedFan(amb, d, cs)) for d, cs in sorted(cells.items())}


def codim0_from_resolution(rd: ResolutionData, I: Sequence[int], m: int) -> Fraction:
    """Weight of the top-dimensional component of ``Φ_{m,I}`` (0 if absent)."""
    k = len(tuple(I))
    F = phi_from_resolution(rd, I, m).get(k)
    if F is None or not F.cells:
        return Fraction(0)
    if len(F.cells) != 1:
        raise InvariantBreach("top component is not a multiple of the ambient cone")
    return F.cells[0][1]


def acampo_zeta(rd: ResolutionData, I: Sequence[int]) -> ZetaFactors:
    """``Π (1-t^M)^{F_{M,I}}`` with ``F_{M,I} = Σ_H e(Φ_{M,H,H})`` over orbits over ``(C*)^I``."""
    I = tuple(sorted(I))
    rd.validate(I)
    acc: dict[int, int] = {}
    for s in rd.strata:
        if s.H == s.E and rd.fan[s.H].I == I:
            acc[s.M] = acc.get(s.M, 0) + s.euler
    return ZetaFactors.from_map(acc)


def resolution_data_from_polyhedron(N: LatticePolyhedron) -> ResolutionData:
    """Combinatorial encoding of a Newton polyhedron as resolution data.

    One orbit per bounded V-face ``Γ`` of each ``N^I``, spanned by
    ``-e_i + η_Γ`` for ``i in I`` where ``η_Γ`` is minus the primitive
    functional of ``Γ`` on ``Q^Ī``; its stratum carries ``M = m_Γ`` and
    Euler characteristic ``(-1)^{dim Γ} Vol Γ``. This is a model for
    cross-checking, not an actual embedded resolution.
    """
    n = N.dim
    fan, strata = [], []
    for r in range(n + 1):
        for I in combinations(range(n), r):
            Ib = complement(I, n)
            for vf in _bounded_vfaces(project(N, I)):
                pts = [tuple(v[j] for j in vf.J) for v in vf.face.vertices]
                ell, _ = primitive_functional(pts)
                eta = [0] * n
                for j, c in zip(vf.J, ell):
                    eta[Ib[j]] = -c
                gens = []
                for i in I:
                    g = list(eta)
                    g[i] -= 1
                    gens.append(tuple(g))
                h = len(fan)
                fan.append(Orbit(tuple(gens), I))
                e = (-1) ** vf.dim * lattice_volume(vf.face)
                strata.append(Stratum(vf.m, h, h, int(e)))
    return ResolutionData(n, fan, strata, list(range(len(fan))))
