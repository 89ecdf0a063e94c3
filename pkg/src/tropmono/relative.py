"""Relative polyhedra, relative fans and the relative KBK evaluator.

A relative polyhedron is a pair ``(A, B)`` of polyhedra with the same
recession cone whose symmetric difference is bounded. Everything here is
computed through bounded truncations ``A ∩ X``, ``B ∩ X`` by a lattice box
``X`` containing the symmetric difference.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, floor, ceil
from typing import Optional, Sequence

from .fans import (
    AmbientCone,
    FanError,
    WeightedFan,
    dual_fan,
    normal_form,
    stable_intersect,
)
from .lattice_core import dot
from .polyhedra import LatticePolyhedron, PolyhedronError, lattice_volume, minkowski_sum


class RelativeError(ValueError):
    pass


@dataclass(frozen=True)
class RelativePolyhedron:
    A: LatticePolyhedron
    B: LatticePolyhedron

    def __post_init__(self):
        if self.A.dim != self.B.dim:
            raise RelativeError("A and B live in different dimensions")
        if self.A.recession() != self.B.recession():
            raise RelativeError("A and B have different recession cones")

    @property
    def dim(self) -> int:
        return self.A.dim

    @property
    def ambient(self) -> AmbientCone:
        return AmbientCone.from_recession(self.A)

    def __add__(self, other: "RelativePolyhedron") -> "RelativePolyhedron":
        return RelativePolyhedron(minkowski_sum(self.A, other.A), minkowski_sum(self.B, other.B))


def _excess_vertices(P: LatticePolyhedron, Q: LatticePolyhedron) -> list[tuple[Fraction, ...]]:
    """Vertices of the closure of ``P \\ Q``, raising if it is unbounded."""
    for e, c in Q.equations:
        if any(dot(e, x) != c for x in P.vertices) or any(dot(e, r) for r in P.rays):
            # Q is thinner than P, so the closure of P \ Q is P itself
            if not P.bounded:
                raise RelativeError("symmetric difference of A and B is unbounded")
            return list(P.vertices)
    out = []
    for a, b in Q.inequalities:
        top = P.support(a)
        if top is not None and top <= b:
            continue
        try:
            piece = LatticePolyhedron.from_inequalities(
                P.dim, list(P.inequalities) + [(tuple(-x for x in a), -b)], P.equations)
        except PolyhedronError:
            continue
        if not piece.bounded:
            raise RelativeError("symmetric difference of A and B is unbounded")
        out += list(piece.vertices)
    return out


def truncation_box(rp: RelativePolyhedron, inflate: int = 1) -> Optional[list[tuple[int, int]]]:
    """Smallest lattice box around the symmetric difference, inflated by ``inflate``.

    Returns ``None`` when ``A == B``.
    """
    pts = _excess_vertices(rp.A, rp.B) + _excess_vertices(rp.B, rp.A)
    if not pts:
        return None
    n = rp.dim
    return [(floor(min(p[i] for p in pts)) - inflate, ceil(max(p[i] for p in pts)) + inflate) for i in range(n)]


def _cut(P: LatticePolyhedron, box: Sequence[tuple[int, int]]) -> LatticePolyhedron:
    n = P.dim
    ineqs = list(P.inequalities)
    for i, (lo, hi) in enumerate(box):
        e = tuple(int(j == i) for j in range(n))
        ineqs.append((e, Fraction(hi)))
        ineqs.append((tuple(-x for x in e), Fraction(-lo)))
    return LatticePolyhedron.from_inequalities(n, ineqs, P.equations)


def truncate(rp: RelativePolyhedron, inflate: int = 1,
             box: Optional[Sequence[tuple[int, int]]] = None) -> tuple[LatticePolyhedron, LatticePolyhedron]:
    """Bounded ``(Ã, B̃)`` with ``Ã \\ B̃ = A \\ B`` and ``B̃ \\ Ã = B \\ A``."""
    if box is None:
        box = truncation_box(rp, inflate)
    if box is None:
        # equal polyhedra: any common cut works; use a box around the vertices
        vs = rp.A.vertices
        box = [(floor(min(v[i] for v in vs)) - inflate, ceil(max(v[i] for v in vs)) + inflate)
               for i in range(rp.dim)]
    return _cut(rp.A, box), _cut(rp.B, box)


def _full_volume(P: LatticePolyhedron) -> Fraction:
    return lattice_volume(P) if P.affine_dim == P.dim else Fraction(0)


def relative_volume(rp: RelativePolyhedron, inflate: int = 1) -> Fraction:
    """``Vol(A \\ B) - Vol(B \\ A)`` in normalized lattice volume."""
    At, Bt = truncate(rp, inflate)
    return _full_volume(At) - _full_volume(Bt)


def _subset_term(args) -> Fraction:
    rps, S, n, inflate = args
    acc = rps[S[0]]
    for i in S[1:]:
        acc = acc + rps[i]
    return (-1) ** (n - len(S)) * relative_volume(acc, inflate)


def relative_mixed_volume(rps: Sequence[RelativePolyhedron], inflate: int = 1, jobs: int = 1) -> Fraction:
    """Symmetric multilinear extension of ``relative_volume`` by polarization."""
    rps = list(rps)
    n = len(rps)
    if n == 0 or any(rp.dim != n for rp in rps):
        raise RelativeError("need exactly n relative polyhedra in dimension n")
    tasks = [(rps, S, n, inflate) for k in range(1, n + 1) for S in combinations(range(n), k)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            terms = list(ex.map(_subset_term, tasks))
    else:
        terms = [_subset_term(t) for t in tasks]
    return sum(terms, Fraction(0)) / factorial(n)


# ----------------------------------------------------------------------
# relative fans

@dataclass(frozen=True)
class RelativeFan:
    """A pair ``(P, Q)`` of global tropical fans that coincide outside the closed ambient cone."""

    P: WeightedFan
    Q: WeightedFan
    ambient: AmbientCone

    def __post_init__(self):
        if self.P.dim != self.Q.dim:
            raise RelativeError("components of different dimension")
        closure = self.ambient.closure
        for cell, _ in normal_form(self.P - self.Q).cells:
            if not all(closure.contains(g) for g in cell.generators()):
                raise RelativeError("P and Q differ outside the closed ambient cone")

    @property
    def dim(self) -> int:
        return self.P.dim

    def __add__(self, other: "RelativeFan") -> "RelativeFan":
        return RelativeFan(self.P + other.P, self.Q + other.Q, self.ambient)

    def is_zero(self) -> bool:
        return (self.P - self.Q).is_zero()


def relative_dual_fan(rp: RelativePolyhedron, inflate: int = 1) -> RelativeFan:
    """``([Ã], [B̃])`` computed as global dual fans of the truncations."""
    At, Bt = truncate(rp, inflate)
    full = AmbientCone.full(rp.dim)
    return RelativeFan(dual_fan(At, 1, full), dual_fan(Bt, 1, full), rp.ambient)


def relative_product(f: RelativeFan, g: RelativeFan, seed: int = 0) -> RelativeFan:
    if f.ambient.closure != g.ambient.closure:
        raise RelativeError("relative fans in different ambient cones")
    try:
        return RelativeFan(stable_intersect(f.P, g.P, seed), stable_intersect(f.Q, g.Q, seed), f.ambient)
    except FanError as exc:
        raise RelativeError(str(exc)) from exc


def kk_degree(f: RelativeFan) -> Fraction:
    """Degree of a zero-dimensional relative fan: weight of ``P`` minus weight of ``Q``."""
    if f.dim != 0:
        raise RelativeError("degree is defined in dimension 0 only")
    return f.P.total_weight() - f.Q.total_weight()


def relative_mixed_volume_fans(rps: Sequence[RelativePolyhedron], seed: int = 0) -> Fraction:
    """Relative mixed volume as the product of relative dual fans."""
    fans = [relative_dual_fan(rp) for rp in rps]
    acc = fans[0]
    for f in fans[1:]:
        acc = relative_product(acc, f, seed)
    return kk_degree(acc)


# ----------------------------------------------------------------------
# relative KBK

def compositions(n: int, k: int):
    """Tuples of ``k`` positive integers summing to ``n``."""
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def relkbk_euler(pairs: Sequence[RelativePolyhedron], n: Optional[int] = None, jobs: int = 1) -> Fraction:
    """``(-1)^(n-k)`` times the sum of relative mixed volumes with positive multiplicities."""
    pairs = list(pairs)
    k = len(pairs)
    n = pairs[0].dim if n is None else n
    if k == 0 or k > n:
        raise RelativeError("need 1 <= k <= n relative polyhedra")
    total = Fraction(0)
    for comp in compositions(n, k):
        args = [rp for rp, m in zip(pairs, comp) for _ in range(m)]
        total += relative_mixed_volume(args, jobs=jobs)
    return (-1) ** (n - k) * total
