"""Weighted and tropical fans in an ambient cone.

A fan is a list of closed ``k``-dimensional cones with rational weights.
Equality is equality of weight functions almost everywhere on the
``k``-skeleton; ``normal_form`` produces a canonical representative by
keeping only the hyperplanes across which the weight actually jumps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Optional, Sequence

from .cones import Cone
from .lattice_core import (
    IntVector,
    LatticeError,
    apply,
    bezout,
    det,
    dot,
    lattice_basis,
    lattice_index,
    primitive,
    rank,
    saturation,
    solve_in_span,
    to_integral,
)
from .polyhedra import LatticePolyhedron, lattice_volume


class FanError(ValueError):
    pass


class _NonGeneric(Exception):
    pass


def _neg(v: Sequence[int]) -> IntVector:
    return tuple(-x for x in v)


def _canon_normal(h: Sequence[int]) -> IntVector:
    h = primitive(h)
    lead = next(x for x in h if x)
    return h if lead > 0 else _neg(h)


# ----------------------------------------------------------------------
# ambient cones

@dataclass(frozen=True)
class AmbientCone:
    """An open full-dimensional cone ``C`` in Q^n, stored by its closure."""

    n: int
    closure: Cone

    @classmethod
    def full(cls, n: int) -> "AmbientCone":
        return cls(n, Cone.full(n))

    @classmethod
    def negative_orthant(cls, n: int) -> "AmbientCone":
        return cls(n, Cone(n, [tuple(-int(i == j) for j in range(n)) for i in range(n)]))

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]]) -> "AmbientCone":
        return cls(n, Cone.from_generators(n, gens))

    @classmethod
    def from_recession(cls, N: LatticePolyhedron) -> "AmbientCone":
        """Interior of ``{v : <v, r> <= 0}`` for the recession rays ``r`` of ``N``."""
        return cls(N.dim, Cone.from_inequalities(N.dim, [_neg(r) for r in N.rays], list(N.lineality)))

    @property
    def is_full(self) -> bool:
        return len(self.closure.lineality) == self.n

    def contains_open(self, v: Sequence) -> bool:
        return self.closure.in_relative_interior(v)

    def localize(self, v: Sequence[int]) -> "AmbientCone":
        if not any(v):
            return self
        return AmbientCone(self.n, self.closure.add_generators([_neg(v)]))

    def product(self, other: "AmbientCone") -> "AmbientCone":
        return AmbientCone(self.n + other.n, _cone_product(self.closure, other.closure))

    def image(self, p: Sequence[Sequence[int]]) -> "AmbientCone":
        m = len(p)
        gens = [apply(p, g) for g in self.closure.generators()]
        return AmbientCone(m, Cone.from_generators(m, [g for g in gens if any(g)]))


def _cone_product(a: Cone, b: Cone) -> Cone:
    za, zb = (0,) * a.d, (0,) * b.d
    rays = [r + zb for r in a.rays] + [za + r for r in b.rays]
    lin = [l + zb for l in a.lineality] + [za + l for l in b.lineality]
    return Cone(a.d + b.d, rays, lin)


# ----------------------------------------------------------------------
# fans

class WeightedFan:
    """A ``dim``-dimensional weighted pre-fan in an ambient cone."""

    def __init__(self, ambient: AmbientCone, dim: int, cells: Iterable[tuple[Cone, object]] = ()):
        self.ambient = ambient
        self.dim = dim
        cs = []
        for c, w in cells:
            if c.d != ambient.n:
                raise FanError("cell lives in the wrong ambient dimension")
            if c.dim != dim:
                raise FanError("mixed cell dimensions")
            cs.append((c, Fraction(w)))
        self.cells: tuple[tuple[Cone, Fraction], ...] = tuple(cs)

    @property
    def n(self) -> int:
        return self.ambient.n

    def __repr__(self) -> str:
        body = ", ".join(f"{c!r}: {w}" for c, w in self.cells)
        return f"WeightedFan(dim={self.dim}, [{body}])"

    def __add__(self, other: "WeightedFan") -> "WeightedFan":
        return add(self, other)

    def __sub__(self, other: "WeightedFan") -> "WeightedFan":
        return add(self, scale(-1, other))

    def __neg__(self) -> "WeightedFan":
        return scale(-1, self)

    def is_zero(self) -> bool:
        return not normal_form(self).cells

    def equivalent(self, other: "WeightedFan") -> bool:
        if self.dim != other.dim or self.n != other.n:
            return False
        return (self - other).is_zero()

    def key(self) -> tuple:
        return (self.dim, tuple((c.key, w) for c, w in self.cells))

    def total_weight(self) -> Fraction:
        """Weight of a zero-dimensional fan (0 for the empty fan)."""
        if self.dim != 0:
            raise FanError("only point fans have a degree")
        return sum((w for _, w in self.cells), Fraction(0))


def zero_fan(ambient: AmbientCone, dim: int) -> WeightedFan:
    return WeightedFan(ambient, dim, ())


def point_fan(ambient: AmbientCone, weight) -> WeightedFan:
    return WeightedFan(ambient, 0, [(Cone.point(ambient.n), weight)])


# ----------------------------------------------------------------------
# arrangements inside a linear span

def _coords(basis: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return to_integral(solve_in_span(basis, v))


def _lift(basis: Sequence[Sequence[int]], c: Sequence[int], n: int) -> IntVector:
    return tuple(sum(c[i] * basis[i][j] for i in range(len(basis))) for j in range(n))


def _cone_in_coords(basis, cone: Cone) -> Cone:
    k = len(basis)
    return Cone.from_generators(k, [_coords(basis, r) for r in cone.rays],
                                [_coords(basis, l) for l in cone.lineality])


def _cone_from_coords(basis, cone: Cone, n: int) -> Cone:
    return Cone(n, [_lift(basis, r, n) for r in cone.rays], [_lift(basis, l, n) for l in cone.lineality])


def _split(cells: list[Cone], hyperplanes: Sequence[IntVector]) -> list[Cone]:
    for h in hyperplanes:
        new = []
        for c in cells:
            vals = [dot(h, g) for g in c.generators()]
            if vals and max(vals) > 0 and min(vals) < 0:
                new.append(Cone.from_inequalities(c.d, list(c.facets) + [h], c.equations))
                new.append(Cone.from_inequalities(c.d, list(c.facets) + [_neg(h)], c.equations))
            else:
                new.append(c)
        cells = new
    return cells


def _sign_vector(H: Sequence[IntVector], p: Sequence[int]) -> tuple[int, ...]:
    out = []
    for h in H:
        s = dot(h, p)
        out.append(1 if s > 0 else (-1 if s < 0 else 0))
    return tuple(out)


def _region(H: Sequence[IntVector], sig: Sequence[int], k: int) -> Cone:
    return Cone.from_inequalities(k, [h if s > 0 else _neg(h) for h, s in zip(H, sig)])


def _refine_in_span(basis, cones: Sequence[Cone], extra: Sequence[IntVector] = ()) -> tuple[list[IntVector], dict]:
    """Common refinement of full-dimensional cones (in span coordinates).

    Returns the hyperplane list and a map from sign vector to the list of
    input indices whose cone contains that open cell.
    """
    k = len(basis)
    H = sorted({_canon_normal(f) for c in cones for f in c.facets} | {_canon_normal(h) for h in extra})
    cells: dict[tuple[int, ...], list[int]] = {}
    for idx, c in enumerate(cones):
        for piece in _split([c], H):
            if piece.dim != k:
                continue
            sig = _sign_vector(H, piece.relint_point())
            cells.setdefault(sig, []).append(idx)
    return H, cells


def _canonical_in_span(basis, items: Sequence[tuple[Cone, Fraction]], n: int) -> list[tuple[Cone, Fraction]]:
    k = len(basis)
    if k == 0:
        w = sum((w for _, w in items), Fraction(0))
        return [(Cone.point(n), w)] if w else []
    local = [_cone_in_coords(basis, c) for c, _ in items]
    H, cells = _refine_in_span(basis, local)
    weight = {sig: sum((items[i][1] for i in idx), Fraction(0)) for sig, idx in cells.items()}
    essential = []
    for i in range(len(H)):
        for sig, w in weight.items():
            if w == 0:
                continue
            flip = sig[:i] + (-sig[i],) + sig[i + 1:]
            if flip in weight:
                if weight[flip] != w:
                    essential.append(i)
                    break
            elif _region(H, flip, k).dim == k:
                essential.append(i)
                break
    groups: dict[tuple[int, ...], Fraction] = {}
    for sig, w in weight.items():
        key = tuple(sig[i] for i in essential)
        if key in groups and groups[key] != w:
            raise FanError("internal error: weight not constant on a coarse cell")
        groups[key] = w
    EH = [H[i] for i in essential]
    out = []
    for key, w in groups.items():
        if w == 0:
            continue
        cell = _region(EH, key, k) if EH else Cone.full(k)
        out.append((_cone_from_coords(basis, cell, n), w))
    return out


def _span_basis(c: Cone) -> list[IntVector]:
    return saturation(list(c.rays) + list(c.lineality))


def normal_form(F: WeightedFan) -> WeightedFan:
    """Canonical representative: coarsest cells on which the weight is constant, zeros dropped."""
    groups: dict[tuple, list[tuple[Cone, Fraction]]] = {}
    for c, w in F.cells:
        if w != 0:
            groups.setdefault(c.span_key, []).append((c, w))
    out = []
    for items in groups.values():
        out += _canonical_in_span(_span_basis(items[0][0]), items, F.n)
    out.sort(key=lambda cw: (cw[0].key, cw[1]))
    return WeightedFan(F.ambient, F.dim, out)


def add(F: WeightedFan, G: WeightedFan) -> WeightedFan:
    if F.dim != G.dim or F.n != G.n:
        raise FanError("dimension mismatch")
    return normal_form(WeightedFan(F.ambient, F.dim, list(F.cells) + list(G.cells)))


def scale(q, F: WeightedFan) -> WeightedFan:
    q = Fraction(q)
    return normal_form(WeightedFan(F.ambient, F.dim, [(c, q * w) for c, w in F.cells]))


def fan_sum(fans: Sequence[WeightedFan], ambient: AmbientCone, dim: int) -> WeightedFan:
    cells = [cw for F in fans for cw in F.cells]
    return normal_form(WeightedFan(ambient, dim, cells))


# ----------------------------------------------------------------------
# balancing

def _primitive_normal(sigma: Cone, facet: Sequence[int]) -> IntVector:
    """Lattice vector of ``span(sigma)`` generating it modulo the facet span, pointing inward."""
    basis = _span_basis(sigma)
    c = [dot(facet, b) for b in basis]
    c = primitive(c)
    z = bezout(c)
    return _lift(basis, z, sigma.d)


def _face_span_at(sigma: Cone, p: Sequence[int]) -> tuple:
    tight = sigma.tight_facets(p)
    gens = [g for g in sigma.rays if all(dot(f, g) == 0 for f in tight)]
    return Cone(sigma.d, gens, sigma.lineality).span_key


def _wall_points(taus: Sequence[Cone], n: int) -> list[tuple[IntVector, Cone]]:
    basis = _span_basis(taus[0])
    if not basis:
        return [((0,) * n, taus[0])]
    local = [_cone_in_coords(basis, t) for t in taus]
    H, cells = _refine_in_span(basis, local)
    out = []
    for sig in cells:
        region = _region(H, sig, len(basis)) if H else Cone.full(len(basis))
        lifted = _cone_from_coords(basis, region, n)
        out.append((lifted.relint_point(), lifted))
    return out


def _generic_in(region: Cone, p: IntVector, ok, rng: random.Random, tries: int = 60) -> Optional[IntVector]:
    if ok(p):
        return p
    gens = list(region.rays)
    for _ in range(tries):
        q = [60 * x for x in p]
        for g in gens:
            r = rng.randint(1, 50)
            q = [a + r * b for a, b in zip(q, g)]
        for l in region.lineality:
            r = rng.randint(-50, 50)
            q = [a + r * b for a, b in zip(q, l)]
        q = tuple(q)
        if region.in_relative_interior(q) and ok(q):
            return q
    return None


def is_balanced(F: WeightedFan) -> bool:
    """Balancing at every codimension-one wall whose relative interior meets the ambient cone."""
    cached = F.__dict__.get("_balanced")
    if cached is None:
        cached = F._balanced = _is_balanced(F)
    return cached


def _is_balanced(F: WeightedFan) -> bool:
    F = normal_form(F)
    k, n = F.dim, F.n
    if k == 0 or not F.cells:
        return True
    walls: dict[tuple, list[Cone]] = {}
    for sigma, _ in F.cells:
        for tau in sigma.facet_cones():
            walls.setdefault(tau.span_key, []).append(tau)
    rng = random.Random(0)
    for taus in walls.values():
        L = _span_basis(taus[0])
        Lkey = taus[0].span_key
        for p, region in _wall_points(taus, n):
            def generic(q):
                for sigma, _ in F.cells:
                    if not sigma.contains(q):
                        continue
                    fd = sigma.face_dim_at(q)
                    if fd < k - 1:
                        return False
                    if fd == k - 1 and _face_span_at(sigma, q) != Lkey:
                        return False
                return True
            q = _generic_in(region, p, generic, rng)
            if q is None:
                raise FanError("could not find a generic wall point")
            if not F.ambient.contains_open(q):
                continue
            total = [Fraction(0)] * n
            for sigma, w in F.cells:
                if not sigma.contains(q) or sigma.face_dim_at(q) == k:
                    continue
                (f,) = sigma.tight_facets(q)
                v = _primitive_normal(sigma, f)
                total = [t + w * x for t, x in zip(total, v)]
            if any(total) and rank(list(L) + [total]) != len(L):
                return False
    return True


# ----------------------------------------------------------------------
# localization, images, products

def localize(F: WeightedFan, v: Sequence[int]) -> WeightedFan:
    v = tuple(v)
    cells = []
    for c, w in F.cells:
        if c.contains(v):
            cells.append((c.add_generators([_neg(v)]) if any(v) else c, w))
    return normal_form(WeightedFan(F.ambient.localize(v), F.dim, cells))


def direct_image(p: Sequence[Sequence[int]], F: WeightedFan, ambient: Optional[AmbientCone] = None) -> WeightedFan:
    """Push forward along the lattice map ``p``; cells losing dimension get weight 0."""
    m = len(p)
    target = ambient if ambient is not None else F.ambient.image(p)
    if target.closure.dim != m:
        raise FanError("image ambient cone is not full-dimensional")
    cells = []
    for c, w in F.cells:
        rays = [apply(p, r) for r in c.rays]
        lin = [apply(p, l) for l in c.lineality]
        img = Cone.from_generators(m, [r for r in rays if any(r)], [l for l in lin if any(l)])
        if img.dim < F.dim:
            continue
        d = lattice_index(list(c.rays) + list(c.lineality), p)
        cells.append((img, w * d))
    return normal_form(WeightedFan(target, F.dim, cells))


def cartesian_product(F: WeightedFan, G: WeightedFan) -> WeightedFan:
    amb = F.ambient.product(G.ambient)
    cells = [(_cone_product(a, b), wa * wb) for a, wa in F.cells for b, wb in G.cells]
    return normal_form(WeightedFan(amb, F.dim + G.dim, cells))


def restrict_to_ambient(F: WeightedFan, C: AmbientCone) -> WeightedFan:
    """The component of ``F`` living in the open cone ``C``."""
    if C.n != F.n:
        raise FanError("ambient dimension mismatch")
    cells = []
    for c, w in F.cells:
        piece = c.intersect(C.closure)
        if piece.dim == F.dim and C.contains_open(piece.relint_point()):
            cells.append((piece, w))
    return normal_form(WeightedFan(C, F.dim, cells))


# ----------------------------------------------------------------------
# stable intersection

def _crossing_index(a: Cone, b: Cone, n: int) -> int:
    basis = lattice_basis(_span_basis(a) + _span_basis(b))
    if len(basis) != n:
        raise LatticeError("spans are not transversal")
    return abs(int(det(basis)))


_TRANSVERSAL: dict[tuple, bool] = {}


def _transversal(a: Cone, b: Cone, n: int) -> bool:
    key = (a.span_key, b.span_key)
    hit = _TRANSVERSAL.get(key)
    if hit is None:
        hit = rank(list(a.span_key) + list(b.span_key)) == n
        if len(_TRANSVERSAL) > 100000:
            _TRANSVERSAL.clear()
        _TRANSVERSAL[key] = hit
    return hit


def _local_multiplicity(F: WeightedFan, G: WeightedFan, v: IntVector, u: IntVector) -> Fraction:
    n = F.n
    total = Fraction(0)
    for a, wa in F.cells:
        if not a.contains(v):
            continue
        for b, wb in G.cells:
            if not b.contains(v) or not _transversal(a, b, n):
                continue
            gens = a.generators() + [_neg(g) for g in b.generators()]
            if any(v):
                gens += [v, _neg(v)]
            D = Cone.from_generators(n, gens)
            vals = [dot(f, u) for f in D.facets]
            if any(x == 0 for x in vals):
                raise _NonGeneric
            if all(x > 0 for x in vals):
                total += wa * wb * _crossing_index(a, b, n)
    return total


class Displacement:
    """Seeded stream of generic displacement vectors."""

    def __init__(self, n: int, seed: int = 0, box: int = 10**6):
        self.rng = random.Random(seed)
        self.n = n
        self.box = box
        self.rejected = 0
        self.u = self._draw()

    def _draw(self) -> IntVector:
        return tuple(self.rng.randint(-self.box, self.box) for _ in range(self.n))

    def redraw(self) -> IntVector:
        self.rejected += 1
        self.u = self._draw()
        return self.u


def _multiplicity_at(F, G, v, disp: Displacement) -> Fraction:
    for _ in range(100):
        try:
            return _local_multiplicity(F, G, v, disp.u)
        except _NonGeneric:
            disp.redraw()
    raise FanError("no transversal displacement found")


def stable_intersect(F: WeightedFan, G: WeightedFan, seed: int = 0, check_balanced: bool = True) -> WeightedFan:
    """Stable intersection by the displacement rule.

    Local weights are computed at interior points of the common refinement
    of all transversal pairwise intersections; at each point the crossing
    numbers of the stars displaced by a seeded generic vector are summed.
    """
    if F.n != G.n:
        raise FanError("ambient dimension mismatch")
    n = F.n
    e = F.dim + G.dim - n
    ambient = F.ambient
    if e < 0:
        return zero_fan(ambient, 0)
    if check_balanced and not (is_balanced(F) and is_balanced(G)):
        raise FanError("product requires balanced fans")
    F, G = normal_form(F), normal_form(G)
    disp = Displacement(n, seed)
    if e == 0:
        origin = (0,) * n
        if not ambient.contains_open(origin):
            return zero_fan(ambient, 0)
        m = _multiplicity_at(F, G, origin, disp)
        return normal_form(WeightedFan(ambient, 0, [(Cone.point(n), m)] if m else []))
    out = []
    for lifted, v in _sample_points(F, G, e):
        if not ambient.contains_open(v):
            continue
        m = _multiplicity_at(F, G, v, disp)
        if m:
            out.append((lifted, m))
    return normal_form(WeightedFan(ambient, e, out))


_SAMPLES: dict[tuple, list[tuple[Cone, IntVector]]] = {}


def _sample_points(F: WeightedFan, G: WeightedFan, e: int) -> list[tuple[Cone, IntVector]]:
    """Cells of the common refinement of the ``e``-dimensional pieces with a generic point each.

    Independent of the displacement, so the result is cached per pair of fans.
    """
    key = (F.key(), G.key())
    if key in _SAMPLES:
        return _SAMPLES[key]
    n = F.n
    pieces: dict[tuple, list[Cone]] = {}
    for a, _ in F.cells:
        for b, _ in G.cells:
            if not _transversal(a, b, n):
                continue
            rho = a.intersect(b)
            if rho.dim == e:
                pieces.setdefault(rho.span_key, []).append(rho)
    rng = random.Random(7919)
    all_cells = [c for c, _ in F.cells] + [c for c, _ in G.cells]
    out = []
    for group in pieces.values():
        basis = _span_basis(group[0])
        W = Cone(n, (), basis)
        slices, thin = [], []
        for c in all_cells:
            s = c.intersect(W)
            if s.dim == e:
                slices.append(_cone_in_coords(basis, s))
            else:
                thin.append(c)
        extra = [f for s in slices for f in s.facets]
        local = [_cone_in_coords(basis, r) for r in group]
        H, cells = _refine_in_span(basis, local, extra)

        def generic(q):
            return not any(c.contains(q) for c in thin)

        for sig in cells:
            region = _region(H, sig, e) if H else Cone.full(e)
            lifted = _cone_from_coords(basis, region, n)
            v = _generic_in(lifted, lifted.relint_point(), generic, rng)
            if v is None:
                raise FanError("could not find a generic point")
            out.append((lifted, v))
    if len(_SAMPLES) > 2000:
        _SAMPLES.clear()
    _SAMPLES[key] = out
    return out


def intersection_number(F: WeightedFan, G: WeightedFan, seed: int = 0) -> Fraction:
    if F.dim + G.dim != F.n:
        raise FanError("intersection number needs complementary dimensions")
    return stable_intersect(F, G, seed).total_weight()


def intersection_number_diagonal(F: WeightedFan, G: WeightedFan) -> Fraction:
    """Intersection number via the product fan pushed along the diagonal."""
    n = F.n
    if F.dim + G.dim != n:
        raise FanError("intersection number needs complementary dimensions")
    P = cartesian_product(F, G)
    p = [[int(i == j) for j in range(n)] + [-int(i == j) for j in range(n)] for i in range(n)]
    img = direct_image(p, P, AmbientCone.full(n))
    if not img.cells:
        return Fraction(0)
    if len(img.cells) != 1 or img.cells[0][0].dim != n or len(img.cells[0][0].lineality) != n:
        raise FanError("diagonal image is not a multiple of the whole space")
    return img.cells[0][1]


def self_intersection(F: WeightedFan, k: int, seed: int = 0) -> WeightedFan:
    out = F
    for _ in range(k - 1):
        out = stable_intersect(out, F, seed)
    return out


# ----------------------------------------------------------------------
# dual fans

def _normal_cone(N: LatticePolyhedron, face) -> Cone:
    gens, facets, fmasks, _ = N._face_data
    normals = [_neg(f[:-1]) for f, fm in zip(facets, fmasks) if face.mask & fm == face.mask and any(f[:-1])]
    eqs = [e for e, _ in N.equations]
    return Cone.from_generators(N.dim, normals, eqs)


def dual_fan(N: LatticePolyhedron, k: int, ambient: Optional[AmbientCone] = None,
             method: str = "direct", seed: int = 0) -> WeightedFan:
    """``[N]^k``: normal cones of bounded ``k``-dimensional faces weighted by lattice volume.

    ``method`` is ``"direct"``, ``"intersection"`` (``k``-fold stable
    self-intersection of ``[N]^1``) or ``"both"`` (computes both and
    raises if they differ).
    """
    n = N.dim
    if not 0 <= k <= n:
        raise FanError("k out of range")
    C = ambient if ambient is not None else AmbientCone.from_recession(N)
    if method in ("direct", "both"):
        cells = []
        for face in N.faces:
            if face.bounded and face.dim == k:
                cells.append((_normal_cone(N, face), lattice_volume(face)))
        direct = restrict_to_ambient(WeightedFan(AmbientCone.full(n), n - k, cells), C)
        if method == "direct":
            return direct
    if k == 0 or k == 1:
        inter = dual_fan(N, k, C, "direct")
    else:
        inter = self_intersection(dual_fan(N, 1, C, "direct"), k, seed)
    if method == "intersection":
        return inter
    if not direct.equivalent(inter):
        raise FanError("direct dual fan disagrees with stable self-intersection")
    return direct


def poly_class(N: LatticePolyhedron, ambient: Optional[AmbientCone] = None) -> list[WeightedFan]:
    """``<N>``: the list of ``(-1)^(d-1) [N]^d`` for ``d = 1..n``."""
    return [scale((-1) ** (d - 1), dual_fan(N, d, ambient)) for d in range(1, N.dim + 1)]


def mixed_volume(polys: Sequence[LatticePolyhedron], seed: int = 0) -> Fraction:
    """Normalized mixed volume of ``n`` bounded polytopes as ``[P_1] ... [P_n]``."""
    n = polys[0].dim
    if len(polys) != n:
        raise FanError("need exactly n polytopes")
    amb = AmbientCone.full(n)
    acc = dual_fan(polys[0], 1, amb)
    for P in polys[1:]:
        acc = stable_intersect(acc, dual_fan(P, 1, amb), seed)
    return acc.total_weight() if acc.cells else Fraction(0)
