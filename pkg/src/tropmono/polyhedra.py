"""Rational polyhedra of the form (bounded polytope) + (recession cone).

Support functions take maxima: ``N(v) = max <v, x>`` over ``N`` and ``N^v``
is the face where the maximum is attained. Coordinate sets ``I`` are
0-based tuples of indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .cones import Cone, double_description
from .lattice_core import (
    IntVector,
    RatVector,
    affine_rank,
    det,
    dot,
    primitive,
    primitive_functional,
    rank,
    saturation,
    solve_in_span,
    to_integral,
    vgcd,
)


class PolyhedronError(ValueError):
    pass


def _rat(v: Sequence) -> RatVector:
    return tuple(Fraction(x) for x in v)


def _homogenize(v: Sequence[Fraction]) -> IntVector:
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return tuple(int(x * den) for x in v) + (den,)


def orthant_rays(n: int) -> list[IntVector]:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def complement(I: Iterable[int], n: int) -> tuple[int, ...]:
    s = set(I)
    return tuple(i for i in range(n) if i not in s)


class LatticePolyhedron:
    """``conv(vertices) + cone(rays) + span(lineality)`` in Q^dim, kept irredundant."""

    def __init__(self, dim: int, vertices: Iterable[Sequence], rays: Iterable[Sequence[int]] = (),
                 lineality: Iterable[Sequence[int]] = (), _normalized: bool = False):
        self.dim = dim
        verts = [_rat(v) for v in vertices]
        rays = [tuple(int(x) for x in r) for r in rays]
        lin = [tuple(int(x) for x in l) for l in lineality]
        if not verts:
            raise PolyhedronError("empty polyhedron")
        if _normalized:
            self.vertices = tuple(sorted(set(verts)))
            self.rays = tuple(sorted(set(rays)))
            self.lineality = tuple(lin)
            return
        gens = [_homogenize(v) for v in verts] + [r + (0,) for r in rays if any(r)]
        cone = Cone.from_generators(dim + 1, gens, [l + (0,) for l in lin if any(l)])
        self._set_from_cone(cone)

    def _set_from_cone(self, cone: Cone) -> None:
        vs, rs = [], []
        for g in cone.rays:
            if g[-1] > 0:
                vs.append(tuple(Fraction(x, g[-1]) for x in g[:-1]))
            else:
                rs.append(g[:-1])
        if not vs:
            raise PolyhedronError("empty polyhedron")
        self.vertices = tuple(sorted(vs))
        self.rays = tuple(sorted(rs))
        self.lineality = tuple(l[:-1] for l in cone.lineality)
        self.__dict__["cone"] = cone

    @classmethod
    def from_cone(cls, dim: int, cone: Cone) -> "LatticePolyhedron":
        p = cls.__new__(cls)
        p.dim = dim
        p._set_from_cone(cone)
        return p

    @classmethod
    def from_inequalities(cls, dim: int, ineqs: Iterable[tuple[Sequence, Fraction]],
                          eqs: Iterable[tuple[Sequence, Fraction]] = ()) -> "LatticePolyhedron":
        """Polyhedron ``{x : a @ x <= b, e @ x == c}``; raises on empty input."""
        rows = [tuple([0] * dim) + (1,)]
        for a, b in ineqs:
            rows.append(to_integral([-Fraction(x) for x in a] + [Fraction(b)]))
        eq_rows = [to_integral([Fraction(x) for x in e] + [-Fraction(c)]) for e, c in eqs]
        rows += eq_rows + [tuple(-x for x in r) for r in eq_rows]
        rows = [r for r in rows if any(r)]
        lin, rays = double_description(rows, dim + 1)
        return cls.from_cone(dim, Cone(dim + 1, rays, lin))

    @cached_property
    def cone(self) -> Cone:
        gens = [_homogenize(v) for v in self.vertices] + [r + (0,) for r in self.rays]
        return Cone(self.dim + 1, gens, [l + (0,) for l in self.lineality])

    # ------------------------------------------------------------------
    @cached_property
    def inequalities(self) -> tuple[tuple[IntVector, Fraction], ...]:
        """Facets as ``(a, b)`` meaning ``a @ x <= b`` (``a`` an outer normal)."""
        out = []
        for f in self.cone.facets:
            a = f[:-1]
            if not any(a):
                continue
            out.append((tuple(-x for x in a), Fraction(f[-1])))
        return tuple(out)

    @cached_property
    def equations(self) -> tuple[tuple[IntVector, Fraction], ...]:
        return tuple((e[:-1], Fraction(-e[-1])) for e in self.cone.equations)

    @property
    def bounded(self) -> bool:
        return not self.rays and not self.lineality

    @property
    def is_lattice(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)

    @cached_property
    def affine_dim(self) -> int:
        return self.cone.dim - 1

    @cached_property
    def key(self) -> tuple:
        return (self.dim, self.vertices, self.rays, self.lineality)

    def __eq__(self, other) -> bool:
        return isinstance(other, LatticePolyhedron) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        vs = [tuple(str(x) for x in v) for v in self.vertices]
        return f"LatticePolyhedron(dim={self.dim}, vertices={vs}, rays={list(self.rays)})"

    def contains(self, x: Sequence) -> bool:
        x = _rat(x)
        return all(dot(a, x) <= b for a, b in self.inequalities) and all(
            dot(e, x) == c for e, c in self.equations)

    def support(self, v: Sequence) -> Optional[Fraction]:
        """``max <v, x>`` over the polyhedron, or ``None`` if unbounded above."""
        if any(dot(v, r) > 0 for r in self.rays) or any(dot(v, l) != 0 for l in self.lineality):
            return None
        return max(dot(v, x) for x in self.vertices)

    def recession(self) -> "LatticePolyhedron":
        return LatticePolyhedron(self.dim, [(0,) * self.dim], self.rays, self.lineality, _normalized=True)

    def translate(self, t: Sequence) -> "LatticePolyhedron":
        t = _rat(t)
        vs = [tuple(a + b for a, b in zip(v, t)) for v in self.vertices]
        return LatticePolyhedron(self.dim, vs, self.rays, self.lineality, _normalized=True)

    def scale(self, q) -> "LatticePolyhedron":
        q = Fraction(q)
        if q < 0:
            raise PolyhedronError("only nonnegative dilations are polyhedra")
        if q == 0:
            return self.recession()
        vs = [tuple(q * x for x in v) for v in self.vertices]
        return LatticePolyhedron(self.dim, vs, self.rays, self.lineality, _normalized=True)

    def __add__(self, other: "LatticePolyhedron") -> "LatticePolyhedron":
        return minkowski_sum(self, other)

    # ------------------------------------------------------------------
    @cached_property
    def _face_data(self):
        gens = list(self.cone.rays)
        is_vertex = [g[-1] > 0 for g in gens]
        vmask = sum(1 << i for i, v in enumerate(is_vertex) if v)
        facets = list(self.cone.facets)
        fmasks = [sum(1 << i for i, g in enumerate(gens) if dot(f, g) == 0) for f in facets]
        full = (1 << len(gens)) - 1
        seen = {full}
        stack = [full]
        while stack:
            m = stack.pop()
            for fm in fmasks:
                s = m & fm
                if s != m and s & vmask and s not in seen:
                    seen.add(s)
                    stack.append(s)
        return gens, facets, fmasks, seen

    @cached_property
    def faces(self) -> tuple["Face", ...]:
        """All nonempty faces, sorted by dimension then vertices."""
        gens, facets, fmasks, masks = self._face_data
        lin = [l + (0,) for l in self.lineality]
        out = []
        for m in masks:
            members = [g for i, g in enumerate(gens) if m >> i & 1]
            verts = [tuple(Fraction(x, g[-1]) for x in g[:-1]) for g in members if g[-1] > 0]
            rays = [g[:-1] for g in members if g[-1] == 0]
            fdim = rank(members + lin) - 1
            sv = [0] * self.dim
            for f, fm in zip(facets, fmasks):
                if m & fm == m and any(f[:-1]):
                    sv = [s - x for s, x in zip(sv, f[:-1])]
            sv = tuple(sv) if not any(sv) else primitive(sv)
            poly = LatticePolyhedron(self.dim, verts, rays, self.lineality, _normalized=True)
            support = set()
            for v in list(verts) + list(rays) + list(self.lineality):
                support |= {i for i, x in enumerate(v) if x != 0}
            out.append(Face(poly, sv, fdim, not rays and not self.lineality, tuple(sorted(support)), m))
        out.sort(key=lambda f: (f.dim, f.polyhedron.vertices, f.polyhedron.rays))
        return tuple(out)


@dataclass(frozen=True)
class Face:
    polyhedron: LatticePolyhedron
    support_vector: IntVector
    dim: int
    bounded: bool
    J: tuple[int, ...]
    mask: int = field(default=0, compare=False)

    @property
    def vertices(self):
        return self.polyhedron.vertices

    @property
    def rays(self):
        return self.polyhedron.rays

    def is_subface_of(self, other: "Face") -> bool:
        return self.mask & other.mask == self.mask


@dataclass(frozen=True)
class VFace:
    face: Face
    J: tuple[int, ...]
    I: tuple[int, ...]
    m: int

    @property
    def dim(self) -> int:
        return self.face.dim

    @property
    def bounded(self) -> bool:
        return self.face.bounded


# ----------------------------------------------------------------------
# constructors

def polyhedron(vertices: Iterable[Sequence], rays: Iterable[Sequence[int]] = (), dim: Optional[int] = None) -> LatticePolyhedron:
    vertices = [tuple(v) for v in vertices]
    n = dim if dim is not None else len(vertices[0])
    return LatticePolyhedron(n, vertices, rays)


def germ(vertices: Iterable[Sequence]) -> LatticePolyhedron:
    """Newton-polyhedron style input: ``conv(vertices) + Q^n_+``."""
    vertices = [tuple(v) for v in vertices]
    n = len(vertices[0])
    return LatticePolyhedron(n, vertices, orthant_rays(n))


# ----------------------------------------------------------------------
# operations

@dataclass(frozen=True)
class SupportData:
    value: Optional[Fraction]
    face: Optional[Face]

    @property
    def bounded_above(self) -> bool:
        return self.value is not None


def support_data(N: LatticePolyhedron, v: Sequence[int]) -> SupportData:
    """Support value ``N(v)`` and the argmax face ``N^v`` (``None`` when unbounded)."""
    val = N.support(v)
    if val is None:
        return SupportData(None, None)
    verts = [x for x in N.vertices if dot(v, x) == val]
    rays = [r for r in N.rays if dot(v, r) == 0]
    poly = LatticePolyhedron(N.dim, verts, rays, N.lineality)
    support = set()
    for w in list(poly.vertices) + list(poly.rays) + list(poly.lineality):
        support |= {i for i, x in enumerate(w) if x != 0}
    fdim = poly.affine_dim
    return SupportData(val, Face(poly, tuple(v), fdim, poly.bounded, tuple(sorted(support))))


def faces(N: LatticePolyhedron) -> list[Face]:
    return list(N.faces)


def bounded_faces(N: LatticePolyhedron, k: Optional[int] = None) -> list[Face]:
    return [f for f in N.faces if f.bounded and (k is None or f.dim == k)]


def _volume_of_points(points: Sequence[RatVector]) -> Fraction:
    pts = sorted(set(points))
    k = affine_rank(pts)
    if k <= 0:
        return Fraction(1)
    p0 = pts[0]
    basis = saturation([tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]])
    coords = [solve_in_span(basis, tuple(a - b for a, b in zip(p, p0))) for p in pts]
    if k == 1:
        xs = [c[0] for c in coords]
        return max(xs) - min(xs)
    P = LatticePolyhedron(k, coords)
    y0 = P.vertices[0]
    total = Fraction(0)
    for a, b in P.inequalities:
        g = vgcd(a)
        h = (b - dot(a, y0)) / g
        if h == 0:
            continue
        total += h * _volume_of_points([v for v in P.vertices if dot(a, v) == b])
    return total


def lattice_volume(F: Union[Face, LatticePolyhedron]) -> Fraction:
    """Lattice volume: ``k!`` times Euclidean volume relative to ``U ∩ Z^n``; a point has volume 1."""
    P = F.polyhedron if isinstance(F, Face) else F
    if not P.bounded:
        raise PolyhedronError("volume requires bounded face")
    return _volume_of_points(P.vertices)


def minkowski_sum(P: LatticePolyhedron, Q: LatticePolyhedron) -> LatticePolyhedron:
    if P.dim != Q.dim:
        raise PolyhedronError("ambient dimensions differ")
    verts = {tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return LatticePolyhedron(P.dim, verts, set(P.rays) | set(Q.rays), list(P.lineality) + list(Q.lineality))


def minkowski_combination(terms: Iterable[tuple[Fraction, LatticePolyhedron]], dim: int,
                          rays: Sequence[Sequence[int]] = ()) -> LatticePolyhedron:
    acc = None
    for q, P in terms:
        S = P.scale(q)
        acc = S if acc is None else minkowski_sum(acc, S)
    if acc is None:
        return LatticePolyhedron(dim, [(0,) * dim], rays)
    return acc


def project(N: LatticePolyhedron, I: Iterable[int]) -> LatticePolyhedron:
    """``N^I``: the image of ``N`` after deleting the coordinates in ``I``."""
    keep = complement(I, N.dim)
    verts = [tuple(v[i] for i in keep) for v in N.vertices]
    rays = [tuple(r[i] for i in keep) for r in N.rays]
    lin = [tuple(l[i] for i in keep) for l in N.lineality]
    return LatticePolyhedron(len(keep), verts, [r for r in rays if any(r)], [l for l in lin if any(l)])


def fiber(N: LatticePolyhedron, I: Iterable[int], b: Sequence) -> LatticePolyhedron:
    """``N_b``: the slice over ``b in Q^{Ī}``, written in the ``I`` coordinates."""
    I = tuple(sorted(I))
    rest = complement(I, N.dim)
    b = _rat(b)
    if len(b) != len(rest):
        raise PolyhedronError("base point has wrong dimension")
    ineqs = []
    for a, c in N.inequalities:
        ineqs.append((tuple(a[i] for i in I), c - sum(a[j] * x for j, x in zip(rest, b))))
    eqs = []
    for e, c in N.equations:
        eqs.append((tuple(e[i] for i in I), c - sum(e[j] * x for j, x in zip(rest, b))))
    if not I:
        ok = all(c >= 0 for a, c in ineqs) and all(c == 0 for a, c in eqs)
        if not ok:
            raise PolyhedronError("empty fiber")
        return LatticePolyhedron(0, [()], _normalized=True)
    try:
        return LatticePolyhedron.from_inequalities(len(I), ineqs, eqs)
    except PolyhedronError:
        raise PolyhedronError("empty fiber") from None


def v_faces(N: LatticePolyhedron) -> list[VFace]:
    """Faces lying in a coordinate subspace of dimension one more than their own."""
    out = []
    for F in N.faces:
        if len(F.J) != F.dim + 1:
            continue
        I = set()
        for r in F.rays:
            I |= {i for i, x in enumerate(r) if x != 0}
        pts = [tuple(v[j] for j in F.J) for v in F.vertices]
        pts += [tuple(v[j] + r[j] for j in F.J) for v in F.vertices[:1] for r in F.rays]
        _, c = primitive_functional(pts)
        if c <= 0:
            continue
        if c.denominator != 1:
            raise PolyhedronError("V-face of a non-lattice polyhedron")
        out.append(VFace(F, F.J, tuple(sorted(I)), int(c)))
    return out


# ----------------------------------------------------------------------
# fiber polyhedra

def _as_face(NI: LatticePolyhedron, B: Union[Face, LatticePolyhedron]) -> Face:
    P = B.polyhedron if isinstance(B, Face) else B
    if not P.bounded:
        raise PolyhedronError("fiber polyhedron needs a bounded face")
    for F in NI.faces:
        if F.polyhedron.vertices == P.vertices and F.bounded:
            return F
    raise PolyhedronError("B is not a face of the projection")


def segment_lattice_points(B: LatticePolyhedron) -> list[RatVector]:
    """Lattice points ``b_0, ..., b_k`` along a lattice segment, in order."""
    p, q = B.vertices[0], B.vertices[-1]
    d = [y - x for x, y in zip(p, q)]
    k = vgcd(int(x) for x in d) if all(x.denominator == 1 for x in d) else 1
    return [tuple(x + Fraction(j, k) * dx for x, dx in zip(p, d)) for j in range(k + 1)]


def _triangulate(P: LatticePolyhedron) -> list[list[RatVector]]:
    """Pulling triangulation of a bounded polytope (simplices as vertex lists)."""
    fs = list(P.faces)
    memo: dict[int, list[list[RatVector]]] = {}

    def tri(F: Face) -> list[list[RatVector]]:
        if F.mask in memo:
            return memo[F.mask]
        if F.dim == 0:
            res = [[F.vertices[0]]]
        else:
            v0 = F.vertices[0]
            res = []
            for G in fs:
                if G.dim == F.dim - 1 and G.mask != F.mask and G.is_subface_of(F) and v0 not in G.vertices:
                    res += [s + [v0] for s in tri(G)]
        memo[F.mask] = res
        return res

    top = max(fs, key=lambda f: f.dim)
    return tri(top)


def _simplex_volume(s: Sequence[RatVector]) -> Fraction:
    rows = [[a - b for a, b in zip(p, s[0])] for p in s[1:]]
    return abs(det(rows)) if rows else Fraction(1)


def fiber_polyhedron(N: LatticePolyhedron, I: Iterable[int], B: Union[Face, LatticePolyhedron],
                     method: str = "auto") -> LatticePolyhedron:
    """The fiber polyhedron over a bounded face ``B`` of ``N^I``, in the ``I`` coordinates.

    The representative returned is the literal integral ``(1+dim B) ∫_B s``
    with the lattice volume form. ``method`` is ``"lattice"`` (segments only),
    ``"chambers"`` or ``"auto"``.
    """
    I = tuple(sorted(I))
    NI = project(N, I)
    BF = _as_face(NI, B)
    d = BF.dim
    rays = [tuple(r[i] for i in I) for r in N.rays]
    if d == 0:
        return fiber(N, I, BF.vertices[0])
    if method == "auto":
        method = "lattice" if d == 1 and BF.polyhedron.is_lattice else "chambers"
    if method == "lattice":
        if d != 1:
            raise PolyhedronError("lattice-point formula needs a segment")
        pts = segment_lattice_points(BF.polyhedron)
        terms = [(Fraction(1 if j in (0, len(pts) - 1) else 2), fiber(N, I, b)) for j, b in enumerate(pts)]
        return minkowski_combination(terms, len(I), rays)
    return _fiber_polyhedron_chambers(N, I, BF)


def _fiber_polyhedron_chambers(N: LatticePolyhedron, I: tuple[int, ...], BF: Face) -> LatticePolyhedron:
    rest = complement(I, N.dim)
    d = BF.dim
    p0 = BF.vertices[0]
    basis = saturation([tuple(a - b for a, b in zip(v, p0)) for v in BF.vertices])

    def to_t(y):
        return solve_in_span(basis, tuple(a - b for a, b in zip(y, p0)))

    def from_t(t):
        return tuple(p0[j] + sum(t[i] * basis[i][j] for i in range(d)) for j in range(len(p0)))

    Bset = {tuple(v) for v in BF.vertices}
    Bpoly = BF.polyhedron

    def over_B(v):
        return Bpoly.contains(tuple(v[j] for j in rest))

    walls = set()
    for F in N.faces:
        if not all(over_B(v) for v in F.vertices):
            continue
        pts = sorted({to_t(tuple(v[j] for j in rest)) for v in F.vertices})
        if affine_rank(pts) != d - 1:
            continue
        ell, c = primitive_functional(pts)
        walls.add((ell, c))
    cells = [LatticePolyhedron(d, [to_t(v) for v in Bset])]
    for ell, c in sorted(walls):
        new = []
        for P in cells:
            vals = [dot(ell, v) - c for v in P.vertices]
            if max(vals) > 0 and min(vals) < 0:
                base = list(P.inequalities)
                new.append(LatticePolyhedron.from_inequalities(d, base + [(ell, c)]))
                new.append(LatticePolyhedron.from_inequalities(d, base + [(tuple(-x for x in ell), -c)]))
            else:
                new.append(P)
        cells = new
    terms = []
    for P in cells:
        vol = Fraction(0)
        cen = [Fraction(0)] * d
        for s in _triangulate(P):
            w = _simplex_volume(s)
            vol += w
            for i in range(d):
                cen[i] += w * sum(p[i] for p in s) / (d + 1)
        if vol == 0:
            continue
        cen = tuple(x / vol for x in cen)
        terms.append(((1 + d) * vol, fiber(N, I, from_t(cen))))
    rays = [tuple(r[i] for i in I) for r in N.rays]
    return minkowski_combination(terms, len(I), rays)


# ----------------------------------------------------------------------
# virtual polyhedra

def equal_up_to_translation(P: LatticePolyhedron, Q: LatticePolyhedron) -> bool:
    if P.dim != Q.dim or P.rays != Q.rays or P.lineality != Q.lineality:
        return False
    if len(P.vertices) != len(Q.vertices):
        return False
    t = tuple(a - b for a, b in zip(P.vertices[0], Q.vertices[0]))
    return Q.translate(t).vertices == P.vertices


@dataclass(frozen=True)
class VirtualPolyhedron:
    """Formal difference ``plus - minus`` in the Grothendieck group of polyhedra."""

    plus: LatticePolyhedron
    minus: LatticePolyhedron

    def __post_init__(self):
        if self.plus.rays != self.minus.rays or self.plus.lineality != self.minus.lineality:
            raise PolyhedronError("recession cones differ")

    def __add__(self, other: "VirtualPolyhedron") -> "VirtualPolyhedron":
        return VirtualPolyhedron(self.plus + other.plus, self.minus + other.minus)

    def __neg__(self) -> "VirtualPolyhedron":
        return VirtualPolyhedron(self.minus, self.plus)

    def __sub__(self, other: "VirtualPolyhedron") -> "VirtualPolyhedron":
        return self + (-other)

    def equivalent(self, other: "VirtualPolyhedron") -> bool:
        return equal_up_to_translation(self.plus + other.minus, other.plus + self.minus)


def as_virtual(P: LatticePolyhedron) -> VirtualPolyhedron:
    return VirtualPolyhedron(P, P.recession())


def virtual_sub(P: LatticePolyhedron, Q: LatticePolyhedron) -> VirtualPolyhedron:
    return VirtualPolyhedron(P, Q)


def is_trivial(P: Union[LatticePolyhedron, VirtualPolyhedron]) -> bool:
    """True iff ``P`` is a translate of its recession cone (class of zero)."""
    if isinstance(P, VirtualPolyhedron):
        return equal_up_to_translation(P.plus, P.minus)
    return len(P.vertices) == 1


def minkowski_difference(P: LatticePolyhedron, Q: LatticePolyhedron) -> Optional[LatticePolyhedron]:
    """``{x : x + Q ⊆ P}`` for ``Q`` with the same recession cone, or ``None`` if empty."""
    ineqs = [(a, b - max(dot(a, q) for q in Q.vertices)) for a, b in P.inequalities]
    eqs = []
    for e, c in P.equations:
        vals = {dot(e, q) for q in Q.vertices}
        if len(vals) != 1:
            return None
        eqs.append((e, c - vals.pop()))
    try:
        return LatticePolyhedron.from_inequalities(P.dim, ineqs, eqs)
    except PolyhedronError:
        return None


def virtual_is_genuine(V: VirtualPolyhedron) -> Optional[LatticePolyhedron]:
    """A polyhedron ``R`` with ``R + minus = plus`` up to shift, if one exists."""
    R = minkowski_difference(V.plus, V.minus)
    if R is None:
        return None
    if R.rays != V.plus.rays or R.lineality != V.plus.lineality:
        return None
    return R if minkowski_sum(R, V.minus) == V.plus else None
