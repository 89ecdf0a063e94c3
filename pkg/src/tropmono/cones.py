"""Closed rational polyhedral cones with exact double description.

A cone is kept both as generators (extreme rays plus a lineality basis)
and as inequalities ``f @ x >= 0`` plus equations ``e @ x == 0``. All
vectors are primitive integer tuples.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .lattice_core import IntVector, dot, primitive, rank, rref, to_integral


def _prim(v: Sequence[int]) -> IntVector:
    return primitive(v) if any(v) else tuple(v)


def double_description(rows: Sequence[Sequence[int]], d: int) -> tuple[list[IntVector], list[IntVector]]:
    """Generators of ``{y in Q^d : a @ y >= 0 for a in rows}``.

    Returns ``(lineality_basis, extreme_rays)``. Incremental method with the
    combinatorial adjacency test; zero sets are kept as bitmasks.
    """
    lin: list[IntVector] = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    rays: list[tuple[IntVector, int]] = []
    for k, a in enumerate(rows):
        bit = 1 << k
        piv = next((i for i, l in enumerate(lin) if dot(a, l) != 0), None)
        if piv is not None:
            l = lin.pop(piv)
            al = dot(a, l)
            if al < 0:
                l = tuple(-x for x in l)
                al = -al
            lin = [_prim([al * x - dot(a, w) * y for x, y in zip(w, l)]) for w in lin]
            new = []
            for r, z in rays:
                ar = dot(a, r)
                r2 = _prim([al * x - ar * y for x, y in zip(r, l)]) if ar else r
                new.append((r2, z | bit))
            new.append((l, bit - 1))
            rays = new
            continue
        vals = [dot(a, r) for r, _ in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new = [rays[i] for i in pos]
        new += [(r, z | bit) for (r, z), v in zip(rays, vals) if v == 0]
        need = d - len(lin) - 2
        for i in pos:
            ri, zi = rays[i]
            for j in neg:
                rj, zj = rays[j]
                common = zi & zj
                if common.bit_count() < need:
                    continue
                adjacent = True
                for t, (_, zt) in enumerate(rays):
                    if t != i and t != j and common & ~zt == 0:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vi, vj = vals[i], -vals[j]
                r = _prim([vi * y + vj * x for x, y in zip(ri, rj)])
                new.append((r, common | bit))
        rays = new
    return lin, [r for r, _ in rays]


def _canonical_lineality(lin: Sequence[Sequence[int]], d: int) -> tuple[IntVector, ...]:
    if not lin:
        return ()
    red, _ = rref(lin)
    return tuple(to_integral(r) for r in red)


def _project_off(v: Sequence[int], lin_basis: Sequence[Sequence[int]]) -> IntVector:
    """Primitive representative of ``v`` orthogonal to the lineality space."""
    if not lin_basis:
        return _prim(v)
    # orthogonal projection onto the complement of span(lin_basis)
    k = len(lin_basis)
    g = [[Fraction(dot(a, b)) for b in lin_basis] for a in lin_basis]
    rhs = [Fraction(dot(a, v)) for a in lin_basis]
    aug = [g[i] + [rhs[i]] for i in range(k)]
    red, piv = rref(aug)
    c = [Fraction(0)] * k
    for r, p in zip(red, piv):
        c[p] = r[k]
    w = [Fraction(x) - sum(c[i] * lin_basis[i][j] for i in range(k)) for j, x in enumerate(v)]
    return to_integral(w)


class Cone:
    """A closed polyhedral cone in Q^d."""

    __slots__ = ("d", "rays", "lineality", "__dict__")

    def __init__(self, d: int, rays: Iterable[Sequence[int]], lineality: Iterable[Sequence[int]] = ()):
        self.d = d
        lin = _canonical_lineality([tuple(v) for v in lineality if any(v)], d)
        self.lineality = lin
        rs = {_project_off(r, lin) for r in rays}
        rs.discard(tuple([0] * d))
        self.rays = tuple(sorted(rs))

    @classmethod
    def from_generators(cls, d: int, gens: Iterable[Sequence[int]], lineality: Iterable[Sequence[int]] = ()) -> "Cone":
        gens = [to_integral(g) for g in gens]
        gens = [g for g in gens if any(g)]
        lin = [to_integral(l) for l in lineality]
        lin = [l for l in lin if any(l)]
        rows = gens + lin + [tuple(-x for x in l) for l in lin]
        eqs, facets = double_description(rows, d)
        return cls.from_inequalities(d, facets, eqs)

    @classmethod
    def from_inequalities(cls, d: int, ineqs: Iterable[Sequence[int]], eqs: Iterable[Sequence[int]] = ()) -> "Cone":
        ineqs = [to_integral(a) for a in ineqs]
        eqs = [to_integral(e) for e in eqs]
        rows = [a for a in ineqs if any(a)]
        rows += [e for e in eqs if any(e)] + [tuple(-x for x in e) for e in eqs if any(e)]
        lin, rays = double_description(rows, d)
        return cls(d, rays, lin)

    @classmethod
    def point(cls, d: int) -> "Cone":
        return cls(d, (), ())

    @classmethod
    def full(cls, d: int) -> "Cone":
        return cls(d, (), [tuple(int(i == j) for j in range(d)) for i in range(d)])

    # ------------------------------------------------------------------
    def generators(self) -> list[IntVector]:
        """Rays plus both signs of the lineality basis."""
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in l) for l in self.lineality]

    @cached_property
    def dim(self) -> int:
        return rank(list(self.rays) + list(self.lineality))

    @cached_property
    def _hrep(self) -> tuple[tuple[IntVector, ...], tuple[IntVector, ...]]:
        eqs, facets = double_description(self.generators(), self.d)
        eqs = _canonical_lineality(eqs, self.d)
        facets = sorted({_project_off(f, eqs) for f in facets})
        return tuple(facets), eqs

    @property
    def facets(self) -> tuple[IntVector, ...]:
        return self._hrep[0]

    @property
    def equations(self) -> tuple[IntVector, ...]:
        return self._hrep[1]

    @cached_property
    def span_key(self) -> tuple[IntVector, ...]:
        return _canonical_lineality(list(self.rays) + list(self.lineality), self.d)

    @cached_property
    def key(self) -> tuple:
        return (self.d, self.rays, self.lineality)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cone) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"

    # ------------------------------------------------------------------
    def contains(self, x: Sequence) -> bool:
        if any(dot(e, x) != 0 for e in self.equations):
            return False
        return all(dot(f, x) >= 0 for f in self.facets)

    def in_relative_interior(self, x: Sequence) -> bool:
        if any(dot(e, x) != 0 for e in self.equations):
            return False
        return all(dot(f, x) > 0 for f in self.facets)

    def tight_facets(self, x: Sequence) -> list[IntVector]:
        return [f for f in self.facets if dot(f, x) == 0]

    def face_dim_at(self, x: Sequence) -> int:
        """Dimension of the smallest face containing ``x`` (assumes ``x`` in the cone)."""
        tight = self.tight_facets(x)
        return self.dim - rank(list(tight)) if tight else self.dim

    def relint_point(self) -> IntVector:
        if not self.rays:
            return tuple([0] * self.d)
        return tuple(sum(r[j] for r in self.rays) for j in range(self.d))

    def intersect(self, other: "Cone") -> "Cone":
        return Cone.from_inequalities(
            self.d, list(self.facets) + list(other.facets), list(self.equations) + list(other.equations)
        )

    def facet_cones(self) -> list["Cone"]:
        gens = list(self.rays)
        out = []
        for f in self.facets:
            tight = [g for g in gens if dot(f, g) == 0]
            out.append(Cone(self.d, tight, self.lineality))
        return out

    def add_generators(self, gens: Iterable[Sequence[int]]) -> "Cone":
        return Cone.from_generators(self.d, list(self.rays) + list(gens), self.lineality)
