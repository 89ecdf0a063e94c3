"""Exact integer and rational linear algebra over lattices.

Vectors are plain tuples of ``int`` or ``fractions.Fraction``. Nothing in
this module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]
Matrix = Sequence[Sequence[int]]


class LatticeError(ValueError):
    """Raised when a lattice quantity is undefined for the given input."""


def vgcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its coordinates.

    >>> primitive((2, 4, -6))
    (1, 2, -3)
    """
    g = vgcd(v)
    if g == 0:
        raise LatticeError("zero has no primitive direction")
    return tuple(int(x) // g for x in v)


def to_integral(v: Sequence[Fraction | int]) -> IntVector:
    """Smallest positive integer multiple of a rational vector, made primitive."""
    if all(type(x) is int for x in v):
        return primitive(v) if any(v) else tuple(v)
    den = 1
    for x in v:
        d = Fraction(x).denominator
        den = den * d // gcd(den, d)
    w = [int(Fraction(x) * den) for x in v]
    if not any(w):
        return tuple(w)
    return primitive(w)


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def bezout(c: Sequence[int]) -> IntVector:
    """Integer vector ``z`` with ``dot(c, z) == gcd(c)``."""
    z = [0] * len(c)
    g = 0
    for i, ci in enumerate(c):
        if ci == 0:
            continue
        g2, s, t = xgcd(g, ci)
        z = [s * zj for zj in z]
        z[i] = t
        g = g2
    return tuple(z)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _int_rank(rows: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in rows if any(r)]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r]
        for i in range(r + 1, len(m)):
            if m[i][c]:
                a, b = piv[c], m[i][c]
                row = [a * x - b * y for x, y in zip(m[i], piv)]
                g = vgcd(row)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def rank(rows: Sequence[Sequence]) -> int:
    if all(type(x) is int for row in rows for x in row):
        return _int_rank(rows)
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[IntVector]:
    """Primitive integer basis of the rational kernel ``{x : rows @ x = 0}``."""
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, piv):
            x[p] = -r[f]
        basis.append(to_integral(x))
    return basis


def solve_in_span(basis: Sequence[Sequence], v: Sequence) -> RatVector:
    """Coefficients ``c`` with ``sum c_i basis_i == v``; basis must be independent."""
    k = len(basis)
    n = len(v)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    red, piv = rref(aug)
    if k in piv:
        raise LatticeError("vector not in span")
    c = [Fraction(0)] * k
    for r, p in zip(red, piv):
        c[p] = r[k]
    return tuple(c)


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row Hermite normal form ``H = U @ A`` with ``U`` unimodular.

    Zero rows of ``H`` are kept at the bottom so that the matching rows of
    ``U`` span the left integer kernel of ``A``.
    """
    a = [[int(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if a[i][c] == 0:
                continue
            g, s, t = xgcd(a[r][c], a[i][c])
            p, q = a[r][c] // g, a[i][c] // g
            a[r], a[i] = (
                [s * x + t * y for x, y in zip(a[r], a[i])],
                [-q * x + p * y for x, y in zip(a[r], a[i])],
            )
            u[r], u[i] = (
                [s * x + t * y for x, y in zip(u[r], u[i])],
                [-q * x + p * y for x, y in zip(u[r], u[i])],
            )
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            f = a[i][c] // a[r][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                u[i] = [x - f * y for x, y in zip(u[i], u[r])]
        r += 1
    return a, u


def lattice_basis(vectors: Sequence[Sequence[int]]) -> list[IntVector]:
    """Basis of the lattice generated by integer vectors (nonzero HNF rows)."""
    if not vectors:
        return []
    h, _ = hnf_with_transform(vectors)
    return [tuple(r) for r in h if any(r)]


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Basis of ``{z in Z^ncols : rows @ z = 0}``."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    cols = [[int(rows[i][j]) for i in range(len(rows))] for j in range(ncols)]
    h, u = hnf_with_transform(cols)
    return lattice_basis([tuple(u[i]) for i in range(ncols) if not any(h[i])])


def saturation(vectors: Sequence[Sequence]) -> list[IntVector]:
    """Basis of ``span(vectors) ∩ Z^n`` for rational or integer vectors."""
    vecs = [to_integral(v) for v in vectors if any(v)]
    if not vecs:
        return []
    n = len(vecs[0])
    perp = integer_kernel(vecs, n)
    return integer_kernel(perp, n) if perp else [
        tuple(int(i == j) for j in range(n)) for i in range(n)
    ]


def gram_det(basis: Sequence[Sequence[int]]) -> int:
    g = [[dot(a, b) for b in basis] for a in basis]
    return int(det(g)) if g else 1


def covolume_ratio(coarse: Sequence[Sequence[int]], fine: Sequence[Sequence[int]]) -> int:
    """Index ``[fine : coarse]`` for two lattice bases of the same rational span."""
    num, den = gram_det(coarse), gram_det(fine)
    q = Fraction(num, den)
    if q.denominator != 1:
        raise LatticeError("lattices are not nested")
    r = isqrt(q.numerator)
    if r * r != q.numerator:
        raise LatticeError("lattices are not nested")
    return r


def apply(p: Matrix, v: Sequence) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in p)


def lattice_index(sublattice_gens: Sequence[Sequence[int]], p: Matrix) -> int:
    """``|p(U) ∩ p(Z^n) / p(U ∩ Z^n)|`` where ``U`` is the span of the generators.

    >>> lattice_index([(2, 1)], [[1, 0]])
    2
    """
    sat = saturation(sublattice_gens)
    r = len(sat)
    image = [apply(p, b) for b in sat]
    if rank(image) < r:
        raise LatticeError("index undefined, use weight 0 branch")
    if r == 0:
        return 1
    m = len(p)
    n = len(p[0]) if m else 0
    columns = [tuple(p[i][j] for i in range(m)) for j in range(n)]
    perp = integer_kernel(image, m)
    if perp:
        kp = [[dot(k, c) for c in columns] for k in perp]
        zs = integer_kernel(kp, n)
    else:
        zs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    meet = lattice_basis([apply(p, z) for z in zs])
    return covolume_ratio(image, meet)


def sublattice_index(gens: Sequence[Sequence[int]]) -> int:
    """Index of the lattice generated by ``gens`` inside its saturation."""
    basis = lattice_basis(gens)
    if not basis:
        return 1
    return covolume_ratio(basis, saturation(basis))


def primitive_functional(points: Sequence[Sequence]) -> tuple[IntVector, Fraction]:
    """Primitive integer functional ``l`` and constant ``c`` with ``l(x) = c`` on the points.

    The points must affinely span a hyperplane. The sign is chosen so that
    ``c >= 0``; if ``c == 0`` the first nonzero coordinate of ``l`` is positive.

    >>> primitive_functional([(2, 0), (0, 3)])
    ((3, 2), Fraction(6, 1))
    """
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if not pts:
        raise LatticeError("distance undefined at this codimension")
    n = len(pts[0])
    diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    ker = nullspace([d for d in diffs if any(d)], n)
    if len(ker) != 1:
        raise LatticeError("distance undefined at this codimension")
    ell = ker[0]
    c = dot(ell, pts[0])
    lead = next(x for x in ell if x)
    if c < 0 or (c == 0 and lead < 0):
        ell = tuple(-x for x in ell)
        c = -c
    return ell, Fraction(c)


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[Fraction(a) - Fraction(b) for a, b in zip(p, p0)] for p in points[1:]])
