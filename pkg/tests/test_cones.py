import random
from itertools import product

import pytest

from tropmono.cones import Cone
from tropmono.lattice_core import rank


def test_orthant_round_trip():
    C = Cone.from_generators(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert C.dim == 3
    assert sorted(C.facets) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert C.contains((1, 2, 0))
    assert not C.contains((1, -1, 0))
    assert C.in_relative_interior((1, 1, 1))
    assert not C.in_relative_interior((1, 0, 1))


def test_lineality_is_detected():
    C = Cone.from_generators(2, [(1, 0), (-1, 0), (0, 1)])
    assert C.dim == 2
    assert len(C.lineality) == 1
    assert C.contains((-5, 3))
    assert not C.contains((0, -1))


def test_full_and_point():
    assert Cone.full(3).dim == 3
    assert Cone.full(3).contains((-1, 2, -3))
    assert Cone.point(2).dim == 0
    assert Cone.point(2).contains((0, 0))
    assert not Cone.point(2).contains((1, 0))


def test_generator_order_does_not_matter():
    a = Cone.from_generators(3, [(1, 0, 0), (1, 1, 0), (0, 1, 1), (2, 2, 0)])
    b = Cone.from_generators(3, [(0, 1, 1), (1, 1, 0), (1, 0, 0)])
    assert a == b


@pytest.mark.parametrize("seed", range(25))
def test_hrep_against_generators(seed):
    rng = random.Random(seed)
    d = rng.randint(2, 4)
    gens = [tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 6))]
    gens = [g for g in gens if any(g)] or [(1,) + (0,) * (d - 1)]
    C = Cone.from_generators(d, gens)
    assert C.dim == rank(gens)
    # every generator and every nonnegative combination is inside
    for g in gens:
        assert C.contains(g)
    for coeffs in product(range(3), repeat=min(len(gens), 3)):
        x = [sum(c * g[j] for c, g in zip(coeffs, gens)) for j in range(d)]
        assert C.contains(x)
    # every facet is valid on all generators and tight on a set of rank dim - 1
    for f in C.facets:
        assert all(sum(a * b for a, b in zip(f, g)) >= 0 for g in gens)
        tight = [g for g in gens if sum(a * b for a, b in zip(f, g)) == 0]
        assert rank(tight) == C.dim - 1
    # generators recovered from the H-description give the same cone
    assert Cone.from_inequalities(d, C.facets, C.equations) == C


def test_intersection_of_half_spaces():
    A = Cone.from_inequalities(2, [(1, 0)])
    B = Cone.from_inequalities(2, [(0, 1)])
    assert A.intersect(B) == Cone.from_generators(2, [(1, 0), (0, 1)])


def test_facet_cones_of_a_quadrant():
    C = Cone.from_generators(2, [(1, 0), (1, 2)])
    faces = C.facet_cones()
    assert sorted(f.rays for f in faces) == [((1, 0),), ((1, 2),)]
