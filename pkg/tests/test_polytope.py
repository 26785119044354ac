import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kssdomain.model import AffineForm, level
from kssdomain.polytope import (
    HalfSpace,
    UnboundedRegionError,
    cone_generators,
    contains,
    convex_hull,
    enumerate_vertices,
    equal,
    linear_min,
    necessary_region,
)

from .oracles import brute_force_vertices
from .reference_families import PENTAGON, conic_line, pn, quadric_hyperplane, two_conics, two_lines


def hs(const, *coeffs):
    return HalfSpace(AffineForm(F(const), tuple(F(c) for c in coeffs)))


def box(k, lo=0, hi=1):
    out = []
    for i in range(k):
        e = [0] * k
        e[i] = 1
        out.append(hs(-lo, *e))
        out.append(hs(hi, *[-x for x in e]))
    return out


def test_unit_square():
    assert enumerate_vertices(box(2), 2) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_quadric_hyperplane_n3_vertices():
    family = quadric_hyperplane(3)
    P = necessary_region(family)
    assert list(P.vrep) == [(0, 0), (F(2, 3), 0), (F(3, 4), F(1, 2))]


def test_two_lines_singleton():
    assert necessary_region(two_lines()).vrep == ((0, 0),)


def test_pentagon_and_triangle():
    assert list(necessary_region(two_conics()).vrep) == PENTAGON
    assert list(necessary_region(conic_line()).vrep) == [(0, 0), (F(1, 2), 0), (F(2, 3), F(1, 3))]


def test_unbounded_rejected():
    with pytest.raises(UnboundedRegionError):
        enumerate_vertices([hs(0, 1, 0), hs(0, 0, 1)], 2)


def test_empty_region():
    assert enumerate_vertices(box(2) + [hs(-3, 1, 1)], 2) == []
    assert convex_hull([], 2).is_empty


def test_zero_dimensional_ambient():
    assert enumerate_vertices([hs(1)], 0) == [()]
    assert enumerate_vertices([hs(-1)], 0) == []


def test_hull_examples():
    assert convex_hull([(0, 0)]).vrep == ((0, 0),)
    assert convex_hull([(0, 0), (1, 0), (F(1, 2), 0)]).vrep == ((0, 0), (1, 0))
    pent = convex_hull(PENTAGON)
    assert list(pent.vrep) == PENTAGON
    assert equal(pent, necessary_region(two_conics()))


def test_hull_interior_points_dropped():
    pts = PENTAGON + [(F(1, 4), F(1, 4)), (F(1, 3), F(1, 3))]
    assert list(convex_hull(pts).vrep) == PENTAGON


def test_segment_hull_has_equality_pair():
    seg = convex_hull([(0, 0), (1, 1)])
    assert contains(seg, (F(1, 2), F(1, 2)))
    assert not contains(seg, (F(1, 2), F(1, 3)))
    assert not contains(seg, (2, 2))


def test_contains_and_linear_min():
    pent = necessary_region(two_conics())
    assert contains(pent, (F(1, 2), F(1, 2)))
    # strictly inside the wedge y < 2x - 1 cut off by beta(Q1)
    assert not contains(pent, (F(3, 5), F(1, 10)))
    # on the line y = 2x - 1 itself: the domain is closed
    assert contains(pent, (F(3, 5), F(1, 5)))
    assert linear_min(pent, AffineForm(0, (1, 1))) == 0
    assert linear_min(pent, AffineForm(0, (-1, -1))) == -1


def test_necessary_region_inside_box_and_level():
    for family in [two_lines(), two_conics(), conic_line(), *(quadric_hyperplane(n) for n in range(2, 7))]:
        for v in necessary_region(family).vrep:
            assert all(0 <= x <= 1 for x in v)
            assert level(family, v) >= 0


@pytest.mark.parametrize("n", range(1, 9))
def test_single_divisor_interval(n):
    for d in range(1, n + 1):
        P = necessary_region(pn(n, ("S", d)))
        assert P.vrep == ((0,), (F((n + 1) * (d - 1), d * n),)) or (d == 1 and P.vrep == ((0,),))


def test_cone_generators_pointed_cone():
    lines, rays = cone_generators([(1, 0), (0, 1)], 2)
    assert lines == []
    assert sorted(rays) == [(0, 1), (1, 0)]


def test_cone_generators_halfplane_keeps_line():
    lines, rays = cone_generators([(1, 0)], 2)
    assert len(lines) == 1 and lines[0][0] == 0
    assert rays == [(1, 0)]


def random_system(rng, k):
    forms = box(k, -3, 3)
    for _ in range(rng.randint(0, 6)):
        coeffs = [rng.randint(-4, 4) for _ in range(k)]
        forms.append(hs(rng.randint(-3, 6), *coeffs))
    if rng.random() < 0.2:
        coeffs = [rng.randint(-2, 2) for _ in range(k)]
        c = rng.randint(-1, 1)
        forms += [hs(c, *coeffs), hs(-c, *[-x for x in coeffs])]
    return forms


@pytest.mark.parametrize("seed", range(40))
def test_double_description_matches_brute_force(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    system = random_system(rng, k)
    expected = brute_force_vertices([(h.form.constant, h.form.coeffs) for h in system], k)
    assert enumerate_vertices(system, k) == expected


points_2d = st.lists(
    st.tuples(*[st.fractions(min_value=-2, max_value=2, max_denominator=5)] * 2),
    min_size=1,
    max_size=9,
)


@settings(max_examples=60, deadline=None)
@given(pts=points_2d, seed=st.integers(0, 1000))
def test_hull_invariant_under_permutation_and_duplication(pts, seed):
    rng = random.Random(seed)
    shuffled = pts + rng.sample(pts, k=min(3, len(pts)))
    rng.shuffle(shuffled)
    a, b = convex_hull(pts, 2), convex_hull(shuffled, 2)
    assert a.vrep == b.vrep
    assert equal(a, b)
    for p in pts:
        assert contains(a, p)


@settings(max_examples=40, deadline=None)
@given(pts=points_2d)
def test_hull_round_trip(pts):
    hull = convex_hull(pts, 2)
    again = enumerate_vertices(hull.hrep, 2)
    assert tuple(again) == hull.vrep
    assert set(hull.vrep) <= {tuple(map(F, p)) for p in pts}
