import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polyred.classify import EmptyPolyhedronError
from polyred.exact import canonical_form
from polyred.fm import ProjectionSpec, RoundInfo, eliminate_one, in_projection, partition, project
from polyred.generators import cube, feasible_random_h
from polyred.oracle import golden_square, same_polyhedron

from conftest import SQUARE, TRIANGLE, hpoly


def _rows(P):
    return sorted(P.rows)


def test_square_eliminate_x2(square):
    part = partition(square, 1)
    assert (part.R, part.Sneg, part.Z) == ((2,), (3,), (0, 1))
    info = RoundInfo(1, False)
    raw = eliminate_one(square, 1, info=info)
    assert raw.m == 3 and info.raw_inequalities == 3
    res = project(square, ProjectionSpec.from_eliminate(2, [1]))
    assert _rows(res.polyhedron) == [(0, 1), (1, -1)]
    assert res.columns == (0,)


def test_equation_path():
    P = hpoly([(3, 1, -2), (0, 1, 0)], lin=[0])
    info = RoundInfo(1, False)
    Q = eliminate_one(P, 1, info=info)
    assert info.by_equation and Q.d == 1 and Q.rows == ((0, 1),) and not Q.linearity


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_cube_count_identity(d):
    info = RoundInfo(0, False)
    eliminate_one(cube(d), d - 1, info=info)
    assert (info.r, info.s, info.z) == (1, 1, 2 * (d - 1))
    assert info.raw_inequalities == 2 * (d - 1) + 1


def test_three_cube_to_square():
    res = project(cube(3), ProjectionSpec.from_eliminate(3, [2]))
    assert res.polyhedron.m == 4 and same_polyhedron(res.polyhedron, cube(2))


def test_rotated_square():
    P = hpoly([(0, 1, 1), (2, 1, -1), (2, -1, 1), (4, -1, -1)])
    res = project(P, ProjectionSpec.from_eliminate(2, [1]))
    assert _rows(res.polyhedron) == [(1, 1), (3, -1)]
    assert same_polyhedron(res.polyhedron, golden_square(P, [0]))


def test_triangle(triangle):
    res = project(triangle, ProjectionSpec.from_eliminate(2, [1]))
    assert _rows(res.polyhedron) == [(0, 1), (1, -1)]
    assert res.rounds[0].raw_inequalities == 2 and res.rounds[0].kept_inequalities == 2


def test_bad_columns_rejected(square):
    with pytest.raises(ValueError):
        eliminate_one(square, 2)
    with pytest.raises(ValueError):
        ProjectionSpec.from_eliminate(2, [0, 0])
    with pytest.raises(ValueError):
        project(square, ProjectionSpec((0,), (1,)), order="random")


def test_empty_input_raises():
    with pytest.raises(EmptyPolyhedronError):
        project(hpoly([(-1, 1, 0), (0, -1, 0)]), ProjectionSpec.from_eliminate(2, [1]))


def test_keep_and_eliminate_specs_agree():
    assert ProjectionSpec.from_keep(4, [3, 0]) == ProjectionSpec.from_eliminate(4, [1, 2])


def test_projection_with_hidden_linearity():
    # x1 + x2 >= 0, -(x1 + x2) >= 0, 0 <= x1 <= 1 : projection onto x2 is [-1, 0]
    P = hpoly([(0, 1, 1), (0, -1, -1), (0, 1, 0), (1, -1, 0)])
    res = project(P, ProjectionSpec.from_keep(2, [1]), debug_checks=True)
    assert _rows(res.polyhedron) == [(0, -1), (1, 1)]


def test_parallel_row_generation_matches_sequential():
    rng = random.Random(5)
    P = feasible_random_h(rng, 3, 40)
    spec = ProjectionSpec.from_eliminate(3, [0])
    a = project(P, spec, 1)
    b = project(P, spec, 2)
    assert a.polyhedron == b.polyhedron


def _samples(P, keep, rng, n):
    """Points near the projection: projected witnesses plus jitter."""
    pts = [tuple(rng.randint(-4, 4) for _ in keep)]
    while len(pts) < n:
        b = rng.choice(pts)
        pts.append(tuple(x + F(rng.randint(-3, 3), rng.randint(1, 3)) for x in b))
    return pts


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(2, 4), m=st.integers(2, 8))
def test_membership_matches_feasibility_lp(seed, d, m):
    rng = random.Random(seed)
    P = feasible_random_h(rng, d, m, lo=-4, hi=4, n_eq=seed % 2)
    elim = rng.sample(range(d), rng.randint(1, d - 1))
    spec = ProjectionSpec.from_eliminate(d, elim)
    res = project(P, spec, debug_checks=True)
    for y in _samples(P, spec.keep, rng, 60):
        assert res.polyhedron.contains(y) == in_projection(P, spec.keep, y)
    for info in res.rounds:
        if not info.by_equation:
            assert info.raw_inequalities == info.z + info.r * info.s


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(3, 4), m=st.integers(3, 9))
def test_elimination_order_independence(seed, d, m):
    rng = random.Random(seed)
    P = feasible_random_h(rng, d, m, lo=-4, hi=4)
    elim = rng.sample(range(d), 2)
    a = project(P, ProjectionSpec.from_eliminate(d, elim))
    b = project(P, ProjectionSpec.from_eliminate(d, elim[::-1]))
    c = project(P, ProjectionSpec.from_eliminate(d, elim), order="heuristic")
    e = project(P, ProjectionSpec.from_eliminate(d, elim), clarkson=True)
    assert canonical_form(a.polyhedron) == canonical_form(b.polyhedron)
    assert canonical_form(a.polyhedron) == canonical_form(c.polyhedron)
    assert canonical_form(a.polyhedron) == canonical_form(e.polyhedron)


def test_skip_flag_forced_off_without_initial_minrep():
    P = hpoly([(0, 1, 1), (0, -1, -1), (0, 1, 0), (1, -1, 0), (5, 1, 0)])
    res = project(P, ProjectionSpec.from_keep(2, [1]), initial_minrep=False)
    assert _rows(res.polyhedron) == [(0, -1), (1, 1)]
