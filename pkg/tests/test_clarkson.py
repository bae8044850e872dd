import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from polyred.clarkson import ClarksonError, clarkson_nonredundant, clarkson_rows, ray_shoot, ray_shoot_rows
from polyred.exact import dot_coeffs, evaluate, integer_row
from polyred.generators import redundant_instance
from polyred.minrep import minimum_representation, verify_report

from conftest import SQUARE, TRIANGLE, hpoly

HALF = (F(1, 2), F(1, 2))


def test_triangle_keeps_everything(triangle):
    rep = clarkson_nonredundant(triangle)
    assert rep.final_nonredundant == (0, 1, 2)
    assert verify_report(triangle, rep) == []


def test_square_plus_redundant_row():
    P = hpoly(SQUARE + [(1, 1, 1)])
    rep = clarkson_nonredundant(P)
    assert rep.final_nonredundant == (0, 1, 2, 3)
    assert rep.stats["max_lp_size"] <= 4
    assert rep.classes[4].z_min is not None and rep.classes[4].z_min > 0
    assert verify_report(P, rep) == []


def test_rejects_equations(example):
    with pytest.raises(ValueError):
        clarkson_nonredundant(example)


def test_rejects_flat_input():
    with pytest.raises(ClarksonError):
        clarkson_nonredundant(hpoly([(0, 1), (0, -1)]))


@pytest.mark.parametrize("target, is_dir, expected", [
    ((2, F(1, 2)), False, 1),
    ((2, 2), False, 1),            # corner tie: the perturbation picks 1 - x1 >= 0
    ((-1, 0), True, 0),
])
def test_ray_shoot_square(square, target, is_dir, expected):
    assert ray_shoot(square, HALF, target, is_dir) == expected


def test_ray_shoot_triangle(triangle):
    assert ray_shoot(triangle, (F(1, 4), F(1, 4)), (-1, 0), True) == 0


def test_ray_shoot_rejects_boundary_start(square):
    with pytest.raises(ClarksonError):
        ray_shoot(square, (0, F(1, 2)), (1, 0), True)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(2, 4))
def test_ray_shoot_hit_is_tight_and_feasible(seed, d):
    rng = random.Random(seed)
    P, _ = redundant_instance(rng, d, d + 3, 4)
    rows = [integer_row(r) for r in P.rows]
    interior = (0,) * d
    direction = tuple(rng.randint(-5, 5) for _ in range(d))
    if not any(direction):
        return
    try:
        k, lam = ray_shoot_rows(rows, interior, direction)
    except ClarksonError:
        return  # the ray never leaves
    hit = tuple(lam * x for x in direction)
    assert evaluate(rows[k], hit) == 0
    assert all(evaluate(r, hit) >= 0 for r in rows)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6), d=st.integers(2, 5), n=st.integers(0, 25),
       weak=st.floats(0, 1))
def test_agrees_with_classic_and_stays_output_sensitive(seed, d, n, weak):
    rng = random.Random(seed)
    P, facets = redundant_instance(rng, d, d + 2, n, weak_share=weak)
    rep = clarkson_nonredundant(P)
    assert set(rep.final_nonredundant) == facets
    assert rep.stats["max_lp_size"] <= len(rep.final_nonredundant)
    order = rep.stats["certified_order"]
    assert len(order) == len(set(order))
    assert minimum_representation(P).final_nonredundant == rep.final_nonredundant
    assert verify_report(P, rep) == []


def test_tangent_example_in_the_plane():
    rng = random.Random(11)
    P, facets = redundant_instance(rng, 2, 40, 500, weak_share=0)
    rep = clarkson_nonredundant(P)
    assert set(rep.final_nonredundant) == facets
    assert rep.stats["max_lp_size"] <= len(facets)


def test_pipeline_flag_matches_classic(example):
    P = hpoly(SQUARE + [(1, 1, 1), (0, 2, 0), (2, -1, -1)])
    a = minimum_representation(P)
    b = minimum_representation(P, clarkson=True)
    assert a.final_nonredundant == b.final_nonredundant
    c = minimum_representation(example, clarkson=True)
    assert (c.final_linearity, c.final_nonredundant) == ((0,), (1,))


def test_tied_hits_get_proper_witnesses():
    rows = [integer_row(r) for r in SQUARE]
    st, classes = clarkson_rows(rows, HALF)
    for k in st.E:
        w = classes[k].witness
        if classes[k].witness_is_ray:
            assert dot_coeffs(rows[k], w) < 0
        else:
            v = evaluate(rows[k], w)
            others = [evaluate(rows[j], w) for j in st.E if j != k]
            assert v < 0 and min(others) >= 0 or v == 0 and min(others) > 0
