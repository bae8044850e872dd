import random

import pytest

from polyred.classify import Verdict, classify
from polyred.exact import H, V, Polyhedron, canonical_form
from polyred.generators import cube, feasible_random_h
from polyred.oracle import (GuardRailError, enumerate_facets, enumerate_vertices, golden_square,
                            naive_classify, naive_classify_all, same_polyhedron)

from conftest import SQUARE, TRIANGLE, hpoly


def test_square_vertices(square):
    vl = enumerate_vertices(square)
    assert vl.vertices == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert vl.rays == [] and vl.lineality == []
    for v, basis in zip(sorted(vl.vertices), vl.source_bases):
        assert len(basis) == 2


def test_triangle_vertices(triangle):
    assert enumerate_vertices(triangle).vertices == [(0, 0), (0, 1), (1, 0)]


def test_orthant_rays():
    vl = enumerate_vertices(hpoly([(0, 1, 0), (0, 0, 1)]))
    assert vl.vertices == [(0, 0)] and vl.rays == [(0, 1), (1, 0)]


def test_lineality_space():
    vl = enumerate_vertices(hpoly([(0, 1, 0)]))
    assert vl.lineality == [(0, 1)] and vl.vertices == [(0, 0)] and vl.rays == [(1, 0)]


def test_empty_gives_empty_list():
    assert enumerate_vertices(hpoly([(-1, 1), (0, -1)])).vertices == []


def test_guard_rails():
    with pytest.raises(GuardRailError):
        enumerate_vertices(cube(7))
    with pytest.raises(GuardRailError):
        enumerate_vertices(hpoly([(1, 1)] * 25))


@pytest.mark.parametrize("rows, i, verdict", [
    (SQUARE + [(1, 1, 1)], 4, Verdict.STRONGLY_REDUNDANT),
    ([(0, 1, 0), (0, 0, 1), (0, 1, 1)], 2, Verdict.WEAKLY_REDUNDANT),
    (SQUARE, 0, Verdict.NON_REDUNDANT),
])
def test_naive_classify_examples(rows, i, verdict):
    assert naive_classify(hpoly(rows), i).verdict == verdict


def test_naive_classify_all_matches_single_rows():
    rng = random.Random(4)
    for _ in range(30):
        P = feasible_random_h(rng, rng.randint(1, 3), rng.randint(2, 7), lo=-3, hi=3)
        every = naive_classify_all(P)
        for i in P.inequalities:
            assert every[i].verdict == naive_classify(P, i).verdict == classify(P, i).verdict


def test_permutation_invariant_vertex_set():
    rng = random.Random(8)
    P = feasible_random_h(rng, 3, 8)
    rows = list(P.rows)
    rng.shuffle(rows)
    Q = hpoly(rows)
    assert enumerate_vertices(P).vertices == enumerate_vertices(Q).vertices
    assert enumerate_vertices(P).rays == enumerate_vertices(Q).rays


def test_facets_of_square_vertices(square):
    Pv = enumerate_vertices(square).as_v_polyhedron(2)
    assert Pv.kind == V
    assert same_polyhedron(enumerate_facets(Pv), square)


def test_facets_with_lineality():
    Pv = Polyhedron(((1, 0, 0), (0, 1, 0), (0, 0, 1)), frozenset({2}), V, dim=2)
    F = enumerate_facets(Pv)
    assert canonical_form(F) == canonical_form(hpoly([(0, 1, 0)]))


def test_golden_square_on_cube():
    assert same_polyhedron(golden_square(cube(3), [0, 2]), cube(2))


def test_golden_square_guard():
    with pytest.raises(GuardRailError):
        golden_square(cube(4), [0], max_vertices=8)
