"""Random and structured test polyhedra with known answers.

Every generator takes a ``random.Random`` so instances are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import H, V, Polyhedron, gcd_normalize, make_row


def random_h(rng: random.Random, d: int, m: int, lo: int = -9, hi: int = 9,
             n_eq: int = 0) -> Polyhedron:
    """``m`` rows with integer entries in ``[lo, hi]``; the first ``n_eq`` are equations."""
    rows = tuple(tuple(rng.randint(lo, hi) for _ in range(d + 1)) for _ in range(m))
    return Polyhedron(rows, frozenset(range(min(n_eq, m))), H, dim=d)


def feasible_random_h(rng: random.Random, d: int, m: int, lo: int = -9, hi: int = 9,
                      n_eq: int = 0) -> Polyhedron:
    """Like :func:`random_h` but every row holds at a random integer point."""
    x0 = [rng.randint(-2, 2) for _ in range(d)]
    rows = []
    for k in range(m):
        a = [rng.randint(lo, hi) for _ in range(d)]
        ax = sum(p * q for p, q in zip(a, x0))
        b = -ax if k < n_eq else -ax + rng.randint(0, max(hi, 1))
        rows.append((b, *a))
    return Polyhedron(tuple(rows), frozenset(range(min(n_eq, m))), H, dim=d)


def sphere_point(rng: random.Random, d: int, scale: int = 20) -> tuple:
    """Rational point on the unit sphere in R^d by inverse stereographic projection."""
    u = [Fraction(rng.randint(-scale, scale), rng.randint(1, scale)) for _ in range(d - 1)]
    s = sum(x * x for x in u)
    return tuple(2 * x / (s + 1) for x in u) + ((s - 1) / (s + 1),)


def sphere_points(rng: random.Random, n: int, d: int = 3, scale: int = 20) -> list[tuple]:
    seen: set = set()
    out = []
    while len(out) < n:
        p = sphere_point(rng, d, scale)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def sphere_v(rng: random.Random, n: int, d: int = 3, redundant_at: int | None = None) -> Polyhedron:
    """``n`` points on the unit sphere plus one interior point (hence redundant).

    The interior point is the centroid of three sphere points and goes at
    row ``redundant_at`` (default: the middle).
    """
    pts = sphere_points(rng, n, d)
    a, b, c = pts[0], pts[1], pts[2]
    inner = tuple((x + y + z) / 3 for x, y, z in zip(a, b, c))
    pos = n // 2 if redundant_at is None else redundant_at
    rows = [(1, *p) for p in pts]
    rows.insert(pos, (1, *inner))
    return Polyhedron(tuple(make_row(r) for r in rows), frozenset(), V, name="sphere", dim=d)


def tangent_facets(rng: random.Random, d: int, n: int, scale: int = 20) -> list[tuple]:
    """Inequalities ``1 - p.x >= 0`` for distinct rational unit vectors ``p``.

    Each touches the unit ball at ``p`` and no other tangent plane does, so
    all of them are facets of their intersection.
    """
    return [gcd_normalize((1, *(-x for x in p))) for p in sphere_points(rng, n, d, scale)]


def implied_row(rng: random.Random, base: list[tuple], strict: bool, k: int = 3) -> tuple:
    """A positive combination of ``k`` base rows, plus a positive constant if ``strict``."""
    picks = rng.sample(range(len(base)), min(k, len(base)))
    row = [0] * len(base[0])
    for i in picks:
        c = rng.randint(1, 5)
        row = [x + c * y for x, y in zip(row, base[i])]
    if strict:
        row[0] += rng.randint(1, 5)
    return gcd_normalize(row)


def redundant_instance(rng: random.Random, d: int, n_facets: int, n_redundant: int,
                       weak_share: float = 0.3, name: str | None = None
                       ) -> tuple[Polyhedron, set[int]]:
    """Full-dimensional, duplicate-free system with a known non-redundant set.

    Facets are tangent planes to the unit sphere.  Redundant rows are
    positive combinations of facets; about ``weak_share`` of them have no
    extra slack.  The origin is interior.  Returns the polyhedron and the
    indices of its facets.
    """
    facets = tangent_facets(rng, d, n_facets)
    rows = list(facets)
    seen = set(rows)
    while len(rows) < n_facets + n_redundant:
        r = implied_row(rng, facets, strict=rng.random() >= weak_share)
        if r not in seen:
            seen.add(r)
            rows.append(r)
    order = list(range(len(rows)))
    rng.shuffle(order)
    shuffled = tuple(rows[i] for i in order)
    facet_pos = {k for k, i in enumerate(order) if i < n_facets}
    return Polyhedron(shuffled, frozenset(), H, name, d), facet_pos


def cube(d: int) -> Polyhedron:
    """The unit d-cube, rows ``x_j >= 0`` then ``1 - x_j >= 0``."""
    rows = []
    for j in range(d):
        e = [0] * d
        e[j] = 1
        rows.append((0, *e))
        rows.append((1, *(-x for x in e)))
    return Polyhedron(tuple(rows), frozenset(), H, f"cube{d}", d)


def ducube_mini(rng: random.Random, d: int = 6, m: int = 400, redundancy: float = 0.95
                ) -> tuple[Polyhedron, set[int]]:
    """Small stand-in for a 6-dimensional, ~95% redundant benchmark file."""
    n_facets = max(d + 1, round(m * (1 - redundancy)))
    return redundant_instance(rng, d, n_facets, m - n_facets, name="ducube_mini")
