"""Brute-force ground truth for tiny polyhedra.

Vertices and extreme rays come from trying every basis of the constraint
matrix.  Nothing here uses the simplex code, so it can check it.  Inputs
beyond the guard rails are rejected outright.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .classify import RowClass, Verdict
from .exact import (H, V, Polyhedron, canonical_form, dot_coeffs, evaluate, integer_row,
                    make_row, nullspace, rank)

MAX_D = 6
MAX_M = 24


class GuardRailError(ValueError):
    """Input too large for brute-force enumeration."""


@dataclass
class VertexList:
    vertices: list = field(default_factory=list)
    rays: list = field(default_factory=list)
    lineality: list = field(default_factory=list)
    source_bases: list = field(default_factory=list)

    def as_v_polyhedron(self, d: int) -> Polyhedron:
        rows = [(1,) + tuple(v) for v in self.vertices]
        rows += [(0,) + tuple(r) for r in self.rays]
        lin = range(len(rows), len(rows) + len(self.lineality))
        rows += [(0,) + tuple(l) for l in self.lineality]
        return Polyhedron(tuple(rows), frozenset(lin), V, dim=d)


def _primitive(v: Sequence) -> tuple:
    return integer_row(v)


def _solve_int(A: list[list[int]], rhs: list[int]) -> list[Fraction] | None:
    """Fraction-free Gaussian elimination for a square integer system."""
    n = len(A)
    M = [list(r) + [b] for r, b in zip(A, rhs)]
    prev = 1
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        pc = M[c][c]
        for r in range(c + 1, n):
            f = M[r][c]
            M[r] = [(x * pc - f * y) // prev for x, y in zip(M[r], M[c])]
        prev = pc
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        s = Fraction(M[r][n]) - sum(M[r][k] * x[k] for k in range(r + 1, n))
        x[r] = s / M[r][r]
    return x


def _as_ints(rows):
    return [integer_row(r) for r in rows]


class _Arrangement:
    """Basic solutions of ``rows`` with a fixed block of equations."""

    def __init__(self, rows: list[tuple[int, ...]], d: int, mandatory: list[tuple[int, ...]]):
        self.rows = rows
        self.d = d
        basis: list[tuple[int, ...]] = []
        for r in mandatory:
            if rank([b[1:] for b in basis + [r]], d) > len(basis):
                basis.append(r)
        self.basis = basis

    def vertices(self, pool: Sequence[int]):
        k = self.d - len(self.basis)
        for S in combinations(pool, k):
            sysrows = self.basis + [self.rows[i] for i in S]
            x = _solve_int([list(r[1:]) for r in sysrows], [-r[0] for r in sysrows])
            if x is not None:
                yield S, tuple(x)

    def rays(self, pool: Sequence[int]):
        k = self.d - 1 - len(self.basis)
        if k < 0:
            return
        for S in combinations(pool, k):
            sysrows = [r[1:] for r in self.basis] + [self.rows[i][1:] for i in S]
            ns = nullspace(sysrows, self.d)
            if len(ns) == 1:
                yield S, ns[0]


def _guard(P: Polyhedron, max_d: int, max_m: int) -> None:
    if P.d > max_d or P.m > max_m:
        raise GuardRailError(
            f"oracle limited to d <= {max_d}, m <= {max_m} (got d={P.d}, m={P.m})")


def enumerate_vertices(P: Polyhedron, *, max_d: int = MAX_D, max_m: int = MAX_M) -> VertexList:
    """Vertices, extreme rays and a lineality basis of an H-polyhedron.

    Vertices and rays are taken in the orthogonal complement of the
    lineality space, so the decomposition is unique.  An empty ``P`` gives
    an empty list.
    """
    if P.kind != H:
        raise ValueError("enumerate_vertices expects an H-representation")
    _guard(P, max_d, max_m)
    d = P.d
    rows = _as_ints(P.rows)
    lineality = [_primitive(v) for v in nullspace([r[1:] for r in rows], d)] if rows else \
        [tuple(1 if j == k else 0 for j in range(d)) for k in range(d)]
    mandatory = [rows[i] for i in P.equations] + [(0,) + l for l in lineality]
    arr = _Arrangement(rows, d, mandatory)
    ineq = P.inequalities
    eqs = P.equations
    out = VertexList(lineality=[tuple(l) for l in lineality])
    seen = set()
    for S, x in arr.vertices(ineq):
        if any(evaluate(rows[i], x) != 0 for i in eqs):
            continue
        if any(evaluate(rows[i], x) < 0 for i in ineq):
            continue
        key = tuple(x)
        if key not in seen:
            seen.add(key)
            out.vertices.append(make_row(x))
            out.source_bases.append(tuple(S))
    if not out.vertices:
        return VertexList()
    rseen = set()
    for _, r in arr.rays(ineq):
        if any(dot_coeffs(rows[i], r) != 0 for i in eqs):
            continue
        for sgn in (1, -1):
            v = [sgn * x for x in r]
            if all(dot_coeffs(rows[i], v) >= 0 for i in ineq):
                key = _primitive(v)
                if key not in rseen:
                    rseen.add(key)
                    out.rays.append(key)
    out.vertices.sort()
    out.rays.sort()
    return out


def _verdict(z_min, z_max, check_linearity: bool) -> Verdict:
    # None encodes an unbounded optimum
    if check_linearity and z_max == 0:
        return Verdict.LINEARITY
    if z_min is None or z_min < 0:
        return Verdict.NON_REDUNDANT
    return Verdict.STRONGLY_REDUNDANT if z_min > 0 else Verdict.WEAKLY_REDUNDANT


def _extremes(row, vl: VertexList):
    lin_moves = any(dot_coeffs(row, l) != 0 for l in vl.lineality)
    vals = [evaluate(row, v) for v in vl.vertices]
    if lin_moves or any(dot_coeffs(row, r) < 0 for r in vl.rays):
        z_min, arg = None, None
    else:
        z_min = min(vals)
        arg = vl.vertices[vals.index(z_min)]
    if lin_moves or any(dot_coeffs(row, r) > 0 for r in vl.rays):
        z_max = None
    else:
        z_max = max(vals)
    return z_min, z_max, arg


def naive_classify(P: Polyhedron, i: int, check_linearity: bool = True) -> RowClass:
    """Verdict for inequality ``i`` from the vertices and rays of ``P`` minus row ``i``."""
    if i in P.linearity:
        raise ValueError(f"row {i} is an equation")
    _guard(P, MAX_D, MAX_M)
    vl = enumerate_vertices(P.without(i))
    if not vl.vertices:
        raise ValueError("polyhedron without row i is empty")
    z_min, z_max, arg = _extremes(P.rows[i], vl)
    return RowClass(_verdict(z_min, z_max, check_linearity), arg, False, z_min, z_max)


def naive_classify_all(P: Polyhedron, check_linearity: bool = True) -> dict[int, RowClass]:
    """:func:`naive_classify` for every inequality, sharing one basis enumeration.

    Falls back to per-row enumeration when dropping a row creates lineality.
    """
    _guard(P, MAX_D, MAX_M)
    d = P.d
    rows = _as_ints(P.rows)
    eqs = P.equations
    ineq = P.inequalities
    if not rows or rank([r[1:] for r in rows], d) < d:
        return {i: naive_classify(P, i, check_linearity) for i in ineq}
    arr = _Arrangement(rows, d, [rows[i] for i in eqs])
    verts = [(set(S), x) for S, x in arr.vertices(ineq)
             if all(evaluate(rows[i], x) == 0 for i in eqs)]
    rays = [(set(S), r) for S, r in arr.rays(ineq)
            if all(dot_coeffs(rows[i], r) == 0 for i in eqs)]
    out = {}
    for i in ineq:
        others = [k for k in ineq if k != i]
        if rank([rows[k][1:] for k in others + eqs], d) < d:
            out[i] = naive_classify(P, i, check_linearity)
            continue
        vl = VertexList()
        for S, x in verts:
            if i not in S and all(evaluate(rows[k], x) >= 0 for k in others):
                vl.vertices.append(x)
        for S, r in rays:
            if i in S:
                continue
            for sgn in (1, -1):
                v = [sgn * c for c in r]
                if all(dot_coeffs(rows[k], v) >= 0 for k in others):
                    vl.rays.append(v)
        if not vl.vertices:
            raise ValueError("polyhedron without a row is empty")
        z_min, z_max, arg = _extremes(P.rows[i], vl)
        out[i] = RowClass(_verdict(z_min, z_max, check_linearity), arg, False, z_min, z_max)
    return out


def enumerate_facets(Pv: Polyhedron, *, max_d: int = MAX_D + 1, max_m: int = MAX_M) -> Polyhedron:
    """H-representation of a V-polyhedron via the extreme rays of its polar cone."""
    if Pv.kind != V:
        raise ValueError("enumerate_facets expects a V-representation")
    cone = Polyhedron(tuple((0,) + tuple(r) for r in Pv.rows), Pv.linearity, H, dim=Pv.d + 1)
    vl = enumerate_vertices(cone, max_d=max_d, max_m=max_m)
    rows = [tuple(l) for l in vl.lineality]
    lin = frozenset(range(len(rows)))
    rows += [tuple(r) for r in vl.rays]
    if not rows:
        rows = [(1,) + (0,) * Pv.d]      # whole space
    return Polyhedron(tuple(rows), lin, H, dim=Pv.d)


def project_vertices(vl: VertexList, keep: Sequence[int], d: int) -> Polyhedron:
    """Coordinate projection of a vertex list, as a V-polyhedron."""
    rows = [(1,) + tuple(v[j] for j in keep) for v in vl.vertices]
    for r in vl.rays:
        pr = tuple(r[j] for j in keep)
        if any(pr):
            rows.append((0,) + pr)
    lin = []
    for l in vl.lineality:
        pr = tuple(l[j] for j in keep)
        if any(pr):
            lin.append(len(rows))
            rows.append((0,) + pr)
    return Polyhedron(tuple(rows), frozenset(lin), V, dim=len(keep))


def golden_square(P: Polyhedron, keep: Sequence[int], workers: int = 1,
                  max_vertices: int = 5000) -> Polyhedron:
    """Project an H-polyhedron by H -> V, coordinate drop, V cleanup, V -> H."""
    from .minrep import minimum_representation

    if P.d > MAX_D:
        raise GuardRailError(f"golden square limited to d <= {MAX_D}")
    vl = enumerate_vertices(P)
    if not vl.vertices:
        raise ValueError("polyhedron is empty")
    if len(vl.vertices) > max_vertices:
        raise GuardRailError(f"{len(vl.vertices)} vertices exceed the limit {max_vertices}")
    Qv = project_vertices(vl, keep, P.d)
    rep = minimum_representation(Qv, workers)
    Qv = rep.representation(Qv)
    return enumerate_facets(Qv)


def same_polyhedron(P: Polyhedron, Q: Polyhedron) -> bool:
    """Equality of two minimum H-representations after normalisation."""
    return canonical_form(P) == canonical_form(Q)
