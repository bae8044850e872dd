"""Fourier-Motzkin projection with a minimum-representation cleanup per round."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import EmptyPolyhedronError, full_dimension_test
from .exact import H, Polyhedron, gcd_normalize, integer_row, is_zero_row, make_row
from .lp import INFEASIBLE, feasible_point
from .minrep import minimum_representation
from .parallel import TaskBatch, map_rows

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FMPartition:
    R: tuple          # positive coefficient on the eliminated column
    Sneg: tuple       # negative coefficient
    Z: tuple          # zero coefficient


@dataclass(frozen=True)
class ProjectionSpec:
    keep: tuple
    eliminate: tuple

    @classmethod
    def from_eliminate(cls, d: int, eliminate: Sequence[int]) -> ProjectionSpec:
        elim = tuple(eliminate)
        if len(set(elim)) != len(elim) or any(not 0 <= j < d for j in elim):
            raise ValueError(f"bad elimination columns {list(elim)} for d={d}")
        return cls(tuple(j for j in range(d) if j not in elim), elim)

    @classmethod
    def from_keep(cls, d: int, keep: Sequence[int]) -> ProjectionSpec:
        keep = tuple(sorted(set(keep)))
        if any(not 0 <= j < d for j in keep):
            raise ValueError(f"bad projection columns {list(keep)} for d={d}")
        return cls(keep, tuple(j for j in range(d) if j not in keep))


@dataclass
class RoundInfo:
    column: int                   # original variable index
    by_equation: bool
    r: int = 0
    s: int = 0
    z: int = 0
    raw_inequalities: int = 0
    kept_inequalities: int = 0
    equations: int = 0


def partition(P: Polyhedron, col: int) -> FMPartition:
    R, S, Z = [], [], []
    for i in P.inequalities:
        a = P.rows[i][col + 1]
        (R if a > 0 else S if a < 0 else Z).append(i)
    return FMPartition(tuple(R), tuple(S), tuple(Z))


def _drop(row: Sequence, col: int) -> tuple:
    return tuple(row[:col + 1]) + tuple(row[col + 2:])


def _norm(row):
    return row if is_zero_row(row) else gcd_normalize(row)


def _combine_task(shared, key):
    rows, col = shared
    r, s = key
    ar = rows[r][col + 1]
    as_ = rows[s][col + 1]
    new = [ar * y - as_ * x for x, y in zip(rows[r], rows[s])]
    return _norm(_drop(new, col))


def eliminate_one(P: Polyhedron, col: int, workers: int = 1,
                  info: RoundInfo | None = None) -> Polyhedron:
    """Project out variable ``col`` (0-based) without any cleanup.

    Uses an equation with a nonzero coefficient on ``col`` when one exists
    (the smallest such row); otherwise every (positive, negative) pair of
    inequalities is combined.  Equations are kept first in the output.
    """
    if P.kind != H:
        raise ValueError("Fourier-Motzkin elimination needs an H-representation")
    if not 0 <= col < P.d:
        raise ValueError(f"column {col + 1} out of range 1..{P.d}")
    eq = next((i for i in P.equations if P.rows[i][col + 1] != 0), None)
    if eq is not None:
        e = P.rows[eq]
        c = Fraction(e[col + 1])
        lin = [i for i in P.equations if i != eq]
        rows = []
        for i in lin + P.inequalities:
            r = P.rows[i]
            f = Fraction(r[col + 1]) / c
            rows.append(_norm(make_row(_drop([x - f * y for x, y in zip(r, e)], col))))
        if info is not None:
            info.by_equation = True
            info.equations = len(lin)
            info.raw_inequalities = len(P.inequalities)
        return Polyhedron(tuple(rows), frozenset(range(len(lin))), H, P.name, P.d - 1)

    part = partition(P, col)
    eqrows = [_drop(P.rows[i], col) for i in P.equations]
    zrows = [_norm(_drop(P.rows[i], col)) for i in part.Z]
    pairs = [(r, s) for r in part.R for s in part.Sneg]
    if workers > 1 and len(pairs) > 256:
        combined = map_rows(TaskBatch(pairs, width=workers), _combine_task, (P.rows, col))
        crow = [combined[k] for k in pairs]
    else:
        crow = [_combine_task((P.rows, col), k) for k in pairs]
    rows = eqrows + zrows + crow
    assert len(zrows) + len(crow) == len(part.Z) + len(part.R) * len(part.Sneg)
    if info is not None:
        info.r, info.s, info.z = len(part.R), len(part.Sneg), len(part.Z)
        info.raw_inequalities = len(zrows) + len(crow)
        info.equations = len(eqrows)
    return Polyhedron(tuple(rows), frozenset(range(len(eqrows))), H, P.name, P.d - 1)


def _score(P: Polyhedron, col: int) -> tuple:
    if any(P.rows[i][col + 1] != 0 for i in P.equations):
        return (0, -1)
    p = partition(P, col)
    r, s = len(p.R), len(p.Sneg)
    return (1, r * s - r - s)


@dataclass
class ProjectionResult:
    polyhedron: Polyhedron
    columns: tuple                      # original variable index of each output column
    rounds: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)


def project(P: Polyhedron, spec: ProjectionSpec, workers: int = 1, *,
            skip_linearity_search: bool = True, clarkson: bool = False,
            order: str = "given", initial_minrep: bool = True,
            debug_checks: bool = False) -> ProjectionResult:
    """Minimum representation of the projection of ``P`` onto ``spec.keep``.

    The input is first brought to a minimum representation; after that no
    round can create hidden linearities, so each cleanup skips the search
    unless ``skip_linearity_search`` is false (forced when the initial
    cleanup is disabled).
    """
    if P.kind != H:
        raise ValueError("Fourier-Motzkin projection needs an H-representation")
    if not initial_minrep:
        skip_linearity_search = False
    cols = list(range(P.d))
    lps = 0
    max_lp = 0
    if initial_minrep:
        rep = minimum_representation(P, workers, clarkson=clarkson, debug_checks=debug_checks)
        if not rep.feasible:
            raise EmptyPolyhedronError("input polyhedron is empty", rep.certificate)
        lps += rep.stats.get("lps", 0)
        max_lp = max(max_lp, rep.stats.get("max_lp_size", 0))
        P = rep.representation(P)
    rounds: list[RoundInfo] = []
    todo = list(spec.eliminate)
    while todo:
        if order == "heuristic":
            nxt = min(todo, key=lambda c: (_score(P, cols.index(c)), c))
        elif order == "given":
            nxt = todo[0]
        else:
            raise ValueError(f"unknown elimination order {order!r}")
        todo.remove(nxt)
        pos = cols.index(nxt)
        info = RoundInfo(nxt, False)
        Q = eliminate_one(P, pos, workers, info)
        cols.pop(pos)
        rep = minimum_representation(Q, workers, find_linearities=not skip_linearity_search,
                                     clarkson=clarkson, debug_checks=debug_checks)
        if not rep.feasible:
            raise EmptyPolyhedronError("projection is empty", rep.certificate)
        lps += rep.stats.get("lps", 0)
        max_lp = max(max_lp, rep.stats.get("max_lp_size", 0))
        P = rep.representation(Q)
        info.kept_inequalities = len(P.inequalities)
        if debug_checks and P.inequalities:
            full, _ = full_dimension_test(P)
            if not full:
                raise AssertionError(f"hidden linearity after eliminating x{nxt + 1}")
        rounds.append(info)
        log.debug("eliminated x%d: raw %d -> %d", nxt + 1, info.raw_inequalities,
                  info.kept_inequalities)
    rows = tuple(_norm(r) for r in P.rows)
    P = Polyhedron(rows, P.linearity, H, P.name, P.d)
    return ProjectionResult(P, tuple(cols), rounds, {"lps": lps, "max_lp_size": max_lp})


def in_projection(P: Polyhedron, keep: Sequence[int], y: Sequence) -> bool:
    """Does some ``x`` in ``P`` have ``x[keep] == y``?  (one Phase I LP)"""
    keep = list(keep)
    rest = [j for j in range(P.d) if j not in keep]
    yv = dict(zip(keep, y))

    def fix(row):
        b = row[0] + sum(row[j + 1] * yv[j] for j in keep)
        return make_row([b] + [row[j + 1] for j in rest])

    eqs = [fix(P.rows[i]) for i in P.equations]
    ineqs = [fix(P.rows[i]) for i in P.inequalities]
    cons = ineqs + eqs + [tuple(-x for x in e) for e in eqs]
    if not rest:
        return all(r[0] >= 0 for r in cons)
    out = feasible_point([integer_row(r) for r in cons], len(rest))
    return out.status != INFEASIBLE
