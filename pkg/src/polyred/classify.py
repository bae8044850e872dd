"""Per-row redundancy / linearity verdicts and the interior-point LP."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .exact import Polyhedron, Substitution, gaussian_reduce, integer_row, is_zero_coeffs
from .lp import INFEASIBLE, OPTIMAL, UNBOUNDED, feasible_point, solve_int


class Verdict(str, Enum):
    LINEARITY = "linearity"
    STRONGLY_REDUNDANT = "strongly_redundant"
    WEAKLY_REDUNDANT = "weakly_redundant"
    NON_REDUNDANT = "nonredundant"

    @property
    def redundant(self) -> bool:
        return self in (Verdict.STRONGLY_REDUNDANT, Verdict.WEAKLY_REDUNDANT)


@dataclass(frozen=True)
class RowClass:
    verdict: Verdict
    witness: tuple | None = None
    witness_is_ray: bool = False
    z_min: Fraction | int | None = None    # None when the minimum is unbounded
    z_max: Fraction | int | None = None    # only computed when needed
    lps: int = 0
    max_lp_size: int = 0


class EmptyPolyhedronError(ValueError):
    """The constraint system has no solution."""

    def __init__(self, msg: str, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


def classify_rows(rows: Sequence[Sequence[int]], i: int, check_linearity: bool) -> RowClass:
    """Verdict for inequality ``i`` of the integer system ``rows >= 0``.

    No equations: callers substitute them out first.  Witnesses are in the
    coordinates of ``rows``.
    """
    target = rows[i]
    others = [r for k, r in enumerate(rows) if k != i]
    d = len(target) - 1
    lo = solve_int(others, target, maximize=False, d=d)
    lps, size = 1, len(others)
    if lo.status == INFEASIBLE:
        raise EmptyPolyhedronError(f"system without row {i} is infeasible")
    if lo.status == UNBOUNDED:
        z_min = None
    else:
        z_min = lo.value
    if z_min is not None and z_min > 0:
        return RowClass(Verdict.STRONGLY_REDUNDANT, lo.point, False, z_min, None, lps, size)

    if check_linearity:
        # a linearity can have z_min < 0 as well as z_min = 0
        hi = solve_int(others, target, maximize=True, d=d)
        lps += 1
        if hi.status == OPTIMAL and hi.value == 0:
            return RowClass(Verdict.LINEARITY, hi.point, False, z_min, 0, lps, size)
        z_max = None if hi.status == UNBOUNDED else hi.value
    else:
        z_max = None

    if z_min is None:
        return RowClass(Verdict.NON_REDUNDANT, lo.direction, True, None, z_max, lps, size)
    if z_min < 0:
        return RowClass(Verdict.NON_REDUNDANT, lo.point, False, z_min, z_max, lps, size)
    return RowClass(Verdict.WEAKLY_REDUNDANT, lo.point, False, z_min, z_max, lps, size)


def _reduced_system(P: Polyhedron) -> tuple[Substitution, dict[int, tuple[int, ...]]]:
    eq = [P.rows[i] for i in P.equations]
    g = gaussian_reduce(eq)
    if g.inconsistent:
        raise EmptyPolyhedronError("equations are inconsistent")
    labels = [P.equations[k] for k in g.independent]
    sub = Substitution([P.rows[i] for i in labels], P.d, labels)
    red = {i: integer_row(sub.apply(P.rows[i])) for i in P.inequalities}
    return sub, red


def classify(P: Polyhedron, i: int, check_linearity: bool = True) -> RowClass:
    """Verdict for inequality row ``i`` of ``P``.

    Equations of ``P`` are substituted out first; witnesses are returned in
    the original coordinates.
    """
    if i in P.linearity:
        raise ValueError(f"row {i} is an equation")
    sub, red = _reduced_system(P)
    order = sorted(red)
    rows = [red[k] for k in order]
    rc = classify_rows(rows, order.index(i), check_linearity)
    if rc.witness is None:
        return rc
    w = sub.lift_direction(rc.witness) if rc.witness_is_ray else sub.lift(rc.witness)
    return RowClass(rc.verdict, w, rc.witness_is_ray, rc.z_min, rc.z_max, rc.lps, rc.max_lp_size)


def interior_rows(rows: Sequence[Sequence[int]], d: int):
    """Solve ``max t  s.t. rows - t >= 0, t <= 1``.

    Returns ``(t, point)``; raises :class:`EmptyPolyhedronError` when the
    system is infeasible.
    """
    cons = [tuple(r) + (-1,) for r in rows]
    cons.append((1,) + (0,) * d + (-1,))
    obj = (0,) * (d + 1) + (1,)
    out = solve_int(cons, obj, maximize=True, d=d + 1)
    if out.status != OPTIMAL:
        raise EmptyPolyhedronError("polyhedron is empty")
    return out.value, out.point[:d]


def full_dimension_test(P: Polyhedron) -> tuple[bool, tuple | None]:
    """Is there a point of ``P`` strictly inside every inequality?

    Returns ``(is_full, point)``; ``point`` is a relative-interior point in
    original coordinates when ``is_full``.
    """
    sub, red = _reduced_system(P)
    rows = [red[k] for k in sorted(red)]
    d = len(sub.free)
    for r in rows:
        if is_zero_coeffs(r) and r[0] < 0:
            raise EmptyPolyhedronError("constant row is violated")
    t, y = interior_rows(rows, d)
    if t > 0:
        return True, sub.lift(y)
    return False, None


def is_feasible(rows: Sequence[Sequence[int]], d: int) -> bool:
    return feasible_point(rows, d).status != INFEASIBLE
