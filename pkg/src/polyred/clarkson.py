"""Output-sensitive redundancy removal (Clarkson).

Each candidate row is tested with an LP over the rows already certified
non-redundant.  A failed test yields a point or ray outside the certified
region; shooting from an interior point towards it finds the first facet
hit, which is certified and added.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .classify import RowClass, Verdict, interior_rows
from .exact import Polyhedron, dot_coeffs, evaluate, integer_row
from .lp import INFEASIBLE, OPTIMAL, solve_int


class ClarksonError(RuntimeError):
    pass


@dataclass
class ClarksonState:
    interior: tuple
    E: list[int] = field(default_factory=list)
    pending: deque = field(default_factory=deque)
    certificates: dict[int, tuple] = field(default_factory=dict)  # row -> crossing point
    lps: int = 0
    max_lp_size: int = 0


def ray_shoot_rows(rows: Sequence[Sequence], interior: Sequence, direction: Sequence
                   ) -> tuple[int, Fraction]:
    """First row made tight along ``interior + lam * direction``, ``lam > 0``.

    Ties on ``lam`` are broken as if the start point were perturbed by
    ``(eps, eps^2, ..., eps^d)``: the tied row with the lexicographically
    smallest ``a_k / (-a_k . direction)`` is hit first.  On a deduplicated
    system this picks a single row, and that row is a facet.
    """
    best = None
    best_lam = None
    best_key = None
    for k, row in enumerate(rows):
        slack = evaluate(row, interior)
        if slack <= 0:
            raise ClarksonError(f"start point is not strictly interior (row {k})")
        rate = dot_coeffs(row, direction)
        if rate >= 0:
            continue
        lam = Fraction(slack) / -rate
        if best is not None and lam > best_lam:
            continue
        key = tuple(Fraction(a) / -rate for a in row[1:])
        if best is None or lam < best_lam or key < best_key:
            best, best_lam, best_key = k, lam, key
    if best is None:
        raise ClarksonError("ray never leaves the polyhedron")
    return best, best_lam


def ray_shoot(P: Polyhedron, interior: Sequence, target: Sequence, is_direction: bool = False) -> int:
    """Index of the first inequality of ``P`` hit moving from ``interior`` to ``target``."""
    idx = P.inequalities
    direction = target if is_direction else [t - p for t, p in zip(target, interior)]
    k, _ = ray_shoot_rows([P.rows[i] for i in idx], interior, direction)
    return idx[k]


def clarkson_rows(rows: Sequence[Sequence[int]], interior: Sequence
                  ) -> tuple[ClarksonState, dict[int, RowClass]]:
    """Run Clarkson's method on a full-dimensional, duplicate-free system."""
    st = ClarksonState(tuple(interior), pending=deque(range(len(rows))))
    classes: dict[int, RowClass] = {}
    d = len(rows[0]) - 1 if rows else 0
    in_E: set[int] = set()
    tied: list[int] = []
    while st.pending:
        i = st.pending.popleft()
        if i in in_E:
            continue
        while True:
            cons = [rows[k] for k in st.E]
            out = solve_int(cons, rows[i], maximize=False, d=d)
            st.lps += 1
            st.max_lp_size = max(st.max_lp_size, len(cons))
            if out.status == INFEASIBLE:
                raise ClarksonError("certified subsystem is infeasible")
            if out.status == OPTIMAL and out.value >= 0:
                verdict = Verdict.STRONGLY_REDUNDANT if out.value > 0 else Verdict.WEAKLY_REDUNDANT
                classes[i] = RowClass(verdict, out.point, False, out.value, None, 1, len(cons))
                break
            if out.status == OPTIMAL:
                direction = [t - p for t, p in zip(out.point, st.interior)]
            else:
                direction = out.direction
            k, lam = ray_shoot_rows(rows, st.interior, direction)
            if k in in_E:
                raise ClarksonError(f"row {k} certified twice")
            hit = tuple(p + lam * r for p, r in zip(st.interior, direction))
            st.E.append(k)
            in_E.add(k)
            st.certificates[k] = hit
            classes[k] = RowClass(Verdict.NON_REDUNDANT, hit, False, None, None, 0, 0)
            if any(j != k and evaluate(rows[j], hit) == 0 for j in range(len(rows))):
                tied.append(k)
            if k == i:
                break
    # a hit on a tie is tight on several rows and does not single out row k;
    # an LP over the final E gives a proper witness
    for k in tied:
        cons = [rows[j] for j in st.E if j != k]
        out = solve_int(cons, rows[k], maximize=False, d=d)
        st.lps += 1
        st.max_lp_size = max(st.max_lp_size, len(cons))
        if out.status == OPTIMAL:
            if out.value >= 0:
                raise ClarksonError(f"certified row {k} is redundant")
            classes[k] = RowClass(Verdict.NON_REDUNDANT, out.point, False, out.value, None, 1, len(cons))
        else:
            classes[k] = RowClass(Verdict.NON_REDUNDANT, out.direction, True, None, None, 1, len(cons))
    return st, classes


def clarkson_nonredundant(P: Polyhedron, interior: Sequence | None = None):
    """Clarkson redundancy removal for a full-dimensional, deduplicated ``P``.

    ``P`` must have no equations.  Returns a
    :class:`~polyred.minrep.MinRepReport` over ``P``'s row indices.
    """
    from .minrep import MinRepReport

    if P.linearity:
        raise ValueError("substitute equations before running Clarkson's method")
    idx = P.inequalities
    rows = [integer_row(P.rows[i]) for i in idx]
    if interior is None:
        t, interior = interior_rows(rows, P.d)
        if t <= 0:
            raise ClarksonError("polyhedron is not full-dimensional")
    st, classes = clarkson_rows(rows, interior)
    return MinRepReport(
        kind=P.kind, d=P.d,
        final_linearity=(),
        final_nonredundant=tuple(sorted(idx[k] for k in st.E)),
        classes={idx[k]: c for k, c in classes.items()},
        interior_point=tuple(interior),
        stats={"lps": st.lps, "max_lp_size": st.max_lp_size,
               "certified_order": [idx[k] for k in st.E]},
    )
