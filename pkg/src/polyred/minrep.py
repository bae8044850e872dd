"""Minimum representations that survive duplicates and hidden linearities.

Pipeline (row numbers always refer to the input polyhedron):

1. ingest: constant rows are settled, declared equations are reduced and
   substituted, and one Phase I LP rules out an empty polyhedron;
2. one interior-point LP decides whether any inequality is a hidden
   linearity; only if so, every inequality is classified (in parallel) with
   the linearity check switched on;
3. the surviving equations are reduced to an independent set and used to
   eliminate variables;
4. the remaining inequalities are gcd-normalised and deduplicated, which is
   only sound once the system is full-dimensional;
5. the inequalities whose verdict is still open are classified (in
   parallel) against the deduplicated system, or handed to Clarkson's
   method.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .classify import (EmptyPolyhedronError, RowClass, Verdict, classify_rows,
                       interior_rows)
from .clarkson import clarkson_rows
from .exact import (H, V, Polyhedron, Substitution, dedup_rows, dot_coeffs, evaluate,
                    gaussian_reduce, integer_row, is_zero_coeffs, make_row,
                    solve_consistent)
from .lp import INFEASIBLE, feasible_point
from .parallel import TaskBatch, map_rows

log = logging.getLogger(__name__)


@dataclass
class MinRepReport:
    kind: str
    d: int
    final_linearity: tuple = ()
    final_nonredundant: tuple = ()
    classes: dict = field(default_factory=dict)
    substitutions: list = field(default_factory=list)    # (equation row, eliminated variable)
    duplicate_of: dict = field(default_factory=dict)
    dependent: tuple = ()                                # equations dropped as linearly dependent
    feasible: bool = True
    certificate: dict | None = None                      # row -> multiplier, proves emptiness
    interior_point: tuple | None = None
    stats: dict = field(default_factory=dict)

    def partition(self, m: int) -> dict[str, set]:
        """Where every input row ended up."""
        parts = {
            "linearity": set(self.final_linearity),
            "nonredundant": set(self.final_nonredundant),
            "duplicate": set(self.duplicate_of),
            "dependent": set(self.dependent),
        }
        seen = set().union(*parts.values())
        parts["redundant"] = {i for i, c in self.classes.items()
                              if c.verdict.redundant and i not in seen}
        return parts

    def representation(self, P: Polyhedron) -> Polyhedron:
        """The kept rows of ``P``: equations first, then inequalities, each in input order."""
        order = list(self.final_linearity) + list(self.final_nonredundant)
        return Polyhedron(tuple(P.rows[i] for i in order),
                          frozenset(range(len(self.final_linearity))),
                          P.kind, P.name, P.d)


def v_to_internal(P: Polyhedron) -> Polyhedron:
    """Lift a V-representation to the homogeneous system ``delta*x0 + v.x >= 0``.

    Row ``i`` of the result is redundant (or a linearity) exactly when
    generator ``i`` is redundant (or a lineality direction).
    """
    if P.kind != V:
        raise ValueError("expected a V-representation")
    for k, r in enumerate(P.rows):
        if r[0] not in (0, 1):
            raise ValueError(f"V-row {k + 1}: leading entry must be 0 or 1")
    return Polyhedron(tuple((0,) + tuple(r) for r in P.rows), P.linearity, H, P.name, P.d + 1)


def _classify_task(shared, key):
    rows, check = shared
    return classify_rows(rows, key, check)


class _Stats:
    """LP counts.  ``max_lp_size`` covers the per-row redundancy LPs; the
    emptiness and interior-point LPs over the whole system count as setup."""

    def __init__(self):
        self.lps = 0
        self.max_lp_size = 0
        self.setup_max_lp_size = 0
        self.phase = {}

    def add(self, rc: RowClass):
        self.lps += rc.lps
        self.max_lp_size = max(self.max_lp_size, rc.max_lp_size)

    def setup(self, size: int):
        self.lps += 1
        self.setup_max_lp_size = max(self.setup_max_lp_size, size)

    def as_dict(self):
        return {"lps": self.lps, "max_lp_size": self.max_lp_size,
                "setup_max_lp_size": self.setup_max_lp_size, **self.phase}


def _classify_many(rows, positions, check, workers, stats) -> dict[int, RowClass]:
    batch = TaskBatch(positions, width=workers)
    out = map_rows(batch, _classify_task, (rows, check))
    for rc in out.values():
        stats.add(rc)
    return out


def _infeasible(P, cert, stats) -> MinRepReport:
    return MinRepReport(P.kind, P.d, feasible=False, certificate=cert, stats=stats.as_dict())


def _lift_class(rc: RowClass, sub: Substitution) -> RowClass:
    if rc.witness is None:
        return rc
    w = sub.lift_direction(rc.witness) if rc.witness_is_ray else sub.lift(rc.witness)
    return replace(rc, witness=w)


def _farkas_to_rows(P, lin, sub, idx, reduced, y) -> dict:
    """Turn a Farkas vector on reduced rows into multipliers on input rows."""
    cert: dict[int, Fraction] = {}
    for i, yk in zip(idx, y):
        if yk:
            applied = sub.apply(P.rows[i])
            j = next(k for k, x in enumerate(applied) if x)
            cert[i] = Fraction(yk) * Fraction(reduced[i][j]) / Fraction(applied[j])
    if lin:
        target = [-sum(c * P.rows[i][j] for i, c in cert.items()) for j in range(1, P.d + 1)]
        cols = [[P.rows[l][j] for l in lin] for j in range(1, P.d + 1)]
        lam = solve_consistent(cols, target)
        for l, c in zip(lin, lam):
            if c:
                cert[l] = c
    return {i: make_row([c])[0] for i, c in sorted(cert.items())}


def certificate_holds(P: Polyhedron, cert: dict) -> bool:
    """``cert`` combines rows (nonnegatively on inequalities) into ``c >= 0`` with ``c < 0``."""
    if not cert:
        return False
    for i, c in cert.items():
        if i not in P.linearity and c < 0:
            return False
    combo = [sum(c * P.rows[i][j] for i, c in cert.items()) for j in range(P.d + 1)]
    return all(x == 0 for x in combo[1:]) and combo[0] != 0 and (
        combo[0] < 0 or all(i in P.linearity for i in cert))


def minimum_representation(P: Polyhedron, workers: int = 1, *, find_linearities: bool = True,
                           clarkson: bool = False, debug_checks: bool = False) -> MinRepReport:
    """Minimum representation of ``P`` (H or V).

    ``find_linearities=False`` skips the hidden-linearity search (the
    ``redund`` mode, and F-M cleanup rounds whose input is known to have
    none).  ``clarkson=True`` replaces the final per-row LPs by Clarkson's
    method.  ``debug_checks`` asserts that the deduplicated system is
    full-dimensional.
    """
    if P.kind == V:
        rep = minimum_representation(v_to_internal(P), workers, find_linearities=find_linearities,
                                     clarkson=clarkson, debug_checks=debug_checks)
        rep.kind = V
        rep.d = P.d
        return rep

    stats = _Stats()
    classes: dict[int, RowClass] = {}
    dependent: list[int] = []

    ineq: list[int] = []
    for i in P.inequalities:
        r = P.rows[i]
        if is_zero_coeffs(r):
            if r[0] < 0:
                return _infeasible(P, {i: 1}, stats)
            v = Verdict.STRONGLY_REDUNDANT if r[0] > 0 else Verdict.WEAKLY_REDUNDANT
            classes[i] = RowClass(v, None, False, r[0])
        else:
            ineq.append(i)
    eqs: list[int] = []
    for i in P.equations:
        r = P.rows[i]
        if is_zero_coeffs(r):
            if r[0]:
                return _infeasible(P, {i: 1}, stats)
            dependent.append(i)
        else:
            eqs.append(i)

    g = gaussian_reduce([P.rows[i] for i in eqs])
    if g.inconsistent:
        k = g.inconsistent_row
        cert = {eqs[k]: 1, **{eqs[j]: -c for j, c in g.combination[k].items()}}
        cert = {i: make_row([c])[0] for i, c in sorted(cert.items()) if c}
        return _infeasible(P, cert, stats)
    dependent += [eqs[k] for k in g.dependent]
    lin = [eqs[k] for k in g.independent]

    def reduce_rows(lin, idx):
        sub = Substitution([P.rows[i] for i in lin], P.d, lin)
        return sub, {i: integer_row(sub.apply(P.rows[i])) for i in idx}

    sub, red = reduce_rows(lin, ineq)
    for i in list(ineq):
        r = red[i]
        if is_zero_coeffs(r):
            ineq.remove(i)
            if r[0] < 0:
                cert = _farkas_to_rows(P, lin, sub, [i], red, [1])
                return _infeasible(P, cert, stats)
            if r[0] > 0:
                classes[i] = RowClass(Verdict.STRONGLY_REDUNDANT, None, False, r[0])
            else:
                dependent.append(i)
    dr = len(sub.free)

    rows = [red[i] for i in ineq]
    out = feasible_point(rows, dr)
    stats.setup(len(rows))
    if out.status == INFEASIBLE:
        return _infeasible(P, _farkas_to_rows(P, lin, sub, ineq, red, out.farkas), stats)

    W: list[int] = []
    N: list[int] = []
    interior = None
    if find_linearities or clarkson:
        t, y = interior_rows(rows, dr)
        stats.setup(len(rows) + 1)
        full = t > 0
        if full:
            interior = y
    else:
        full = True
    stats.phase["hidden_linearities"] = not full

    if full:
        W = list(ineq)
    else:
        res = _classify_many(rows, list(range(len(rows))), True, workers, stats)
        newlin = []
        for pos, rc in res.items():
            i = ineq[pos]
            classes[i] = _lift_class(rc, sub)
            if rc.verdict == Verdict.LINEARITY:
                newlin.append(i)
            elif rc.verdict == Verdict.WEAKLY_REDUNDANT:
                W.append(i)
            elif rc.verdict == Verdict.NON_REDUNDANT:
                N.append(i)
        allin = sorted(lin + newlin)
        g2 = gaussian_reduce([P.rows[i] for i in allin])
        dependent += [allin[k] for k in g2.dependent]
        lin = [allin[k] for k in g2.independent]
        sub, red = reduce_rows(lin, W + N)

    cand = sorted(W + N)
    for i in list(cand):
        if is_zero_coeffs(red[i]):       # cannot happen after a correct linearity search
            cand.remove(i)
            W.remove(i) if i in W else N.remove(i)
            if red[i][0] > 0:
                classes[i] = RowClass(Verdict.STRONGLY_REDUNDANT, None, False, red[i][0])
            else:
                dependent.append(i)
    J, duplicate_of = dedup_rows([red[i] for i in cand], cand)
    for i in duplicate_of:
        classes.pop(i, None)
    Jrows = [red[i] for i in J]
    dr = len(sub.free)
    stats.phase["deduplicated_rows"] = len(J)

    if debug_checks or (clarkson and (interior is None or not full)):
        t, y = interior_rows(Jrows, dr)
        stats.setup(len(Jrows) + 1)
        if debug_checks and not t > 0:
            raise AssertionError("reduced system is not full-dimensional")
        interior = y

    nonred = set(N)
    Wset = set(W)
    if clarkson:
        st, cres = clarkson_rows(Jrows, interior)
        stats.lps += st.lps
        stats.max_lp_size = max(stats.max_lp_size, st.max_lp_size)
        stats.phase["clarkson_max_lp_size"] = st.max_lp_size
        for pos, rc in cres.items():
            classes[J[pos]] = _lift_class(rc, sub)
        nonred = {J[k] for k in st.E}
    else:
        targets = [k for k, i in enumerate(J) if i in Wset]
        res = _classify_many(Jrows, targets, False, workers, stats)
        for pos, rc in res.items():
            i = J[pos]
            classes[i] = _lift_class(rc, sub)
            if rc.verdict == Verdict.NON_REDUNDANT:
                nonred.add(i)

    return MinRepReport(
        kind=P.kind, d=P.d,
        final_linearity=tuple(lin),
        final_nonredundant=tuple(sorted(nonred)),
        classes=classes,
        substitutions=list(sub.pairs),
        duplicate_of=duplicate_of,
        dependent=tuple(sorted(dependent)),
        interior_point=sub.lift(interior) if interior is not None else None,
        stats=stats.as_dict(),
    )


def redundancy_removal(P: Polyhedron, workers: int = 1, **kw) -> MinRepReport:
    """Drop redundant rows without searching for hidden linearities."""
    return minimum_representation(P, workers, find_linearities=False, **kw)


def verify_report(P: Polyhedron, report: MinRepReport) -> list[str]:
    """Check every stored witness by substitution; returns a list of problems."""
    if P.kind == V:
        P = v_to_internal(P)
    problems: list[str] = []
    if not report.feasible:
        if not certificate_holds(P, report.certificate or {}):
            problems.append("emptiness certificate does not hold")
        return problems
    parts = report.partition(P.m)
    counted = sum(len(s) for s in parts.values())
    covered = set().union(*parts.values())
    if counted != len(covered) or covered != set(range(P.m)):
        problems.append("rows are not partitioned by the report")
    eqs = [P.rows[i] for i in report.final_linearity]
    kept = list(report.final_nonredundant)
    for i in kept:
        rc = report.classes.get(i)
        if rc is None or rc.witness is None:
            continue
        w = rc.witness
        others = [P.rows[k] for k in kept if k != i]
        if rc.witness_is_ray:
            ok = (dot_coeffs(P.rows[i], w) < 0
                  and all(dot_coeffs(r, w) >= 0 for r in others)
                  and all(dot_coeffs(e, w) == 0 for e in eqs))
        else:
            vi = evaluate(P.rows[i], w)
            on_eq = all(evaluate(e, w) == 0 for e in eqs)
            vals = [evaluate(r, w) for r in others]
            ok = on_eq and ((vi < 0 and all(v >= 0 for v in vals))
                            or (vi == 0 and all(v > 0 for v in vals)))
        if not ok:
            problems.append(f"row {i + 1}: non-redundancy witness fails")
    for i, rc in report.classes.items():
        if rc.verdict.redundant and rc.witness is not None and rc.z_min is not None:
            if evaluate(P.rows[i], rc.witness) != rc.z_min and i not in report.final_nonredundant:
                # values are in scaled rows; only the sign is meaningful
                v = evaluate(P.rows[i], rc.witness)
                if (v > 0) != (rc.z_min > 0) or (v == 0) != (rc.z_min == 0):
                    problems.append(f"row {i + 1}: redundancy witness sign mismatch")
    return problems
