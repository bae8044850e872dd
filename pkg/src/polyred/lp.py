"""Exact simplex over integer dictionaries.

Problems have the form ``opt b0 + c.x  s.t.  b_i + A_i x >= 0`` with ``x``
free.  Each dictionary row keeps integer numerators over its own positive
denominator and is reduced by its content after every update, so no
fractions are built during pivoting.

The free variables are pivoted into the basis first and never leave it;
Phase I uses one auxiliary variable; Bland's least-index rule is used for
both phases.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact import evaluate, dot_coeffs, integer_row, make_row

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


class Sense(str, Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class LPProblem:
    objective: tuple          # (b0, c_1..c_d)
    constraints: tuple        # rows (b_i, A_i) meaning b_i + A_i x >= 0
    sense: Sense = Sense.MIN

    def __post_init__(self):
        object.__setattr__(self, "objective", make_row(self.objective))
        object.__setattr__(self, "constraints",
                           tuple(make_row(r) for r in self.constraints))
        d = len(self.objective) - 1
        for r in self.constraints:
            if len(r) != d + 1:
                raise ValueError("constraint length does not match objective")

    @property
    def d(self) -> int:
        return len(self.objective) - 1


@dataclass(frozen=True)
class LPOutcome:
    status: str
    value: Fraction | int | None = None
    point: tuple | None = None
    direction: tuple | None = None
    farkas: tuple | None = None       # y >= 0, y.A = 0, y.b < 0 (infeasible only)
    pivots: int = 0
    size: int = 0                     # number of constraints


def solve(p: LPProblem) -> LPOutcome:
    cons = []
    scale = []
    for r in p.constraints:
        ir = integer_row(r)
        cons.append(ir)
        k = next((j for j, x in enumerate(r) if x), None)
        scale.append(Fraction(ir[k]) / Fraction(r[k]) if k is not None else Fraction(1))
    obj = integer_row(p.objective)
    k = next((j for j, x in enumerate(p.objective) if x), None)
    beta = Fraction(obj[k]) / Fraction(p.objective[k]) if k is not None else Fraction(1)
    out = solve_int(cons, obj, maximize=p.sense == Sense.MAX, d=p.d)
    if out.status == OPTIMAL:
        return LPOutcome(OPTIMAL, _num(Fraction(out.value) / beta), out.point,
                         pivots=out.pivots, size=out.size)
    if out.status == INFEASIBLE:
        y = make_row(yk * s for yk, s in zip(out.farkas, scale))
        return LPOutcome(INFEASIBLE, farkas=y, pivots=out.pivots, size=out.size)
    return out


def _num(q: Fraction):
    return q.numerator if q.denominator == 1 else q


def verify(p: LPProblem, out: LPOutcome) -> bool:
    """Check the certificate carried by ``out`` by direct substitution."""
    sign = 1 if p.sense == Sense.MAX else -1
    if out.status == OPTIMAL:
        if out.point is None or len(out.point) != p.d:
            return False
        if any(evaluate(r, out.point) < 0 for r in p.constraints):
            return False
        return evaluate(p.objective, out.point) == out.value
    if out.status == UNBOUNDED:
        r = out.direction
        if r is None or len(r) != p.d:
            return False
        if any(dot_coeffs(c, r) < 0 for c in p.constraints):
            return False
        return sign * dot_coeffs(p.objective, r) > 0
    if out.status == INFEASIBLE:
        y = out.farkas
        if y is None or len(y) != len(p.constraints) or any(v < 0 for v in y):
            return False
        for j in range(p.d + 1):
            s = sum(v * c[j] for v, c in zip(y, p.constraints))
            if j == 0:
                if s >= 0:
                    return False
            elif s != 0:
                return False
        return True
    return False


def feasible_point(rows: Sequence[Sequence[int]], d: int) -> LPOutcome:
    """Phase I only: some point of ``{x : rows >= 0}`` or a Farkas certificate."""
    return solve_int(rows, (0,) * (d + 1), maximize=True, d=d)


def solve_int(cons: Sequence[Sequence[int]], obj: Sequence[int], maximize: bool,
              d: int | None = None) -> LPOutcome:
    """Core solver on integer rows; values are exact rationals.

    Witnesses are in the caller's coordinates; the Farkas vector is for the
    integer rows as given.
    """
    if d is None:
        d = len(obj) - 1
    sgn = 1 if maximize else -1
    return _Dictionary(cons, [sgn * c for c in obj], d).run(sgn)


class _Dictionary:
    # variable ids: slacks 0..m-1, decision x_j -> m + j, auxiliary -> -1
    AUX = -1

    def __init__(self, cons, obj, d):
        self.m = m = len(cons)
        self.d = d
        self.T = [list(r) for r in cons]
        self.D = [1] * m
        self.basic = list(range(m))
        self.nonbasic = [m + j for j in range(d)]
        self.obj = list(obj)
        self.dobj = 1
        self.aux = None
        self.daux = 1
        self.dead: set[int] = set()          # columns of decision vars absent from every slack row
        self.free_row: dict[int, int] = {}   # decision var j -> row index
        self.pivots = 0

    def _pivot(self, r: int, s: int) -> None:
        T, D = self.T, self.D
        pr = T[r]
        p = pr[s + 1]
        new = [-x for x in pr]
        new[s + 1] = D[r]
        den = p
        if den < 0:
            new = [-x for x in new]
            den = -den
        g = gcd(den, *new)
        if g > 1:
            new = [x // g for x in new]
            den //= g
        T[r] = new
        D[r] = den
        c = s + 1
        nc = new[c]
        for k, row in enumerate(T):
            if k == r:
                continue
            f = row[c]
            if not f:
                continue
            nr = [a * den + f * b for a, b in zip(row, new)]
            nr[c] = f * nc
            dk = D[k] * den
            g = gcd(dk, *nr)
            if g > 1:
                nr = [x // g for x in nr]
                dk //= g
            T[k] = nr
            D[k] = dk
        self.obj, self.dobj = self._update(self.obj, self.dobj, new, den, c, nc)
        if self.aux is not None:
            self.aux, self.daux = self._update(self.aux, self.daux, new, den, c, nc)
        self.basic[r], self.nonbasic[s] = self.nonbasic[s], self.basic[r]
        self.pivots += 1

    @staticmethod
    def _update(row, drow, new, den, c, nc):
        f = row[c]
        if not f:
            return row, drow
        nr = [a * den + f * b for a, b in zip(row, new)]
        nr[c] = f * nc
        dk = drow * den
        g = gcd(dk, *nr)
        if g > 1:
            nr = [x // g for x in nr]
            dk //= g
        return nr, dk

    def _constrained(self, k: int) -> bool:
        return self.basic[k] < self.m

    def _ratio_row(self, s: int) -> int | None:
        """Bland ratio test for entering column ``s``."""
        best = None
        bn = bd = 0
        c = s + 1
        for k, row in enumerate(self.T):
            if not self._constrained(k):
                continue
            a = row[c]
            if a >= 0:
                continue
            # ratio row[0] / -a
            if best is None:
                best, bn, bd = k, row[0], -a
                continue
            lhs = row[0] * bd
            rhs = bn * -a
            if lhs < rhs or (lhs == rhs and self.basic[k] < self.basic[best]):
                best, bn, bd = k, row[0], -a
        return best

    def _entering(self, objrow) -> int | None:
        best = None
        for s, v in enumerate(self.nonbasic):
            if s in self.dead or objrow[s + 1] <= 0:
                continue
            if best is None or v < self.nonbasic[best]:
                best = s
        return best

    def _drive_in_free(self) -> None:
        m = self.m
        for j in range(self.d):
            s = self.nonbasic.index(m + j)
            best = None
            for k, row in enumerate(self.T):
                if self.basic[k] < m and row[s + 1]:
                    if best is None or self.basic[k] < self.basic[best]:
                        best = k
            if best is None:
                self.dead.add(s)
            else:
                self._pivot(best, s)
                self.free_row[j] = best

    def _phase_one(self) -> bool:
        neg = [k for k, row in enumerate(self.T) if self._constrained(k) and row[0] < 0]
        if not neg:
            return True
        # add x0 with coefficient +1 to every constrained row
        for k, row in enumerate(self.T):
            row.append(self.D[k] if self._constrained(k) else 0)
        self.obj.append(0)
        n = len(self.nonbasic)
        self.aux = [0] * (n + 1) + [-1]
        self.daux = 1
        self.nonbasic.append(self.AUX)
        s = n
        r = None
        for k in neg:
            if r is None:
                r = k
                continue
            a = self.T[k][0] * self.D[r]
            b = self.T[r][0] * self.D[k]
            if a < b or (a == b and self.basic[k] < self.basic[r]):
                r = k
        self._pivot(r, s)
        while True:
            s = self._entering(self.aux)
            if s is None:
                break
            r = self._ratio_row(s)
            self._pivot(r, s)
        if self.aux[0] < 0:
            return False
        if self.AUX in self.basic:
            k = self.basic.index(self.AUX)
            row = self.T[k]
            cand = [s for s in range(len(self.nonbasic))
                    if s not in self.dead and row[s + 1]]
            if cand:
                self._pivot(k, min(cand, key=lambda s: self.nonbasic[s]))
            else:
                del self.T[k], self.D[k], self.basic[k]
                for j, fr in self.free_row.items():
                    if fr > k:
                        self.free_row[j] = fr - 1
        s = self.nonbasic.index(self.AUX)
        for row in self.T:
            del row[s + 1]
        del self.obj[s + 1]
        del self.nonbasic[s]
        self.dead = {c - 1 if c > s else c for c in self.dead}
        return True

    def _farkas(self) -> tuple:
        y = [0] * self.m
        for s, v in enumerate(self.nonbasic):
            if 0 <= v < self.m:
                c = self.aux[s + 1]
                if c:
                    y[v] = _num(Fraction(-c, self.daux))
        return tuple(y)

    def _direction(self, s: int) -> tuple:
        r = [0] * self.d
        col_var = self.nonbasic[s]
        for j in range(self.d):
            if j in self.free_row:
                k = self.free_row[j]
                r[j] = _num(Fraction(self.T[k][s + 1], self.D[k]))
        if col_var >= self.m:
            r[col_var - self.m] = 1
        return tuple(r)

    def _point(self) -> tuple:
        x = [0] * self.d
        for j, k in self.free_row.items():
            x[j] = _num(Fraction(self.T[k][0], self.D[k]))
        return tuple(x)

    def run(self, sgn: int) -> LPOutcome:
        m = self.m
        self._drive_in_free()
        aux_dead = set(self.dead)
        if not self._phase_one():
            return LPOutcome(INFEASIBLE, farkas=self._farkas(),
                             pivots=self.pivots, size=m)
        self.aux = None
        for s in sorted(self.dead):
            c = self.obj[s + 1]
            if c:
                r = list(self._direction(s))
                if c < 0:
                    r = [-x for x in r]
                return LPOutcome(UNBOUNDED, direction=tuple(_num(Fraction(x)) for x in r),
                                 pivots=self.pivots, size=m)
        del aux_dead
        while True:
            s = self._entering(self.obj)
            if s is None:
                value = Fraction(self.obj[0], self.dobj) * sgn
                return LPOutcome(OPTIMAL, _num(value), self._point(),
                                 pivots=self.pivots, size=m)
            r = self._ratio_row(s)
            if r is None:
                return LPOutcome(UNBOUNDED, direction=self._direction(s),
                                 pivots=self.pivots, size=m)
            self._pivot(r, s)
