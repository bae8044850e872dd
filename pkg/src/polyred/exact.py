"""Exact rational rows, polyhedra, elimination and row canonicalisation.

A row is a tuple ``(b, a_1, ..., a_d)`` meaning ``b + a.x >= 0`` (or ``= 0``
for rows in the linearity set).  Entries are ``int`` or ``Fraction``; both
compare and hash consistently, so callers never need to care which.

Row and column indices are 0-based in the library.  Variable ``x_j`` lives in
row slot ``j + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Row = tuple  # (b, a_1, ..., a_d) of int | Fraction

H = "H"
V = "V"


class PolyhedronError(ValueError):
    """Structurally invalid polyhedron input."""


def as_rational(x) -> Fraction | int:
    if isinstance(x, int):
        return x
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


def make_row(values: Iterable) -> Row:
    return tuple(as_rational(v) for v in values)


def is_zero_row(row: Sequence) -> bool:
    return not any(row)


def is_zero_coeffs(row: Sequence) -> bool:
    return not any(row[1:])


@dataclass(frozen=True)
class Polyhedron:
    """An H- or V-representation with an explicit linearity set.

    For ``kind == "H"`` row ``i`` is ``b_i + A_i x >= 0`` (``= 0`` if
    ``i in linearity``).  For ``kind == "V"`` row ``i`` is ``(delta, v)`` with
    ``delta`` 1 for a vertex, 0 for a ray; linearity rows are lineality
    directions.
    """

    rows: tuple
    linearity: frozenset = frozenset()
    kind: str = H
    name: str | None = None
    dim: int | None = None

    def __post_init__(self):
        rows = tuple(make_row(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "linearity", frozenset(self.linearity))
        if self.kind not in (H, V):
            raise PolyhedronError(f"unknown representation kind {self.kind!r}")
        if self.dim is None:
            if not rows:
                raise PolyhedronError("cannot infer dimension of an empty row list")
            object.__setattr__(self, "dim", len(rows[0]) - 1)
        if self.dim < 0:
            raise PolyhedronError("dimension must be non-negative")
        for k, r in enumerate(rows):
            if len(r) != self.dim + 1:
                raise PolyhedronError(
                    f"row {k + 1} has {len(r)} entries, expected {self.dim + 1}")
        for i in self.linearity:
            if not 0 <= i < len(rows):
                raise PolyhedronError(f"linearity index {i + 1} out of range")
        if self.kind == V:
            for k, r in enumerate(rows):
                if r[0] not in (0, 1):
                    raise PolyhedronError(
                        f"V-row {k + 1}: leading entry must be 0 or 1, got {r[0]}")

    @property
    def d(self) -> int:
        return self.dim

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def inequalities(self) -> list[int]:
        return [i for i in range(len(self.rows)) if i not in self.linearity]

    @property
    def equations(self) -> list[int]:
        return sorted(self.linearity)

    def subset(self, indices: Iterable[int], linearity: Iterable[int] = ()) -> Polyhedron:
        """Rows ``indices`` (in that order); ``linearity`` given as original indices."""
        indices = list(indices)
        lin = set(linearity)
        pos = {i: k for k, i in enumerate(indices)}
        return Polyhedron(tuple(self.rows[i] for i in indices),
                          frozenset(pos[i] for i in lin if i in pos),
                          self.kind, self.name, self.dim)

    def without(self, i: int) -> Polyhedron:
        keep = [k for k in range(self.m) if k != i]
        return self.subset(keep, self.linearity)

    def contains(self, x: Sequence) -> bool:
        """Membership test by direct substitution (H only)."""
        for k, r in enumerate(self.rows):
            v = evaluate(r, x)
            if k in self.linearity:
                if v != 0:
                    return False
            elif v < 0:
                return False
        return True


def evaluate(row: Sequence, x: Sequence) -> Fraction | int:
    """``b + a.x``."""
    return row[0] + sum(a * xi for a, xi in zip(row[1:], x))


def dot_coeffs(row: Sequence, r: Sequence) -> Fraction | int:
    """``a.r`` (ignores the constant term)."""
    return sum(a * ri for a, ri in zip(row[1:], r))


def integer_row(row: Sequence) -> tuple[int, ...]:
    """Positive multiple of ``row`` with integer entries and content 1.

    The all-zero row maps to itself.
    """
    den = 1
    for x in row:
        if not isinstance(x, int):
            den = lcm(den, x.denominator)
    if den == 1:
        ints = [int(x) for x in row]
    else:
        ints = [int(x * den) for x in row]
    g = gcd(*ints)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def gcd_normalize(row: Sequence) -> tuple[int, ...]:
    """Scale an inequality row by a positive rational to a primitive integer row.

    Sign is preserved: inequalities may only be multiplied by positive scalars.
    """
    if is_zero_row(row):
        raise ValueError("gcd_normalize: all-zero row")
    return integer_row(row)


def normalize_equation(row: Sequence) -> tuple[int, ...]:
    """Like :func:`gcd_normalize`, then make the first nonzero entry positive."""
    r = gcd_normalize(row)
    for x in r:
        if x:
            return r if x > 0 else tuple(-y for y in r)
    return r


def dedup_rows(rows: Sequence[Sequence], indices: Sequence[int] | None = None
               ) -> tuple[list[int], dict[int, int]]:
    """Collapse identical (already normalised) rows.

    Returns ``(kept, duplicate_of)``.  Each class keeps its smallest index.
    ``indices`` optionally relabels the rows (default ``0..len(rows)-1``).
    """
    if indices is None:
        indices = range(len(rows))
    order = sorted(zip(map(tuple, rows), indices))
    kept: list[int] = []
    duplicate_of: dict[int, int] = {}
    prev = None
    rep = None
    for r, i in order:
        if r == prev:
            duplicate_of[i] = rep
        else:
            prev, rep = r, i
            kept.append(i)
    kept.sort()
    return kept, duplicate_of


@dataclass
class GaussResult:
    independent: list[int]
    dependent: list[int]
    pivots: list[tuple[int, int]]        # (row index, variable index)
    inconsistent: bool = False
    inconsistent_row: int | None = None
    # dependent (or inconsistent) row -> {independent row: coefficient}
    combination: dict[int, dict[int, Fraction]] = field(default_factory=dict)


def gaussian_reduce(rows: Sequence[Sequence]) -> GaussResult:
    """Greedy independent subset of equation rows, in input order.

    Elimination runs on the variable columns; a row whose coefficients vanish
    is dependent if its constant vanishes too, otherwise the system reads
    ``0 = c`` and ``inconsistent`` is set (the scan continues).
    """
    basis: list[tuple[list, dict[int, Fraction], int]] = []  # (reduced row, combo, pivot var)
    res = GaussResult([], [], [])
    for k, row in enumerate(rows):
        r = [Fraction(x) for x in row]
        combo: dict[int, Fraction] = {k: Fraction(1)}
        for br, bcombo, p in basis:
            f = r[p + 1]
            if f:
                f = f / br[p + 1]
                r = [x - f * y for x, y in zip(r, br)]
                for j, c in bcombo.items():
                    combo[j] = combo.get(j, 0) - f * c
        piv = next((j for j in range(1, len(r)) if r[j]), None)
        if piv is None:
            # row - sum(...) = (c, 0, ..., 0): row = -sum(combo of others)
            expr = {j: -c for j, c in combo.items() if j != k and c}
            res.combination[k] = expr
            if r[0]:
                if not res.inconsistent:
                    res.inconsistent = True
                    res.inconsistent_row = k
            else:
                res.dependent.append(k)
            continue
        res.independent.append(k)
        res.pivots.append((k, piv - 1))
        basis.append((r, combo, piv - 1))
    return res


class Substitution:
    """Eliminate variables using independent equations.

    Equation ``k`` (after substituting earlier ones) eliminates its
    smallest-index variable with nonzero coefficient.
    """

    def __init__(self, equations: Sequence[Sequence], d: int,
                 labels: Sequence[int] | None = None):
        self.d = d
        self.labels = list(labels) if labels is not None else list(range(len(equations)))
        # eliminated var -> expression row (const, coeff per var) with zero on eliminated vars
        self.expr: dict[int, list[Fraction]] = {}
        self.pairs: list[tuple[int, int]] = []
        for lab, eq in zip(self.labels, equations):
            r = self._substitute(eq)
            v = next((j for j in range(d) if r[j + 1]), None)
            if v is None:
                raise ValueError(f"equation {lab} is dependent or inconsistent")
            c = r[v + 1]
            # c x_v + rest = 0  ->  x_v = -(rest)/c
            e = [-x / c for x in r]
            e[v + 1] = Fraction(0)
            for u, ex in self.expr.items():
                f = ex[v + 1]
                if f:
                    self.expr[u] = [a + f * b for a, b in zip(ex, e)]
                    self.expr[u][v + 1] = Fraction(0)
            self.expr[v] = e
            self.pairs.append((lab, v))
        self.free = [j for j in range(d) if j not in self.expr]

    def _substitute(self, row: Sequence) -> list[Fraction]:
        r = [Fraction(x) for x in row]
        for v, e in self.expr.items():
            f = r[v + 1]
            if f:
                r = [a + f * b for a, b in zip(r, e)]
                r[v + 1] = Fraction(0)
        return r

    def apply(self, row: Sequence) -> Row:
        """Row restricted to the free variables."""
        r = self._substitute(row)
        return make_row([r[0]] + [r[j + 1] for j in self.free])

    def lift(self, y: Sequence) -> tuple:
        """Full point from free-variable values."""
        x = [Fraction(0)] * self.d
        for j, v in zip(self.free, y):
            x[j] = Fraction(v)
        for v, e in self.expr.items():
            x[v] = evaluate(e, x)
        return make_row(x)

    def lift_direction(self, r: Sequence) -> tuple:
        x = [Fraction(0)] * self.d
        for j, v in zip(self.free, r):
            x[j] = Fraction(v)
        for v, e in self.expr.items():
            x[v] = dot_coeffs(e, x)
        return make_row(x)


def solve_square(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Solve ``M y = rhs`` exactly; ``None`` if ``M`` is singular."""
    n = len(matrix)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return None
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / piv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def solve_consistent(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Some solution of an (over/under-determined) system ``rows . y = rhs``."""
    ncol = len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivcols = []
    r = 0
    for c in range(ncol):
        p = next((k for k in range(r, len(a)) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for k in range(len(a)):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivcols.append(c)
        r += 1
    if any(a[k][ncol] for k in range(r, len(a))):
        return None
    y = [Fraction(0)] * ncol
    for k, c in enumerate(pivcols):
        y[c] = a[k][ncol]
    return y


def nullspace(rows: Sequence[Sequence], ncol: int) -> list[list[Fraction]]:
    """Basis of ``{y : rows . y = 0}`` (vectors of length ``ncol``)."""
    a = [[Fraction(x) for x in row] for row in rows]
    pivcols: list[int] = []
    r = 0
    for c in range(ncol):
        p = next((k for k in range(r, len(a)) if a[k][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for k in range(len(a)):
            if k != r and a[k][c]:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivcols.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(ncol) if c not in pivcols):
        y = [Fraction(0)] * ncol
        y[fc] = Fraction(1)
        for k, c in enumerate(pivcols):
            y[c] = -a[k][fc]
        basis.append(y)
    return basis


def rank(rows: Sequence[Sequence], ncol: int) -> int:
    return ncol - len(nullspace(rows, ncol)) if rows else 0


def canonical_form(P: Polyhedron) -> tuple[tuple, tuple]:
    """Representation-independent key for comparing H-representations.

    Equations are brought to reduced row echelon form (pivots on variable
    columns); inequalities are reduced modulo the equations and
    gcd-normalised.  Two minimum representations of the same polyhedron give
    the same key.
    """
    eqs = [[Fraction(x) for x in P.rows[i]] for i in P.equations]
    ech: list[list[Fraction]] = []
    pivs: list[int] = []
    for r in eqs:
        for e, p in zip(ech, pivs):
            if r[p]:
                f = r[p]
                r = [x - f * y for x, y in zip(r, e)]
        p = next((j for j in range(1, len(r)) if r[j]), None)
        if p is None:
            continue
        r = [x / r[p] for x in r]
        for k, e in enumerate(ech):
            if e[p]:
                f = e[p]
                ech[k] = [x - f * y for x, y in zip(e, r)]
        ech.append(r)
        pivs.append(p)
    order = sorted(range(len(ech)), key=lambda k: pivs[k])
    eq_key = tuple(tuple(as_rational(x) for x in ech[k]) for k in order)
    ineqs = set()
    for i in P.inequalities:
        r = [Fraction(x) for x in P.rows[i]]
        for e, p in zip(ech, pivs):
            if r[p]:
                f = r[p]
                r = [x - f * y for x, y in zip(r, e)]
        if is_zero_coeffs(r) and r[0] >= 0:
            continue
        ineqs.add(gcd_normalize(r))
    return eq_key, tuple(sorted(ineqs))
