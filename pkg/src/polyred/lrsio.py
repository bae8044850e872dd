"""Reader and writer for lrslib ``.ine`` / ``.ext`` files.

::

    name
    H-representation            (or V-representation; H if absent)
    linearity k i1 ... ik       (optional, 1-based rows)
    begin
    m n rational                (n = d + 1; "integer" accepted, m may be ***)
    b a1 ... ad                 (m lines; V rows are  delta v1 ... vd)
    end
    redund | minrep | eliminate k j1 .. jk | project k j1 .. jk | ...

Lines starting with ``*`` are comments.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import H, V, Polyhedron, PolyhedronError, gcd_normalize, is_zero_row, normalize_equation

log = logging.getLogger(__name__)

_SIZE_UNKNOWN = re.compile(r"\*\*\*\s+\d+(\s|$)")   # "*** n rational": row count left open

KNOWN_OPTIONS = {"redund", "minrep", "testlin", "eliminate", "project", "debug", "verbose"}


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


@dataclass
class Job:
    verb: str | None = None
    eliminate: list[int] | None = None       # 1-based variable numbers
    project: list[int] | None = None
    options: dict = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def parse_rational(tok: str, line: int | None = None) -> Fraction | int:
    p, _, q = tok.partition("/")
    try:
        num, den = int(p), int(q) if q else 1
    except ValueError:
        raise ParseError(f"not a rational number: {tok!r}", line) from None
    if den == 0:
        raise ParseError(f"zero denominator in {tok!r}", line)
    if den < 0:
        raise ParseError(f"negative denominator in {tok!r}", line)
    x = Fraction(num, den)
    return x.numerator if den == 1 or x.denominator == 1 else x


def _int_list(toks: Sequence[str], line: int, what: str) -> list[int]:
    try:
        vals = [int(t) for t in toks]
    except ValueError:
        raise ParseError(f"{what}: expected integers, got {' '.join(toks)!r}", line) from None
    if not vals or vals[0] != len(vals) - 1:
        raise ParseError(f"{what}: count {vals[0] if vals else '?'} does not match "
                         f"{len(vals) - 1} indices", line)
    return vals[1:]


def parse_job(text: str) -> tuple[Polyhedron, Job]:
    """Parse a file into the polyhedron and the job requested by its option lines."""
    lines = [(k + 1, ln.strip()) for k, ln in enumerate(text.splitlines())]
    lines = [(k, ln) for k, ln in lines if ln and (not ln.startswith("*") or _SIZE_UNKNOWN.match(ln))]
    name = None
    kind = H
    lin_decl: list[int] = []
    lin_line = None
    pos = 0
    while pos < len(lines) and lines[pos][1].split()[0] != "begin":
        k, ln = lines[pos]
        toks = ln.split()
        if ln == "H-representation":
            kind = H
        elif ln == "V-representation":
            kind = V
        elif toks[0] == "linearity":
            lin_decl = _int_list(toks[1:], k, "linearity")
            lin_line = k
        elif name is None and pos == 0:
            name = ln
        else:
            log.warning("line %d: ignoring %r before begin", k, ln)
        pos += 1
    if pos == len(lines):
        raise ParseError("missing 'begin'")
    pos += 1
    if pos == len(lines):
        raise ParseError("missing size line after 'begin'")
    k, ln = lines[pos]
    toks = ln.split()
    if len(toks) < 2:
        raise ParseError("size line must read 'm n rational'", k)
    if len(toks) > 2 and toks[2] not in ("rational", "integer"):
        raise ParseError(f"unsupported number type {toks[2]!r}", k)
    try:
        m = None if toks[0] == "***" else int(toks[0])
        n = int(toks[1])
    except ValueError:
        raise ParseError("size line must read 'm n rational'", k) from None
    if n < 1 or (m is not None and m < 0):
        raise ParseError(f"bad size {toks[0]} {toks[1]}", k)
    pos += 1
    rows = []
    while pos < len(lines) and lines[pos][1] != "end":
        k, ln = lines[pos]
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", k)
        rows.append(tuple(parse_rational(t, k) for t in toks))
        pos += 1
    if pos == len(lines):
        raise ParseError("missing 'end'")
    if m is not None and len(rows) != m:
        raise ParseError(f"declared {m} rows, found {len(rows)}", lines[pos][0])
    for i in lin_decl:
        if not 1 <= i <= len(rows):
            raise ParseError(f"linearity index {i} out of range 1..{len(rows)}", lin_line)
    job = Job()
    for k, ln in lines[pos + 1:]:
        toks = ln.split()
        opt = toks[0]
        if opt in ("eliminate", "project"):
            cols = _int_list(toks[1:], k, opt)
            for j in cols:
                if not 1 <= j <= n - 1:
                    raise ParseError(f"{opt}: column {j} out of range 1..{n - 1}", k)
            setattr(job, opt, cols)
            job.verb = job.verb or "fel"
        elif opt in ("redund", "minrep"):
            job.verb = opt
            job.options[opt] = toks[1:]
        elif opt in KNOWN_OPTIONS:
            job.options[opt] = toks[1:]
        else:
            msg = f"line {k}: unsupported option {opt!r} ignored"
            job.warnings.append(msg)
            log.warning(msg)
    try:
        P = Polyhedron(tuple(rows), frozenset(i - 1 for i in lin_decl), kind, name, n - 1)
    except PolyhedronError as exc:
        raise ParseError(str(exc)) from None
    return P, job


def parse(text: str) -> Polyhedron:
    return parse_job(text)[0]


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def normalized_rows(P: Polyhedron) -> list[tuple]:
    """Rows as written: gcd-normalised; vertices of a V-file keep their leading 1."""
    out = []
    for i, r in enumerate(P.rows):
        if is_zero_row(r) or (P.kind == V and r[0] == 1):
            out.append(r)
        elif i in P.linearity and P.kind == H:
            out.append(normalize_equation(r))
        else:
            out.append(gcd_normalize(r))
    return out


def emit(P: Polyhedron, report=None, comments: Sequence[str] = (), source: Polyhedron | None = None) -> str:
    """Write ``P`` in lrs format, linearity rows first.

    With a report (about ``source``), a comment block lists the verdict of
    every input row and the input row behind each output row.
    """
    lines = []
    if P.name:
        lines.append(P.name)
    for c in comments:
        lines.append(f"* {c}")
    if report is not None:
        lines.extend(f"* {c}" for c in report_comments(report, source))
    lin = sorted(P.linearity)
    order = lin + [i for i in range(P.m) if i not in P.linearity]
    lines.append("H-representation" if P.kind == H else "V-representation")
    if lin:
        lines.append(f"linearity {len(lin)} " + " ".join(str(k) for k in range(1, len(lin) + 1)))
    lines.append("begin")
    lines.append(f"{P.m} {P.d + 1} rational")
    norm = normalized_rows(P)
    for i in order:
        lines.append(" ".join(format_rational(x) for x in norm[i]))
    lines.append("end")
    return "\n".join(lines) + "\n"


def report_comments(report, source: Polyhedron | None = None) -> list[str]:
    out = []
    kept = list(report.final_linearity) + list(report.final_nonredundant)
    out.append("output row <- input row: " +
               " ".join(f"{k + 1}<-{i + 1}" for k, i in enumerate(kept)))
    m = source.m if source is not None else 1 + max(
        [*kept, *report.classes, *report.duplicate_of, *report.dependent], default=-1)
    for i in range(m):
        if i in report.final_linearity:
            v = "linearity"
        elif i in report.duplicate_of:
            v = f"duplicate of {report.duplicate_of[i] + 1}"
        elif i in report.dependent:
            v = "dependent linearity"
        elif i in report.classes:
            v = report.classes[i].verdict.value
        elif i in report.final_nonredundant:
            v = "nonredundant"
        else:
            v = "declared linearity"
        out.append(f"row {i + 1}: {v}")
    return out
