"""Command-line front end.

    polyred [minrep|redund|fel|goldensquare|oracle] FILE [options]

The result goes to stdout as an lrs file.  ``--stats`` writes JSON to
stderr so stdout stays a valid polyhedron file.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict

from .classify import EmptyPolyhedronError
from .exact import H, Polyhedron
from .fm import ProjectionSpec, project
from .lrsio import ParseError, emit, parse_job
from .minrep import minimum_representation, redundancy_removal, verify_report
from .oracle import GuardRailError, enumerate_facets, enumerate_vertices, golden_square, naive_classify_all

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_GUARD = 0, 1, 2, 3, 4
VERBS = ("minrep", "redund", "fel", "goldensquare", "oracle")


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polyred", description="Exact redundancy removal and projection for polyhedra.")
    p.add_argument("args", nargs="+", metavar="[VERB] FILE",
                   help=f"verb is one of {', '.join(VERBS)} (default: the file's option line, else minrep)")
    p.add_argument("--threads", type=int, default=1, metavar="N")
    p.add_argument("--clarkson", action="store_true", help="output-sensitive redundancy removal")
    p.add_argument("--fm-order", choices=("given", "heuristic"), default="given")
    p.add_argument("--eliminate", type=int, nargs="+", metavar="J", help="1-based columns to eliminate")
    p.add_argument("--project", type=int, nargs="+", metavar="J", help="1-based columns to keep")
    p.add_argument("--verify", action="store_true", help="check every witness in the report")
    p.add_argument("--stats", action="store_true", help="JSON statistics on stderr")
    p.add_argument("--debug-checks", action="store_true", help="extra internal assertions")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _infeasible(out, P: Polyhedron, cert) -> int:
    out.write(f"* {P.name or 'input'}: no feasible point\n")
    if cert:
        terms = " ".join(f"{i + 1}:{y}" for i, y in sorted(cert.items()))
        out.write(f"* certificate (row:multiplier): {terms}\n")
    return EXIT_INFEASIBLE


def _projection_spec(P: Polyhedron, args, job) -> ProjectionSpec:
    elim = args.eliminate if args.eliminate is not None else job.eliminate
    keep = args.project if args.project is not None else job.project
    if (elim is None) == (keep is None):
        raise _Usage("fel needs exactly one of --eliminate or --project")
    cols = elim if elim is not None else keep
    if any(not 1 <= j <= P.d for j in cols):
        raise _Usage(f"columns must lie in 1..{P.d}")
    zero = [j - 1 for j in cols]
    try:
        if elim is not None:
            return ProjectionSpec.from_eliminate(P.d, zero)
        return ProjectionSpec.from_keep(P.d, zero)
    except ValueError as exc:
        raise _Usage(str(exc)) from None


def run(args, out, err) -> int:
    verb = None
    if args.args[0] in VERBS:
        verb, rest = args.args[0], args.args[1:]
    else:
        rest = args.args
    if len(rest) != 1:
        raise _Usage("expected exactly one input file")
    if args.threads < 1:
        raise _Usage("--threads must be positive")
    try:
        P, job = parse_job(_read(rest[0]))
    except OSError as exc:
        raise _Usage(str(exc)) from None
    for w in job.warnings:
        err.write(f"warning: {w}\n")
    if verb is None and (args.eliminate is not None or args.project is not None):
        verb = "fel"
    verb = verb or job.verb or "minrep"
    stats: dict = {"verb": verb}
    code = EXIT_OK

    if verb in ("minrep", "redund"):
        fn = minimum_representation if verb == "minrep" else redundancy_removal
        rep = fn(P, args.threads, clarkson=args.clarkson, debug_checks=args.debug_checks)
        stats.update(rep.stats)
        if not rep.feasible:
            code = _infeasible(out, P, rep.certificate)
        else:
            if args.verify:
                problems = verify_report(P, rep)
                stats["verify_failures"] = problems
                for p in problems:
                    err.write(f"verify: {p}\n")
            out.write(emit(rep.representation(P), rep, source=P))
            stats["final_linearity"] = [i + 1 for i in rep.final_linearity]
            stats["final_nonredundant"] = [i + 1 for i in rep.final_nonredundant]

    elif verb in ("fel", "goldensquare"):
        if P.kind != H:
            raise _Usage(f"{verb} needs an H-representation")
        spec = _projection_spec(P, args, job)
        if verb == "fel":
            res = project(P, spec, args.threads, clarkson=args.clarkson, order=args.fm_order,
                          debug_checks=args.debug_checks)
            Q = res.polyhedron
            stats.update(res.stats)
            stats["rounds"] = [asdict(r) | {"column": r.column + 1} for r in res.rounds]
            cols = res.columns
        else:
            Q = golden_square(P, spec.keep, args.threads)
            cols = spec.keep
        note = "columns: " + " ".join(f"x{j + 1}" for j in cols)
        out.write(emit(Q, comments=[note]))

    else:  # oracle
        if P.kind == H:
            vl = enumerate_vertices(P)
            if not vl.vertices:
                code = _infeasible(out, P, None)
            else:
                verdicts = naive_classify_all(P) if P.inequalities and P.d else {}
                notes = [f"row {i + 1}: {c.verdict.value}" for i, c in sorted(verdicts.items())]
                out.write(emit(vl.as_v_polyhedron(P.d), comments=notes))
                stats["vertices"] = len(vl.vertices)
                stats["rays"] = len(vl.rays)
        else:
            Q = enumerate_facets(P)
            out.write(emit(Q))
            stats["facets"] = len(Q.inequalities)

    if args.stats:
        err.write(json.dumps(stats, default=str, sort_keys=True) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.output:
            with open(args.output, "w") as out:
                return run(args, out, sys.stderr)
        return run(args, sys.stdout, sys.stderr)
    except _Usage as exc:
        sys.stderr.write(f"polyred: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"polyred: parse error: {exc}\n")
        return EXIT_PARSE
    except EmptyPolyhedronError as exc:
        sys.stdout.write(f"* {exc}\n")
        sys.stderr.write(f"polyred: infeasible input: {exc}\n")
        return EXIT_INFEASIBLE
    except GuardRailError as exc:
        sys.stderr.write(f"polyred: {exc}\n")
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
