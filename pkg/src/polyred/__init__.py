"""Exact redundancy removal, minimum representations and Fourier-Motzkin projection."""

from .classify import EmptyPolyhedronError, RowClass, Verdict, classify, full_dimension_test
from .clarkson import clarkson_nonredundant, ray_shoot
from .exact import H, V, Polyhedron, PolyhedronError, canonical_form, dedup_rows, gaussian_reduce, gcd_normalize
from .fm import ProjectionResult, ProjectionSpec, eliminate_one, in_projection, project
from .lp import LPOutcome, LPProblem, Sense, solve
from .lrsio import ParseError, emit, parse, parse_job
from .minrep import MinRepReport, minimum_representation, redundancy_removal, verify_report
from .oracle import GuardRailError, enumerate_vertices, golden_square, naive_classify, same_polyhedron
from .parallel import TaskBatch, TaskError, map_rows

__all__ = [
    "EmptyPolyhedronError", "GuardRailError", "H", "LPOutcome", "LPProblem", "MinRepReport",
    "ParseError", "Polyhedron", "PolyhedronError", "ProjectionResult", "ProjectionSpec",
    "RowClass", "Sense", "TaskBatch", "TaskError", "V", "Verdict", "canonical_form", "clarkson_nonredundant",
    "classify", "dedup_rows", "eliminate_one", "emit", "enumerate_vertices", "full_dimension_test",
    "gaussian_reduce", "gcd_normalize", "golden_square", "in_projection", "map_rows",
    "minimum_representation", "naive_classify", "parse", "parse_job", "project", "ray_shoot",
    "redundancy_removal", "same_polyhedron", "solve", "verify_report",
]
