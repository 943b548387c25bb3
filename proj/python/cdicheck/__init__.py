"""Checks multi-parameter constraints stated in documentation against the
code paths that enforce them.

The heavy lifting lives in the compiled extension ``cdicheck._core``; this
package re-exports its value-oriented API (constraint text in, dicts out).
"""

from ._core import (
    ConstraintParseError,
    CorpusParseError,
    InapplicablePattern,
    SortError,
    UnsupportedSyntaxError,
    canonical,
    check_record,
    constraint_params,
    dump_paths,
    enumerate_paths,
    extract_records,
    is_satisfiable,
    levenshtein,
    mutant_relation,
    mutate,
    mutation_patterns,
    nld,
    normalize,
    op_similarity,
    read_records,
    report_json,
    scan_tree,
    write_records,
)

__all__ = [
    "ConstraintParseError",
    "CorpusParseError",
    "InapplicablePattern",
    "SortError",
    "UnsupportedSyntaxError",
    "canonical",
    "check_record",
    "constraint_params",
    "dump_paths",
    "enumerate_paths",
    "extract_records",
    "is_satisfiable",
    "levenshtein",
    "mutant_relation",
    "mutate",
    "mutation_patterns",
    "nld",
    "normalize",
    "op_similarity",
    "read_records",
    "report_json",
    "scan_tree",
    "write_records",
]
