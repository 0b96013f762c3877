"""Reference implementation of a core calculus with constrained type families."""

from ._cfc import (
    check,
    enumerate_types,
    eval_term,
    infer_constraints,
    normalize_type,
    run_suite,
)

__all__ = [
    "check",
    "enumerate_types",
    "eval_term",
    "infer_constraints",
    "normalize_type",
    "run_suite",
]
