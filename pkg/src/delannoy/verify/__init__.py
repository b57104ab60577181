"""Symbolic verification of the identities satisfied by the two families."""

from .catalog import CATALOG, IdentityCheck, names
from .moments import (
    check_orthogonality,
    check_positivity,
    functional,
    moment,
    monomial_to_D_basis,
)
from .report import CheckReport
from .runner import UnknownCheckError, run_check, run_suite

__all__ = [
    "CATALOG",
    "CheckReport",
    "IdentityCheck",
    "UnknownCheckError",
    "check_orthogonality",
    "check_positivity",
    "functional",
    "moment",
    "monomial_to_D_basis",
    "names",
    "run_check",
    "run_suite",
]
