"""Compile CNF formulas into reduction games and map between truth
assignments and strategy profiles."""

from .cnf import CnfFormula, DimacsError, parse_dimacs
from .games import (
    GENERATORS,
    AssignmentFilter,
    ReductionError,
    ReductionGame,
    Role,
    assignment_filter,
    assignment_to_profile,
    gen_c,
    gen_d,
    gen_g,
    gen_h,
    gen_r,
    gen_sv,
    profile_to_assignment,
)

__all__ = [
    "GENERATORS",
    "AssignmentFilter",
    "CnfFormula",
    "DimacsError",
    "ReductionError",
    "ReductionGame",
    "Role",
    "assignment_filter",
    "assignment_to_profile",
    "gen_c",
    "gen_d",
    "gen_g",
    "gen_h",
    "gen_r",
    "gen_sv",
    "parse_dimacs",
    "profile_to_assignment",
]
