"""Exact Laurent phenomenon seed mutation for Somos and discrete BKP lattices."""

from .evolve import (
    BudgetExceeded,
    InexactDivision,
    LatticeEquation,
    LaurentFailure,
    Recurrence,
    get_equation,
    get_recurrence,
    lattice_numeric_evolve,
    lattice_residual,
    numeric_evolve,
    symbolic_evolve,
)
from .expr import ParseError, parse_expr, print_expr
from .laurent import (
    LaurentPoly,
    eval_at_quotient,
    exact_divide,
    gcd,
    multiplicity,
    strip_monomial,
    substitute,
)
from .lattice import (
    MutationSchedule,
    Window,
    get_template,
    instantiate,
    run_schedule,
    schedule_mu_tilde,
    verify_order_independence,
    verify_shift_covariance,
)
from .reduction import REDUCTIONS, ReductionMap, apply_reduction, compose, verify_reduction
from .seed import (
    MutationTrace,
    Seed,
    SeedEntry,
    check_involution,
    detect_period1,
    mutate,
    normalize_exchange,
    validate_seed,
)
from .templates import SeedTemplate

__all__ = [name for name in dir() if not name.startswith("_")]
