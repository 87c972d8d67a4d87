"""Continued fractions of square roots of polynomials, their periodicity,
and their behaviour under reduction modulo a prime."""
from .errors import *  # noqa: F401,F403
from .fields import GF, QQ, QQt, OrdAt, PAdic, PrimeField, RatFunc, parse_field, val
from .poly import Poly, complete_square, format_poly, gauss_norm, poly, reduce_poly
from .laurent import LaurentSeries, sqrt_series, truncate
from .parse import parse_poly, parse_rational
from .cf import (
    CFState,
    Convergent,
    PeriodReport,
    cf_init_general,
    cf_init_sqrt,
    cf_rational,
    cf_step,
    convergents,
    detect_period,
    evaluate_cf,
    expand,
    palindrome_check,
    partial_quotients,
)
from .pell import (
    NotPellian,
    PellSolution,
    TorsionBound,
    TorsionReport,
    find_pell,
    pell_from_period,
    pell_verify,
    torsion_order_mod,
    two_prime_test,
)
from .reduction import (
    BadAt,
    Expansion,
    GoodThrough,
    Unsupported,
    classify_reduction,
    compute_lambda,
    degree_table,
    genus1_pattern,
    reduce_D_classify,
    valuation_table,
)
from .toeplitz import build_system, kernel_convergent, sqrt_system
from .heights import convergent_height_report, proj_height, proj_height_places

__version__ = "0.1.0"
