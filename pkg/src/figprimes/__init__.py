"""Workbench for difference equations over binomials of prime powers."""

from .additive import DomainSpec, VerificationReport, verify_additive, verify_linear
from .curves import (
    CurveModel,
    CurvePoint,
    cubic_model,
    emit_samples,
    lift_coordinates,
    lift_point,
    lift_to_solutions,
    map_solution,
    quartic_model,
    search_integral_points,
)
from .equations import (
    EquationInstance,
    EquationSolution,
    enumerate_p_minus1_triangular,
    solve_equation,
    special_family_checks,
    theorem_errata,
)
from .errors import ArithmeticGuardError, ResourceLimitError, UsageError
from .figurate import (
    FigurateTable,
    FigurateWitness,
    StatsRecord,
    figurate_stats,
    figurate_witness,
    generate_figurate,
    twin_figurate,
)
from .intkernel import (
    PrimePower,
    PrimeTable,
    binomial_checked,
    binomial_status,
    build_sieve,
    integer_root,
    is_prime,
    powerful_class,
    prime_power_decompose,
    prime_powers_upto,
)
from .powerful import (
    DifferencePair,
    PellPair,
    consecutive_powerful_pairs,
    diff_cubefull_search,
    pell_family,
    power_of_two_gap_report,
    prime_gap_report,
    squarefull_mask,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticGuardError",
    "CurveModel",
    "CurvePoint",
    "DifferencePair",
    "DomainSpec",
    "EquationInstance",
    "EquationSolution",
    "FigurateTable",
    "FigurateWitness",
    "PellPair",
    "PrimePower",
    "PrimeTable",
    "ResourceLimitError",
    "StatsRecord",
    "UsageError",
    "VerificationReport",
    "binomial_checked",
    "binomial_status",
    "build_sieve",
    "consecutive_powerful_pairs",
    "cubic_model",
    "diff_cubefull_search",
    "emit_samples",
    "enumerate_p_minus1_triangular",
    "figurate_stats",
    "figurate_witness",
    "generate_figurate",
    "integer_root",
    "is_prime",
    "lift_coordinates",
    "lift_point",
    "lift_to_solutions",
    "map_solution",
    "pell_family",
    "power_of_two_gap_report",
    "powerful_class",
    "prime_gap_report",
    "prime_power_decompose",
    "prime_powers_upto",
    "quartic_model",
    "search_integral_points",
    "solve_equation",
    "special_family_checks",
    "squarefull_mask",
    "theorem_errata",
    "twin_figurate",
    "verify_additive",
    "verify_linear",
]
