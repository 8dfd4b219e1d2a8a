"""weyllab: numerical experiments on two-parametric Weyl sums.

Subpackages cover exact phase evaluation (poly_phase), the sums themselves
and their completion (weyl_sum), solution counting and Monte-Carlo moments
(mean_value), exact exponent tables (bounds_tables), torus grid scans
(large_values), suprema along curves (curves) and the CLI front end (cli).
"""

__version__ = "0.1.0"

from .bounds_tables import exponent_table, theta_exact
from .curves import Circle, Line, Parametric, bad_set_experiment, exponent_along, sup_along
from .errors import (
    BudgetExceeded,
    DegenerateInput,
    DomainError,
    PrecisionError,
    WeylLabError,
)
from .large_values import GridSpec, ScanResult, grid_spec, scan
from .mean_value import count_solutions, fit_exponent, mc_moment_S, mc_moment_W
from .poly_phase import IntPolynomial, PhasePoint, PhaseRecurrence, eval_poly, phase_init, phase_step
from .weyl_sum import (
    CompletionResult,
    completion_sum,
    partial_max,
    perturbation_bound,
    weyl_sum,
    weyl_sum_reference,
)

__all__ = [
    "__version__",
    "BudgetExceeded",
    "Circle",
    "CompletionResult",
    "DegenerateInput",
    "DomainError",
    "GridSpec",
    "IntPolynomial",
    "Line",
    "Parametric",
    "PhasePoint",
    "PhaseRecurrence",
    "PrecisionError",
    "ScanResult",
    "WeylLabError",
    "bad_set_experiment",
    "completion_sum",
    "count_solutions",
    "eval_poly",
    "exponent_along",
    "exponent_table",
    "fit_exponent",
    "grid_spec",
    "mc_moment_S",
    "mc_moment_W",
    "partial_max",
    "perturbation_bound",
    "phase_init",
    "phase_step",
    "scan",
    "sup_along",
    "theta_exact",
    "weyl_sum",
    "weyl_sum_reference",
]
