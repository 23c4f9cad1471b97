"""Sharp minimal-period thresholds for n-th order Lipschitz functional
differential equations, computed and verified in exact rational arithmetic.

The package answers, with proofs-by-computation at desk scale:

* what the sharp constants K_n are (three independent exact routes),
* why the period bound T >= 1/(L K_n)^(1/n) holds (kernel minimization and
  contraction certificates for the periodic representation),
* why it is sharp (explicit non-constant periodic solutions at the critical
  Lipschitz constant, verified identity by identity in rational arithmetic),
* and how unique solvability of the reduced periodic problems flips exactly
  at the threshold (finite exact reductions for step-valued deviations and
  weights).
"""

from .bounds import BoundResult, ConclusionRow, conclusion_table, min_period_bound, weight_threshold
from .constants import (
    FavardTable,
    SeriesApprox,
    favard_closed_form,
    favard_generating,
    favard_recurrence,
    favard_series_numeric,
    favard_table,
)
from .exact import PiecewisePolynomial, Polynomial, format_rational, parse_rational
from .kernels import (
    GreenEval,
    KernelPhi,
    MedianSplit,
    green_apply,
    green_eval,
    green_solution_polynomial,
    kernel_phi,
    min_abs_integral,
    phi_eval,
)
from .numbers import (
    BernoulliEulerCache,
    bernoulli_numbers,
    bernoulli_polynomial,
    euler_numbers,
    periodic_bernoulli_eval,
)
from .solver import (
    ReducedSystem,
    SolveReport,
    StepFunction,
    reduce_system,
    reduce_weighted,
    solve_periodic,
    solve_weighted,
    uniqueness_margin,
)
from .witness import (
    DeviationMap,
    StepSign,
    VerificationReport,
    Witness,
    auxiliary_solution,
    build_witness,
    verify_witness,
)

__version__ = "0.1.0"

__all__ = [
    "BernoulliEulerCache",
    "BoundResult",
    "ConclusionRow",
    "DeviationMap",
    "FavardTable",
    "GreenEval",
    "KernelPhi",
    "MedianSplit",
    "PiecewisePolynomial",
    "Polynomial",
    "ReducedSystem",
    "SeriesApprox",
    "SolveReport",
    "StepFunction",
    "StepSign",
    "VerificationReport",
    "Witness",
    "auxiliary_solution",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "build_witness",
    "conclusion_table",
    "euler_numbers",
    "favard_closed_form",
    "favard_generating",
    "favard_recurrence",
    "favard_series_numeric",
    "favard_table",
    "format_rational",
    "green_apply",
    "green_eval",
    "green_solution_polynomial",
    "kernel_phi",
    "min_abs_integral",
    "min_period_bound",
    "parse_rational",
    "periodic_bernoulli_eval",
    "phi_eval",
    "reduce_system",
    "reduce_weighted",
    "solve_periodic",
    "solve_weighted",
    "uniqueness_margin",
    "verify_witness",
    "weight_threshold",
    "__version__",
]
