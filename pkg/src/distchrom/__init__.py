"""Spectral lower bounds on distance-t chromatic numbers of graphs."""
from .bounds import (
    BoundReport,
    Method,
    NgoBounds,
    RatioCertificate,
    chi2_closed_general,
    chi2_closed_regular,
    chi3_closed_regular,
    eval_ratio_general,
    eval_ratio_regular,
    hypercube_exact_range,
    hypercube_t45_bound,
    lee_chi2_theorem_bound,
    ngo_bounds,
)
from .errors import (
    BoundInapplicableError,
    BudgetExceeded,
    DegenerateCaseError,
    DistChromError,
    InvalidParameterError,
    NotRegularError,
    NumericFailureError,
    OracleTimeout,
    SolverError,
)
from .graphs import (
    Graph,
    LeeParams,
    all_pairs_distances,
    build_cycle,
    build_hypercube,
    build_lee_graph,
    cartesian_product,
    diameter,
    graph_power,
    lee_distance,
)
from .leecodes import (
    LeeCode,
    is_perfect_code,
    minus_one_is_eigenvalue,
    packing_and_covering_radius,
    perfect_code_exists,
    w_prime_membership,
)
from .lpopt import lp_general_ratio, lp_minor_bound, minor_polynomial
from .oracle import (
    ColoringWitness,
    alpha_t_exact,
    chi_t_exact,
    exact_chromatic_number,
    exact_independence_number,
    greedy_chi_upper,
)
from .polynomial import Polynomial
from .simplex import LPProblem, solve_lp
from .spectra import (
    Spectrum,
    WalkDiagonal,
    cycle_spectrum,
    hypercube_spectrum,
    lee_spectrum,
    numeric_spectrum,
    walk_diagonal,
)

__version__ = "0.1.0"
