"""Entropy solutions of scalar conservation laws whose flux has jumps.

A flux with finitely many jumps is completed to a multivalued graph,
parametrized by a continuous pair ``(b, g)``, regularized into a Lipschitz
flux, and solved with a monotone finite-volume scheme.  Largest and smallest
entropy solutions come from monotone approximation from above.
"""

__version__ = "0.1.0"

from .extremal import (
    ExtremalParams,
    ExtremalResult,
    MonotonicityError,
    StateRangeError,
    mirror_problem,
    solve_largest,
    solve_smallest,
)
from .flux import (
    FluxError,
    JumpFlux,
    JumpPoint,
    burgers_flux,
    continuous_flux,
    discontinuity_set,
    eval_sided,
    heaviside_flux,
    indicator_flux,
    linear_flux,
    make_jump_flux,
    sampled_flux,
)
from .parametrize import (
    Parametrization,
    WeightAssignment,
    build_alpha,
    build_parametrization,
    graphs_equivalent,
    hausdorff_distance,
)
from .pl import PLFunction
from .regularize import RegularizedFlux, invert_br, lipschitz_bound, regularize
from .scheme import CFLError, GridSolution, SchemeParams, entropy_residual, numerical_flux, run, step

__all__ = [
    "CFLError", "ExtremalParams", "ExtremalResult", "FluxError", "GridSolution", "JumpFlux",
    "JumpPoint", "MonotonicityError", "PLFunction", "Parametrization", "RegularizedFlux",
    "SchemeParams", "StateRangeError", "WeightAssignment", "build_alpha", "build_parametrization",
    "burgers_flux", "continuous_flux", "discontinuity_set", "entropy_residual", "eval_sided",
    "graphs_equivalent", "hausdorff_distance", "heaviside_flux", "indicator_flux", "invert_br",
    "linear_flux", "lipschitz_bound", "make_jump_flux", "mirror_problem", "numerical_flux",
    "regularize", "run", "sampled_flux", "solve_largest", "solve_smallest", "step",
]
