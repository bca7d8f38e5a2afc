"""Continuous-time quantum-walk search on finite weighted graphs.

Build a graph family, take its probabilistic Laplacian and reversibility
measure, then study the search Hamiltonian gamma * Delta - V_w: overlap
probabilities, Green functions, critical couplings and the time/coupling
optimum of the success probability.
"""

from .errors import (
    ConfigError,
    ConvergenceFailure,
    CycleInconsistency,
    DegenerateLowStates,
    EigenvalueOnSpectrum,
    NoRootInRange,
    NonSymmetrizable,
    NotAtGammaE,
    NumericalFailure,
    PoleProximity,
)
from .graphs import (
    InteriorMeasureProfile,
    Laplacian,
    TransitionGraph,
    VertexMeasure,
    cartesian_power,
    complete_graph,
    interior_measure_profile,
    kolmogorov_measure,
    path_graph,
    probabilistic_laplacian,
)
from .search import (
    DecompositionReport,
    EvolutionResult,
    GammaCriticalPoints,
    SearchOptimum,
    decompose_at_gamma_E,
    evolve,
    find_gamma_critical,
    gamma_critical_points,
    optimize_search,
    success_curve,
)
from .spectral import (
    GreenEvaluation,
    OverlapReport,
    SearchHamiltonian,
    SpectralData,
    Symmetrized,
    TheoremBounds,
    decompose,
    eigendecompose,
    green,
    ground_state,
    overlaps_direct,
    overlaps_via_green,
    symmetrize,
    theorem_bound_report,
    weighted_inner,
)

__all__ = [
    "ConfigError",
    "ConvergenceFailure",
    "CycleInconsistency",
    "DegenerateLowStates",
    "EigenvalueOnSpectrum",
    "NoRootInRange",
    "NonSymmetrizable",
    "NotAtGammaE",
    "NumericalFailure",
    "PoleProximity",
    "InteriorMeasureProfile",
    "Laplacian",
    "TransitionGraph",
    "VertexMeasure",
    "cartesian_power",
    "complete_graph",
    "interior_measure_profile",
    "kolmogorov_measure",
    "path_graph",
    "probabilistic_laplacian",
    "DecompositionReport",
    "EvolutionResult",
    "GammaCriticalPoints",
    "SearchOptimum",
    "decompose_at_gamma_E",
    "evolve",
    "find_gamma_critical",
    "gamma_critical_points",
    "optimize_search",
    "success_curve",
    "GreenEvaluation",
    "OverlapReport",
    "SearchHamiltonian",
    "SpectralData",
    "Symmetrized",
    "TheoremBounds",
    "decompose",
    "eigendecompose",
    "green",
    "ground_state",
    "overlaps_direct",
    "overlaps_via_green",
    "symmetrize",
    "theorem_bound_report",
    "weighted_inner",
]

__version__ = "0.1.0"
