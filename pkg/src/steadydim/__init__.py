"""Exact steady-state dimension and finiteness analysis for mass-action networks.

The pipeline: parse a reaction network, build its matrix quadruple
(stoichiometric matrix, reactant exponents, row basis, conservation
laws), decide positive-kernel-cone feasibility by exact simplex, and run
randomized-plus-symbolic generic-rank tests on the two parametric
Jacobians.  Everything is computed in exact rational arithmetic.
"""

from .cone import ConeResult, ConeStatus, positive_kernel_vector
from .mpoly import MinorWitness, MissingAssignment, MPoly, VarId, all_minors_zero, det
from .netmodel import (
    Complex,
    NetworkMatrices,
    ParseError,
    Reaction,
    ReactionNetwork,
    parse_network,
)
from .nondegen import (
    AnalysisReport,
    BudgetExhausted,
    ClassesConclusion,
    DimensionMismatch,
    GenericRankVerdict,
    RankTestStatus,
    SamplerConfig,
    SteadyStateCheck,
    VarietyConclusion,
    analyze,
    analyze_matrices,
    check_steady_state,
    evaluate_f,
    generic_rank_test,
    symbolic_jacobian_F,
    symbolic_jacobian_f,
)
from .ratmat import RatMatrix, primitive

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BudgetExhausted",
    "ClassesConclusion",
    "Complex",
    "ConeResult",
    "ConeStatus",
    "DimensionMismatch",
    "GenericRankVerdict",
    "MinorWitness",
    "MissingAssignment",
    "MPoly",
    "NetworkMatrices",
    "ParseError",
    "RankTestStatus",
    "RatMatrix",
    "Reaction",
    "ReactionNetwork",
    "SamplerConfig",
    "SteadyStateCheck",
    "VarId",
    "VarietyConclusion",
    "all_minors_zero",
    "analyze",
    "analyze_matrices",
    "check_steady_state",
    "det",
    "evaluate_f",
    "generic_rank_test",
    "parse_network",
    "positive_kernel_vector",
    "primitive",
    "symbolic_jacobian_F",
    "symbolic_jacobian_f",
]
