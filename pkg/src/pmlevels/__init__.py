"""Exact level-distance transforms and axiom checkers for finite probabilistic metric spaces."""

from .distributions import DistributionFunction, epsilon_zero, pointwise_leq, step_at
from .exactnum import INF, ext, format_ext, parse_ext, unit
from .levels import (LevelFamily, LevelProfile, check_level_axioms, check_mixed_triangle,
                     delta_transform, duality_check, is_fin_family, level_eval, oracle_ut_grid,
                     phi_reconstruct)
from .morphisms import SpaceMap, is_levelwise_nonexpansive, is_nonexpansive, morphism_equivalence_suite
from .probmet import FinitePMSpace, check_pm_axioms, is_lim_space, oracle_p5_grid
from .report import AxiomReport, AxiomViolation, Verdict, VerificationReport
from .systems import (FiniteDistanceTable, FiniteLocalTable, check_local_basis, check_uniform_basis,
                      saturation_member)
from .tnorms import TNorm, check_lemma_star, lambda_for_epsilon, lemma_sweep

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "AxiomViolation",
    "check_lemma_star",
    "check_level_axioms",
    "check_local_basis",
    "check_mixed_triangle",
    "check_pm_axioms",
    "check_uniform_basis",
    "delta_transform",
    "DistributionFunction",
    "duality_check",
    "epsilon_zero",
    "ext",
    "FiniteDistanceTable",
    "FiniteLocalTable",
    "FinitePMSpace",
    "format_ext",
    "INF",
    "is_fin_family",
    "is_levelwise_nonexpansive",
    "is_lim_space",
    "is_nonexpansive",
    "lambda_for_epsilon",
    "lemma_sweep",
    "level_eval",
    "LevelFamily",
    "LevelProfile",
    "morphism_equivalence_suite",
    "oracle_p5_grid",
    "oracle_ut_grid",
    "parse_ext",
    "phi_reconstruct",
    "pointwise_leq",
    "saturation_member",
    "SpaceMap",
    "step_at",
    "TNorm",
    "unit",
    "Verdict",
    "VerificationReport",
]
