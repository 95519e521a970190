"""Conservative minimum-cost homomorphism problems: classification and exact solving."""

__version__ = "0.1.0"

from .boolean import BooleanMode, classify_boolean, reduce_maxcut, reduce_mis
from .classify import ClassificationReport, Verdict, classify, verify_report
from .engine import SearchSpaceTooLarge, branch_and_bound, brute_force_optimum, compute_value_sets
from .model import (
    Constraint,
    ConstraintLanguage,
    CostSet,
    Instance,
    ModelError,
    Relation,
    build_preference_graph,
    characteristic_costs,
    check_assignment,
    evaluate_measure,
    maxsol_cost_set,
)
from .polymorphisms import OperationTable, find_polymorphism, preserves, preserves_language
from .tractable import prune_domains, solve_tractable

__all__ = [
    "BooleanMode", "ClassificationReport", "Constraint", "ConstraintLanguage", "CostSet",
    "Instance", "ModelError", "OperationTable", "Relation", "SearchSpaceTooLarge", "Verdict",
    "branch_and_bound", "brute_force_optimum", "build_preference_graph", "characteristic_costs",
    "check_assignment", "classify", "classify_boolean", "compute_value_sets", "evaluate_measure",
    "find_polymorphism", "maxsol_cost_set", "preserves", "preserves_language", "prune_domains",
    "reduce_maxcut", "reduce_mis", "solve_tractable", "verify_report",
]
