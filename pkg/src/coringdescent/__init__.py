"""Exact descent cohomology for corings over finite prime fields."""

from .algmod import Algebra, Module, free_module, tensor_over, units
from .comodule import Comodule, d0, end_C_algebra
from .coring import Coring, check_coring, coaction_from_grouplike, grouplikes, sweedler_coring, trivial_coring
from .descent import classify_torsors, d1, induced_comodule, is_galois_comodule, verify_descent_twist, z1
from .groups import FiniteGroup, cyclic_group
from .partial import PartialAction, galois_map, partial_action_coring, partial_cohomology, units_cohomology
from .workspace import Workspace, load

__all__ = [
    "Algebra",
    "Comodule",
    "Coring",
    "FiniteGroup",
    "Module",
    "PartialAction",
    "Workspace",
    "check_coring",
    "classify_torsors",
    "coaction_from_grouplike",
    "cyclic_group",
    "d0",
    "d1",
    "end_C_algebra",
    "free_module",
    "galois_map",
    "grouplikes",
    "induced_comodule",
    "is_galois_comodule",
    "load",
    "partial_action_coring",
    "partial_cohomology",
    "sweedler_coring",
    "tensor_over",
    "trivial_coring",
    "units",
    "units_cohomology",
    "verify_descent_twist",
    "z1",
]
