"""Hom-Lie algebras over the rationals: cohomology, extensions, crossed modules, free objects."""

from .action import HomAction, module_action, semidirect, validate_action
from .cohomology import cohomologous, cohomology_group
from .core import HomLieAlgebra, HomLieError, check_hom_morphism, validate_hom_lie, yau_twist
from .crossed import CrossedModule, crossed_extension_from_module, eta, validate_crossed
from .dsl import load_workspace
from .exactla import Matrix, Subspace
from .extension import baer_sum, extension_from_cocycle, find_section, five_term_report
from .free import HomSet, free_homlie, truncated_free_homlie

__all__ = [
    "CrossedModule",
    "HomAction",
    "HomLieAlgebra",
    "HomLieError",
    "HomSet",
    "Matrix",
    "Subspace",
    "baer_sum",
    "check_hom_morphism",
    "cohomologous",
    "cohomology_group",
    "crossed_extension_from_module",
    "eta",
    "extension_from_cocycle",
    "find_section",
    "five_term_report",
    "free_homlie",
    "load_workspace",
    "module_action",
    "semidirect",
    "truncated_free_homlie",
    "validate_action",
    "validate_crossed",
    "validate_hom_lie",
    "yau_twist",
]
