"""Finite model theory workbench: structures, homomorphisms, cores, games and locality."""

from .exceptions import BudgetExceeded, CapExceeded, FMTKitException, InputError, LimitError
from .homsearch import NotFound, SearchBudget, find_homomorphism, maps_to
from .structures import Morphism, Structure, Vocabulary

__all__ = [
    "Vocabulary",
    "Structure",
    "Morphism",
    "SearchBudget",
    "NotFound",
    "find_homomorphism",
    "maps_to",
    "FMTKitException",
    "InputError",
    "LimitError",
    "BudgetExceeded",
    "CapExceeded",
]

__title__ = "fmtkit"
__version__ = "0.1.0"
__author__ = "xymy"
__email__ = "thyfan@163.com"
