"""
Shift operators on finite commutative *-semigroups
"""

from .analysis import Verdict, analyze, krein_conditions, shift_counts
from .characters import enumerate_characters, separative_quotient
from .core import StarSemigroup, amalgam, direct_product, make_cyclic, make_power_z2, validate
from .manager_file import FileManager
from .pdfun import DualMeasure, moment_function

__all__ = [
    "DualMeasure",
    "FileManager",
    "StarSemigroup",
    "Verdict",
    "amalgam",
    "analyze",
    "direct_product",
    "enumerate_characters",
    "krein_conditions",
    "make_cyclic",
    "make_power_z2",
    "moment_function",
    "separative_quotient",
    "shift_counts",
    "validate",
]
