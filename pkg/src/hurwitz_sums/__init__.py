"""Exact Hurwitz class numbers, their theta-twisted sums, and weight-2 identities."""

from .class_numbers import (ClassNumberTable, ReducedForm, build_table, class_sum,
                            eichler_check, hurwitz, load_table, reduced_forms, save_table)
from .errors import HurwitzSumsError, PrecisionError, TableFormatError, UsageError
from .qseries import QSeries, ResidueWeight

__all__ = [
    "ClassNumberTable", "ReducedForm", "build_table", "class_sum", "eichler_check",
    "hurwitz", "load_table", "reduced_forms", "save_table",
    "HurwitzSumsError", "PrecisionError", "TableFormatError", "UsageError",
    "QSeries", "ResidueWeight",
]

__version__ = "0.1.0"
