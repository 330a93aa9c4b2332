"""Transfinite normal and composition series, exactly on finite permutation
groups and symbolically on ordinal-indexed tower groups."""

from .chains import FINITE, TOWER, TransfiniteSeries
from .errors import ContractError, DomainError, ParseError, ResourceError
from .ordinal import OMEGA, ONE, ZERO, Ordinal, format_ordinal, parse
from .series import (finite_series, is_composition_series, is_refinement,
                     jordan_holder_check, refinement_is_fixed, schreier_refine,
                     series_isomorphic, validate, zassenhaus)
from .tower import IntervalSet, PositionBijection, TowerGroup, series_from_bijection

__all__ = [
    "FINITE", "TOWER", "TransfiniteSeries", "ContractError", "DomainError",
    "ParseError", "ResourceError", "OMEGA", "ONE", "ZERO", "Ordinal",
    "format_ordinal", "parse", "finite_series", "is_composition_series",
    "is_refinement", "jordan_holder_check", "refinement_is_fixed",
    "schreier_refine", "series_isomorphic", "validate", "zassenhaus",
    "IntervalSet", "PositionBijection", "TowerGroup", "series_from_bijection",
]
