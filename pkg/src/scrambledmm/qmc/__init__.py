"""Sobol point sets, their randomisations and quality measures."""

from .directions import (
    PRECISION,
    DimensionEntry,
    DirectionFileError,
    DirectionTable,
    default_table,
    expand_direction_numbers,
    joe_kuo_table,
    parse_direction_file,
)
from .discrepancy import star_discrepancy, uniformity_chi_square
from .normal import inv_normal_cdf, normal_cdf
from .points import PointMatrix, Provenance, sobol_integers, sobol_points
from .scramble import (
    ScrambleKey,
    antithetic_extend,
    digital_shift,
    nested_scramble,
    scramble_integers,
)

__all__ = [
    "PRECISION",
    "DimensionEntry",
    "DirectionFileError",
    "DirectionTable",
    "PointMatrix",
    "Provenance",
    "ScrambleKey",
    "antithetic_extend",
    "default_table",
    "digital_shift",
    "expand_direction_numbers",
    "inv_normal_cdf",
    "joe_kuo_table",
    "nested_scramble",
    "normal_cdf",
    "parse_direction_file",
    "scramble_integers",
    "sobol_integers",
    "sobol_points",
    "star_discrepancy",
    "uniformity_chi_square",
]
