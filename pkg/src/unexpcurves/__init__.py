"""Exact computations with unexpected plane curves, splitting types and line arrangements."""

from .arrangements import LineArrangement, freeness
from .catalog import build, build_points, list_entries
from .curves import curve_CP, decompose, decomposed_curve, parametrize
from .exactfield import QQ, FunctionField, PrimeField, Rationals, parse_field
from .invariants import compute_splitting, compute_tZ, unexpected_report
from .schemes import GenericMode, PointConfig, ProjPoint

__all__ = [
    "QQ", "FunctionField", "GenericMode", "LineArrangement", "PointConfig", "PrimeField", "ProjPoint", "Rationals",
    "build", "build_points", "compute_splitting", "compute_tZ", "curve_CP", "decompose", "decomposed_curve", "freeness", "list_entries",
    "parametrize", "parse_field", "unexpected_report",
]
