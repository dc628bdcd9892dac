"""Odd-exponent engine for mixed-volume vanishing on generalized permutohedra."""

from .core import (AlgorithmTrace, CompatReport, DimFunction, ExtremeComparison,
                   InvalidPointError, P2Report, P3Report, ParityError,
                   PolymatError, SizeFloorError, SubmodularReport, SubsetLedger,
                   brute_force_odd_tuples, check_output_compat, check_submodular,
                   clamp, compare_to_extreme, greedy_extreme_point,
                   in_nonzero_region, lift_point, mask_of, odd_tuple_algorithm,
                   p2_analysis, p3_closed_form, subset_of)

__all__ = [
    "AlgorithmTrace", "CompatReport", "DimFunction", "ExtremeComparison",
    "InvalidPointError", "P2Report", "P3Report", "ParityError", "PolymatError",
    "SizeFloorError", "SubmodularReport", "SubsetLedger",
    "brute_force_odd_tuples", "check_output_compat", "check_submodular",
    "clamp", "compare_to_extreme", "greedy_extreme_point", "in_nonzero_region",
    "lift_point", "mask_of", "odd_tuple_algorithm", "p2_analysis",
    "p3_closed_form", "subset_of",
]
