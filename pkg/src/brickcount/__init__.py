"""Exact enumeration and growth-constant bounds for rectangular stud-brick buildings."""

from .geometry import (BrickShape, CanonicalKey, Configuration, Placement,
                       canonicalize, collides, footprint, is_connected,
                       placements_on_top)
from .enumerator import (CountLedger, ResourceLimitExceeded, SearchLimits,
                         count_anchored, count_table, count_total,
                         superadditivity_check, two_on_one_count)
from .decomposition import (BottleneckProfile, c3_derivation_audit,
                            convolution_identity_check, count_b, count_c,
                            decompose, find_bottlenecks, reconstruct)
from .tape import DecodeOutcome, FailureTag, Tape, decode, encode, surjectivity_census
from .bounds import (BoundReport, PartitionSpec, Polynomial, crude_lower_bound,
                     crude_upper_bound, entropy_summary, lower_bound_from_c,
                     lower_bound_with_tail, partition_upper_bound)
from .formulas import (crude_counts, one_on_one_ways, tower_full_height,
                       tower_one_less, tower_two_less)

__version__ = "0.1.0"

__all__ = [
    "BrickShape", "CanonicalKey", "Configuration", "Placement",
    "canonicalize", "collides", "footprint", "is_connected", "placements_on_top",
    "CountLedger", "ResourceLimitExceeded", "SearchLimits",
    "count_anchored", "count_table", "count_total",
    "superadditivity_check", "two_on_one_count",
    "BottleneckProfile", "c3_derivation_audit", "convolution_identity_check",
    "count_b", "count_c", "decompose", "find_bottlenecks", "reconstruct",
    "DecodeOutcome", "FailureTag", "Tape", "decode", "encode",
    "surjectivity_census",
    "BoundReport", "PartitionSpec", "Polynomial", "crude_lower_bound",
    "crude_upper_bound", "entropy_summary", "lower_bound_from_c",
    "lower_bound_with_tail", "partition_upper_bound",
    "crude_counts", "one_on_one_ways", "tower_full_height", "tower_one_less",
    "tower_two_less",
    "__version__",
]
