"""Exact truncated power series for Ruijsenaars functions and their difference operators."""

from .combinatorics import MultiPartition, Partition, ThetaMatrix
from .series import PoleError, TruncatedSeries, scalar
from .special import ParamPoint

__all__ = ["MultiPartition", "ParamPoint", "Partition", "PoleError", "ThetaMatrix", "TruncatedSeries", "scalar"]
__version__ = "0.1.0"
