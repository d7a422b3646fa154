"""Exact optimal quantizers for the nonhomogeneous R-triangle measure."""

from fractions import Fraction

from . import _rtquant
from ._rtquant import (
    InvariantViolation,
    UsageError,
    count_csv,
    counts,
    enumeration_json,
    node_point,
    optimal_sets,
    plot_svg,
    sample,
    tree_dot,
    verify,
)

__all__ = [
    "InvariantViolation",
    "UsageError",
    "count_csv",
    "counts",
    "enumeration_json",
    "node_error",
    "node_point",
    "optimal_sets",
    "plot_svg",
    "sample",
    "set_distortion",
    "tree_dot",
    "verify",
    "vn",
]


def _fraction(pair):
    num, den = pair
    return Fraction(int(num), int(den))


def vn(n: int) -> Fraction:
    """Exact quantization error of an optimal set of n points."""
    return _fraction(_rtquant.vn(n))


def node_error(node: str) -> Fraction:
    return _fraction(_rtquant.node_error(node))


def set_distortion(nodes) -> Fraction:
    return _fraction(_rtquant.set_distortion(list(nodes)))
