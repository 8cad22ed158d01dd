"""Size doubling for low-complexity transforms.

A transform of size N is lifted to size 2N by feeding an input butterfly of
identity and counter-identity blocks into two copies of the N-point kernel.
Output rows are emitted frequency-interleaved: row 2k comes from the
half-sum path (even frequencies), row 2k+1 from the half-difference path, so
the doubled transform stays frequency-ordered like its seed.  Orthogonality
is preserved exactly, and cost grows as twice the seed's plus 2N additions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DyadicMatrix,
    FeasibilityError,
    ParamVector,
    Transform,
    build_matrix,
    gram_quarter_units,
    is_feasible,
)
from .kernel import ComplexityCount, complexity

__all__ = ["ScaledTransform", "scale_once", "scaled_complexity", "build_scaled"]


@dataclass(frozen=True)
class ScaledTransform:
    """A 16- or 32-point transform grown from a feasible 8-point seed."""

    seed: ParamVector
    transform: Transform
    complexity: ComplexityCount


def scale_once(m: DyadicMatrix) -> DyadicMatrix:
    """Double a square dyadic matrix: butterfly the input, interleave the
    sum/difference outputs."""
    if len(m.shape) != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"scale_once requires a square matrix, got shape {m.shape}")
    h = m.half_units
    n = h.shape[0]
    out = np.empty((2 * n, 2 * n), dtype=np.int64)
    out[0::2] = np.hstack([h, h[:, ::-1]])
    out[1::2] = np.hstack([h, -h[:, ::-1]])
    return DyadicMatrix(out)


def scaled_complexity(c: ComplexityCount, n: int) -> ComplexityCount:
    """Cost of the doubled transform: the input butterfly adds 2n additions,
    everything else is two seed evaluations."""
    return ComplexityCount(
        additions=2 * c.additions + 2 * n,
        shifts=2 * c.shifts,
        rule=c.rule,
    )


def build_scaled(params: ParamVector, target: int) -> ScaledTransform:
    """Grow a feasible 8-point seed to a 16- or 32-point transform."""
    if target not in (16, 32):
        raise ValueError(f"target size must be 16 or 32, got {target}")
    if not is_feasible(params):
        raise FeasibilityError(f"parameters {params} do not give an orthogonal matrix")
    m = build_matrix(params)
    cost = complexity(params)
    n = 8
    while n < target:
        m = scale_once(m)
        cost = scaled_complexity(cost, n)
        n *= 2
    quarter_diag = np.diagonal(gram_quarter_units(m))
    scale = 2.0 / np.sqrt(quarter_diag.astype(np.float64))
    return ScaledTransform(
        seed=params,
        transform=Transform(n=target, half_units=m.half_units, scale=scale),
        complexity=cost,
    )
