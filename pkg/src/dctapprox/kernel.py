"""Sparse-factorization evaluation of the 8-point transform and exact
arithmetic-complexity accounting.

The transform factors into two +-1 butterfly stages, a block-diagonal core
that carries all eight parameters, and an output permutation.  Multiplying by
a parameter therefore only ever means skip, negate, halve or double, which is
what the addition/shift counting below models.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DyadicMatrix,
    FeasibilityError,
    ParamVector,
    is_feasible,
    scale_factors,
)

__all__ = [
    "FactorSet",
    "ComplexityCount",
    "factor_matrices",
    "factored_product",
    "apply_fast",
    "apply_fast_doubled",
    "apply_inverse",
    "complexity",
    "count_operations",
]

# Output permutation: stage-core output w maps to X = w[_PERM_SRC].
_PERM_SRC = (0, 4, 2, 6, 1, 5, 3, 7)

_STAGE1 = np.array(
    [
        [1, 0, 0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 1, 0, 0, -1, 0, 0],
        [0, 1, 0, 0, 0, 0, -1, 0],
        [1, 0, 0, 0, 0, 0, 0, -1],
    ],
    dtype=np.int64,
)

_STAGE2 = np.array(
    [
        [1, 0, 0, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 1, -1, 0, 0, 0, 0, 0],
        [1, 0, 0, -1, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 1],
    ],
    dtype=np.int64,
)


@dataclass(frozen=True)
class FactorSet:
    """The four sparse factors: input butterfly, second butterfly, parameter
    core, and output permutation.  Their product equals build_matrix exactly."""

    stage1: DyadicMatrix
    stage2: DyadicMatrix
    core: DyadicMatrix
    perm: DyadicMatrix


def _core_half_units(params: ParamVector) -> np.ndarray:
    u1, u2, u3, u4, u5, u6, u7, u8 = params.doubled
    return np.array(
        [
            [2, 2, 0, 0, 0, 0, 0, 0],
            [2, -2, 0, 0, 0, 0, 0, 0],
            [0, 0, u2, 2, 0, 0, 0, 0],
            [0, 0, -2, u2, 0, 0, 0, 0],
            [0, 0, 0, 0, u1, u1, 2, 2],
            [0, 0, 0, 0, u6, -u1, -u5, u5],
            [0, 0, 0, 0, -u1, -u4, u3, u1],
            [0, 0, 0, 0, -u8, u1, -u6, u7],
        ],
        dtype=np.int64,
    )


def factor_matrices(params: ParamVector) -> FactorSet:
    perm = np.zeros((8, 8), dtype=np.int64)
    for i, src in enumerate(_PERM_SRC):
        perm[i, src] = 1
    return FactorSet(
        stage1=DyadicMatrix(2 * _STAGE1),
        stage2=DyadicMatrix(2 * _STAGE2),
        core=DyadicMatrix(_core_half_units(params)),
        perm=DyadicMatrix(2 * perm),
    )


def factored_product(factors: FactorSet) -> DyadicMatrix:
    """Exact product perm @ core @ stage2 @ stage1 as a dyadic matrix.

    The four half-unit factors multiply to 16x the true product, so one
    integer shift by 8 recovers half units exactly.
    """
    prod = (
        factors.perm.half_units
        @ factors.core.half_units
        @ factors.stage2.half_units
        @ factors.stage1.half_units
    )
    if np.any(prod % 8):
        raise AssertionError("factored product is not a half-unit matrix")
    return DyadicMatrix(prod // 8)


def _stage1_apply(x):
    return [
        x[0] + x[7], x[1] + x[6], x[2] + x[5], x[3] + x[4],
        x[3] - x[4], x[2] - x[5], x[1] - x[6], x[0] - x[7],
    ]


def _stage2_apply(y):
    return [
        y[0] + y[3], y[1] + y[2], y[1] - y[2], y[0] - y[3],
        y[4], y[5], y[6], y[7],
    ]


def _mul(doubled_coef: int, v):
    """Multiply by a parameter given as value*2: skip, negate, halve or double."""
    if doubled_coef == 0:
        return 0 * v
    if doubled_coef == 2:
        return v
    if doubled_coef == -2:
        return -v
    if doubled_coef == 1:
        return v / 2
    if doubled_coef == -1:
        return -(v / 2)
    if doubled_coef == 4:
        return v + v
    return -(v + v)  # -4


def _mul_int(doubled_coef: int, v: int) -> int:
    # Same dispatch on even integers; halving is exact.
    if doubled_coef == 0:
        return 0
    if doubled_coef == 2:
        return v
    if doubled_coef == -2:
        return -v
    if doubled_coef == 1:
        return v // 2
    if doubled_coef == -1:
        return -(v // 2)
    if doubled_coef == 4:
        return v + v
    return -(v + v)  # -4


def _core_apply(params: ParamVector, z, mul):
    u1, u2, u3, u4, u5, u6, u7, u8 = params.doubled
    return [
        z[0] + z[1],
        z[0] - z[1],
        mul(u2, z[2]) + z[3],
        -z[2] + mul(u2, z[3]),
        mul(u1, z[4]) + mul(u1, z[5]) + z[6] + z[7],
        mul(u6, z[4]) - mul(u1, z[5]) - mul(u5, z[6]) + mul(u5, z[7]),
        -mul(u1, z[4]) - mul(u4, z[5]) + mul(u3, z[6]) + mul(u1, z[7]),
        -mul(u8, z[4]) + mul(u1, z[5]) - mul(u6, z[6]) + mul(u7, z[7]),
    ]


def apply_fast(params: ParamVector, x) -> np.ndarray:
    """Evaluate T(params) @ x stage by stage (no matrix multiply)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (8,):
        raise ValueError(f"input must be a length-8 vector, got shape {x.shape}")
    w = _core_apply(params, _stage2_apply(_stage1_apply(list(x))), _mul)
    return np.array([w[s] for s in _PERM_SRC], dtype=np.float64)


def apply_fast_doubled(params: ParamVector, x) -> np.ndarray:
    """Exact integer twin of apply_fast: returns 2 * T(params) @ x for
    integer x.  All intermediate values stay even where halving occurs, so
    the result is exact."""
    x = np.asarray(x)
    if x.shape != (8,):
        raise ValueError(f"input must be a length-8 vector, got shape {x.shape}")
    s = [2 * int(v) for v in x]
    w = _core_apply(params, _stage2_apply(_stage1_apply(s)), _mul_int)
    return np.array([w[i] for i in _PERM_SRC], dtype=np.int64)


def apply_inverse(params: ParamVector, coeffs) -> np.ndarray:
    """Inverse transform of an orthonormalized forward pass: T^t @ S @ X,
    realized as diagonal scaling followed by the transposed stage sequence."""
    if not is_feasible(params):
        raise FeasibilityError(f"parameters {params} do not give an orthogonal matrix")
    coeffs = np.asarray(coeffs, dtype=np.float64)
    if coeffs.shape != (8,):
        raise ValueError(f"input must be a length-8 vector, got shape {coeffs.shape}")
    u1, u2, u3, u4, u5, u6, u7, u8 = params.doubled
    y = list(coeffs * scale_factors(params))
    # Transposed permutation: w[src] = y[dst].
    w = [0.0] * 8
    for dst, src in enumerate(_PERM_SRC):
        w[src] = y[dst]
    m = _mul
    z = [
        w[0] + w[1],
        w[0] - w[1],
        m(u2, w[2]) - w[3],
        w[2] + m(u2, w[3]),
        m(u1, w[4]) + m(u6, w[5]) - m(u1, w[6]) - m(u8, w[7]),
        m(u1, w[4]) - m(u1, w[5]) - m(u4, w[6]) + m(u1, w[7]),
        w[4] - m(u5, w[5]) + m(u3, w[6]) - m(u6, w[7]),
        w[4] + m(u5, w[5]) + m(u1, w[6]) + m(u7, w[7]),
    ]
    t = [
        z[0] + z[3], z[1] + z[2], z[1] - z[2], z[0] - z[3],
        z[4], z[5], z[6], z[7],
    ]
    return np.array(
        [
            t[0] + t[7], t[1] + t[6], t[2] + t[5], t[3] + t[4],
            t[3] - t[4], t[2] - t[5], t[1] - t[6], t[0] - t[7],
        ],
        dtype=np.float64,
    )


@dataclass(frozen=True)
class ComplexityCount:
    """Additions and bit-shifts of the cheapest applicable evaluation rule."""

    additions: int
    shifts: int
    rule: str


# Magnitudes are on doubled values: |value*2| of 1 or 4 needs a bit-shift.
_SHIFT_MAGS = frozenset((1, 4))

# (name, base additions, per-parameter weights, predicate on |doubled| mags).
# The general rule always applies; the others trade shared sub-expressions
# for lower bases or weights when parameter magnitudes coincide.  Predicates
# use & and pairwise == so they work element-wise on arrays too (|1| is a
# doubled magnitude of 2).
_RULES = (
    ("general", 28, (6, 2, 1, 1, 2, 2, 1, 1), None),
    ("r1", 26, (6, 2, 1, 0, 2, 0, 1, 0),
     lambda m: (m[0] == m[3]) & (m[3] == m[5]) & (m[5] == m[7])),
    ("r2", 26, (0, 2, 0, 1, 3, 0, 1, 0),
     lambda m: (m[0] == 2) & (m[2] == 2) & (m[4] == m[5]) & (m[5] == m[7])),
    ("r3", 26, (0, 2, 1, 1, 3, 0, 1, 0),
     lambda m: (m[0] == 2) & (m[4] == m[5]) & (m[6] == m[7])),
    ("r4", 26, (0, 2, 1, 0, 0, 0, 1, 1),
     lambda m: (m[0] == 2) & (m[4] == 2) & (m[5] == 2) & (m[2] == m[3])),
    ("r5", 26, (0, 2, 1, 0, 0, 2, 0, 1),
     lambda m: (m[0] == 2) & (m[3] == 2) & (m[4] == 2) & (m[6] == 2)),
    ("r6", 26, (6, 2, 0, 1, 1, 2, 0, 1),
     lambda m: (m[0] == m[2]) & (m[5] == m[6])),
    ("r7", 24, (6, 2, 0, 0, 1, 0, 0, 0),
     lambda m: (m[0] == m[2]) & (m[2] == m[3]) & (m[3] == m[5])
     & (m[5] == m[6]) & (m[6] == m[7])),
    ("r8", 24, (0, 2, 0, 0, 0, 0, 0, 0),
     lambda m: (m[0] == 2) & (m[2] == 2) & (m[3] == 2) & (m[4] == 2)
     & (m[5] == 2) & (m[6] == 2) & (m[7] == 2)),
    ("r9", 24, (0, 2, 1, 0, 0, 0, 1, 0),
     lambda m: (m[0] == 2) & (m[4] == 2) & (m[5] == 2) & (m[2] == m[3])
     & (m[6] == m[7])),
)


def _complexity_doubled(doubled) -> tuple[int, int, str]:
    mags = tuple(abs(d) for d in doubled)
    best = None
    for name, base, weights, pred in _RULES:
        if pred is not None and not pred(mags):
            continue
        adds = base - sum(w for w, d in zip(weights, doubled) if d == 0)
        shifts = sum(w for w, m in zip(weights, mags) if m in _SHIFT_MAGS)
        if best is None or (adds, shifts) < best[:2]:
            best = (adds, shifts, name)
    return best


def complexity(params: ParamVector) -> ComplexityCount:
    """Addition/shift cost, minimized over all applicable rules.

    Ties on additions break toward fewer shifts, then rule order (general
    first).
    """
    adds, shifts, rule = _complexity_doubled(params.doubled)
    return ComplexityCount(additions=adds, shifts=shifts, rule=rule)


# Core rows as (coefficient index or +-2 constant, input wire) terms.
# None means the fixed +-1 coefficient; integers index into params.doubled.
_CORE_TERMS = (
    ((None, 0), (None, 1)),
    ((None, 0), (None, 1)),
    ((1, 2), (None, 3)),
    ((None, 2), (1, 3)),
    ((0, 4), (0, 5), (None, 6), (None, 7)),
    ((5, 4), (0, 5), (4, 6), (4, 7)),
    ((0, 4), (3, 5), (2, 6), (0, 7)),
    ((7, 4), (0, 5), (5, 6), (6, 7)),
)


def count_operations(params: ParamVector) -> tuple[int, int]:
    """Instrumented walk of the stage graph: count the additions of
    structurally nonzero terms and the shifts actually applied.

    A zero parameter removes both its multiplication and the downstream
    addition; negation is free.
    """
    doubled = params.doubled
    adds = 8  # stage 1: eight two-term butterflies
    adds += 4  # stage 2: four two-term butterflies, four pass-throughs
    shifts = 0
    for terms in _CORE_TERMS:
        live = 0
        for coef_idx, _wire in terms:
            mag = 2 if coef_idx is None else abs(doubled[coef_idx])
            if mag == 0:
                continue
            live += 1
            if mag in _SHIFT_MAGS:
                shifts += 1
        adds += max(0, live - 1)
    return adds, shifts
