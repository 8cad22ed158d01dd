"""Exhaustive sweep of the 7^8 parameter space and Pareto-front extraction
for the six-objective problem (error energy, mse, -gain, -efficiency,
additions, shifts).

The default pipeline filters to orthogonal candidates first (six integer
polynomial checks prune 5.76M vectors to a few thousand) and only then pays
for metric evaluation.  Candidate evaluation is pure, so the sweep can be
chunked across workers; results are merged in fixed chunk order and are
byte-identical for any worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .core import ALLOWED_DOUBLED, ParamVector, build_matrix, exact_dct_matrix
from .kernel import _RULES, _SHIFT_MAGS
from .metrics import MetricsReport, SignalModel, ar1_covariance, evaluate

__all__ = [
    "N_CANDIDATES",
    "ParetoEntry",
    "SearchResult",
    "enumerate_candidates",
    "all_candidates_doubled",
    "feasible_mask",
    "feasible_candidates",
    "objectives",
    "dominates",
    "pareto_front",
    "run_search",
]

N_CANDIDATES = 7**8  # 5,764,801

_EVAL_CHUNK = 512        # fixed so worker count cannot affect merge order
_SWEEP_CHUNK = 16807     # 7^5, for the unfiltered sweep


def enumerate_candidates() -> Iterator[ParamVector]:
    """All 7^8 parameter vectors in lexicographic order (component order
    -2 < -1 < -1/2 < 0 < 1/2 < 1 < 2, first index most significant)."""
    for doubled in itertools.product(*(ALLOWED_DOUBLED,) * 8):
        yield ParamVector(doubled)


def all_candidates_doubled() -> np.ndarray:
    """The full candidate grid as a (7^8, 8) int8 array of doubled values,
    in the same order as enumerate_candidates."""
    vals = np.array(ALLOWED_DOUBLED, dtype=np.int8)
    grids = np.meshgrid(*([vals] * 8), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def feasible_mask(doubled: np.ndarray) -> np.ndarray:
    """Vectorized twin of core.is_feasible over rows of doubled values."""
    u = [doubled[:, k].astype(np.int32) for k in range(8)]
    u1, u2, u3, u4, u5, u6, u7, u8 = u
    ok = (2 * u1 - u1 * u1 + 2 * u3 - u1 * u4) == 0
    ok &= u1 * (u6 - u1) == 0
    ok &= (u1 * u1 - 2 * u6 + 2 * u7 - u1 * u8) == 0
    ok &= (u1 * u4 + u1 * u5 - u3 * u5 - u1 * u6) == 0
    ok &= (u1 * u8 + u1 * u7 - u3 * u6 - u1 * u4) == 0
    ok &= (u5 * u7 + u5 * u6 - u1 * u1 - u6 * u8) == 0
    ok &= (u1 != 0) | (u3 != 0) | (u4 != 0)
    ok &= (u1 != 0) | (u5 != 0) | (u6 != 0)
    ok &= (u1 != 0) | (u6 != 0) | (u7 != 0) | (u8 != 0)
    return ok


def feasible_candidates() -> Iterator[ParamVector]:
    """Feasible vectors in enumeration order (count is deterministic)."""
    doubled = all_candidates_doubled()
    for row in doubled[feasible_mask(doubled)]:
        yield ParamVector(tuple(int(v) for v in row))


def objectives(report: MetricsReport) -> tuple:
    """Minimization vector; floats rounded to 1e-9 so dominance is not
    decided by summation noise."""
    return (
        round(report.epsilon, 9),
        round(report.mse, 9),
        round(-report.coding_gain_db, 9),
        round(-report.efficiency_pct, 9),
        report.additions,
        report.shifts,
    )


def dominates(x: Sequence, y: Sequence) -> bool:
    """Component-wise dominance for minimization."""
    return all(a <= b for a, b in zip(x, y)) and any(a < b for a, b in zip(x, y))


@dataclass(frozen=True)
class ParetoEntry:
    params: ParamVector
    report: MetricsReport
    canonical: bool


def _nondominated_mask(objs: np.ndarray) -> np.ndarray:
    """Boolean mask of rows not dominated by any other row (minimization).
    Rows with identical values never dominate each other."""
    n = objs.shape[0]
    keep = np.ones(n, dtype=bool)
    for i in range(n):
        if not keep[i]:
            continue
        weakly = np.all(objs <= objs[i], axis=1)
        strictly = np.any(objs < objs[i], axis=1)
        if np.any(weakly & strictly):
            keep[i] = False
    return keep


def _canonical_rep(group: list[ParamVector]) -> ParamVector:
    # Most nonnegative components first, then lexicographically smallest.
    return min(group, key=lambda pv: (-sum(1 for v in pv.values if v >= 0), pv.values))


def pareto_front(
    evaluated: Sequence[tuple[ParamVector, MetricsReport]],
) -> list[ParetoEntry]:
    """Non-dominated entries of an evaluated collection.

    Entries whose objective vectors are identical are grouped; exactly one
    member per group is flagged canonical.  Output order is deterministic:
    additions, then error energy, then shifts, canonical members first
    within a tie group.
    """
    if not evaluated:
        return []
    objs = np.array([objectives(rep) for _, rep in evaluated], dtype=np.float64)
    keep = _nondominated_mask(objs)
    groups: dict[tuple, list[int]] = {}
    for i in np.flatnonzero(keep):
        groups.setdefault(tuple(objs[i]), []).append(int(i))
    entries = []
    for key, idxs in groups.items():
        rep_pv = _canonical_rep([evaluated[i][0] for i in idxs])
        for i in idxs:
            pv, report = evaluated[i]
            entries.append(ParetoEntry(pv, report, canonical=(pv == rep_pv)))
    entries.sort(
        key=lambda e: (
            e.report.additions,
            e.report.epsilon,
            e.report.shifts,
            e.report.mse,
            not e.canonical,
            e.params.values,
        )
    )
    return entries


@dataclass(frozen=True)
class SearchResult:
    entries: tuple[ParetoEntry, ...]
    n_candidates: int
    n_feasible: int | None
    n_evaluated: int
    model: SignalModel
    feasibility_filter: bool

    @property
    def canonical(self) -> tuple[ParetoEntry, ...]:
        return tuple(e for e in self.entries if e.canonical)


def _eval_chunk(args) -> list[tuple[tuple, MetricsReport]]:
    rows, rho = args
    model = SignalModel(rho=rho, n=8)
    out = []
    for row in rows:
        pv = ParamVector(row)
        out.append((row, evaluate(pv, model)))
    return out


def run_search(
    model: SignalModel,
    feasibility_filter: bool = True,
    workers: int = 1,
) -> SearchResult:
    """Full pipeline: enumerate, filter, evaluate, extract the front.

    Deterministic regardless of worker count: candidates are evaluated in
    fixed chunks of the enumeration order and merged in chunk order.
    Without the feasibility filter every nonsingular candidate is evaluated
    with row-norm diagonal scaling (orthogonality not required), which is
    several orders of magnitude slower.
    """
    if model.n != 8:
        raise ValueError(f"the search evaluates 8-point seeds; model size is {model.n}")
    doubled = all_candidates_doubled()
    if not feasibility_filter:
        return _run_search_unfiltered(model, doubled, workers)

    survivors = doubled[feasible_mask(doubled)]
    rows = [tuple(int(v) for v in r) for r in survivors]
    chunks = [rows[i : i + _EVAL_CHUNK] for i in range(0, len(rows), _EVAL_CHUNK)]
    args = [(chunk, model.rho) for chunk in chunks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk_results = list(pool.map(_eval_chunk, args))
    else:
        chunk_results = [_eval_chunk(a) for a in args]
    evaluated = [
        (ParamVector(row), report)
        for chunk in chunk_results
        for row, report in chunk
    ]
    entries = pareto_front(evaluated)
    return SearchResult(
        entries=tuple(entries),
        n_candidates=N_CANDIDATES,
        n_feasible=len(rows),
        n_evaluated=len(rows),
        model=model,
        feasibility_filter=True,
    )


# --- unfiltered sweep -------------------------------------------------------
#
# Metric evaluation is batched in numpy and the front is maintained
# incrementally; candidates that some current front member already dominates
# are discarded before the quadratic local-front pass.

def _basis_decomposition() -> tuple[np.ndarray, np.ndarray]:
    """The parametrized matrix is affine in the parameters: T(a) = T0 + sum
    a_i B_i.  Returns (T0, B) with B of shape (8, 8, 8)."""
    zero = ParamVector((0,) * 8)
    t0 = build_matrix(zero).to_float()
    basis = np.empty((8, 8, 8))
    for i in range(8):
        d = [0] * 8
        d[i] = 2
        basis[i] = build_matrix(ParamVector(tuple(d))).to_float() - t0
    return t0, basis


def _batch_complexity(doubled: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mags = np.abs(doubled.astype(np.int64))
    zero = doubled == 0
    shiftable = np.isin(mags, tuple(_SHIFT_MAGS))
    best_adds = best_shifts = None
    for _name, base, weights, pred in _RULES:
        w = np.array(weights, dtype=np.int64)
        adds = base - zero @ w
        shifts = shiftable @ w
        if pred is None:
            applies = np.ones(len(doubled), dtype=bool)
        else:
            m = [mags[:, k] for k in range(8)]
            applies = pred(m)
        if best_adds is None:
            best_adds, best_shifts = adds, shifts
            continue
        better = applies & (
            (adds < best_adds) | ((adds == best_adds) & (shifts < best_shifts))
        )
        best_adds = np.where(better, adds, best_adds)
        best_shifts = np.where(better, shifts, best_shifts)
    return best_adds, best_shifts


def _batch_objectives(
    doubled: np.ndarray, model: SignalModel, t0: np.ndarray, basis: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Objective vectors for every nonsingular candidate in a chunk.

    Returns (objs, valid_mask).  Candidates are row-normalized (diagonal
    scaling only); the coding gain uses the true matrix inverse, so it is
    meaningful for non-orthogonal matrices too.
    """
    a = doubled.astype(np.float64) / 2.0
    t = t0 + np.einsum("mi,ijk->mjk", a, basis)
    row_norm_sq = np.sum(t * t, axis=2)
    valid = np.all(row_norm_sq > 0, axis=1)
    t = t[valid]
    c_hat = t / np.sqrt(row_norm_sq[valid])[:, :, None]
    dets = np.linalg.det(c_hat)
    nonsing = np.abs(dets) > 1e-12
    valid_idx = np.flatnonzero(valid)[nonsing]
    c_hat = c_hat[nonsing]
    full_valid = np.zeros(len(doubled), dtype=bool)
    full_valid[valid_idx] = True

    dct = exact_dct_matrix(8)
    r = ar1_covariance(SignalModel(rho=model.rho, n=8))
    d = dct - c_hat
    eps = np.pi * np.sum(d * d, axis=(1, 2))
    mse_v = np.einsum("mij,jk,mik->m", d, r, d) / 8.0
    inv_t = np.linalg.inv(c_hat).transpose(0, 2, 1)
    band = np.einsum("mki,mkj,ij->mk", c_hat, c_hat, r)
    synth = np.sum(inv_t * inv_t, axis=2)
    cg = 10.0 * np.mean(np.log10(1.0 / (band * synth)), axis=1)
    r_y = c_hat @ r @ c_hat.transpose(0, 2, 1)
    diag_sum = np.abs(np.diagonal(r_y, axis1=1, axis2=2)).sum(axis=1)
    eta = 100.0 * diag_sum / np.abs(r_y).sum(axis=(1, 2))

    adds, shifts = _batch_complexity(doubled[full_valid])
    objs = np.column_stack(
        [
            np.round(eps, 9),
            np.round(mse_v, 9),
            np.round(-cg, 9),
            np.round(-eta, 9),
            adds.astype(np.float64),
            shifts.astype(np.float64),
        ]
    )
    return objs, full_valid


def _filter_against(front_objs: np.ndarray, objs: np.ndarray) -> np.ndarray:
    """Mask of objs rows not dominated by any front row, block-wise."""
    if front_objs.shape[0] == 0:
        return np.ones(objs.shape[0], dtype=bool)
    keep = np.ones(objs.shape[0], dtype=bool)
    block = max(1, 2_000_000 // max(1, front_objs.shape[0]))
    for s in range(0, objs.shape[0], block):
        chunk = objs[s : s + block]
        weakly = np.all(front_objs[None, :, :] <= chunk[:, None, :], axis=2)
        strictly = np.any(front_objs[None, :, :] < chunk[:, None, :], axis=2)
        keep[s : s + block] = ~np.any(weakly & strictly, axis=1)
    return keep


def _local_front(objs: np.ndarray) -> np.ndarray:
    """Indices of non-dominated rows, visiting points in objective-sum order
    (a dominator always has a strictly smaller sum)."""
    order = np.argsort(objs.sum(axis=1), kind="stable")
    front: list[int] = []
    for idx in order:
        p = objs[idx]
        if front:
            f = objs[front]
            weakly = np.all(f <= p, axis=1)
            strictly = np.any(f < p, axis=1)
            if np.any(weakly & strictly):
                continue
        front.append(int(idx))
    return np.array(sorted(front), dtype=np.int64)


def _run_search_unfiltered(
    model: SignalModel, doubled: np.ndarray, workers: int
) -> SearchResult:
    t0, basis = _basis_decomposition()
    front_objs = np.empty((0, 6))
    front_rows: list[tuple] = []
    n_evaluated = 0
    chunk_args = [
        doubled[s : s + _SWEEP_CHUNK] for s in range(0, len(doubled), _SWEEP_CHUNK)
    ]

    def process(chunk: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        objs, valid = _batch_objectives(chunk, model, t0, basis)
        return objs, chunk[valid]

    def consume(stream) -> None:
        nonlocal front_objs, front_rows, n_evaluated
        for objs, rows in stream:
            n_evaluated += objs.shape[0]
            survivors = _filter_against(front_objs, objs)
            objs, rows = objs[survivors], rows[survivors]
            if objs.shape[0] == 0:
                continue
            local = _local_front(objs)
            objs, rows = objs[local], rows[local]
            # prune current front members the new points dominate
            keep_old = _filter_against(objs, front_objs)
            front_objs = np.vstack([front_objs[keep_old], objs])
            front_rows = [r for r, k in zip(front_rows, keep_old) if k] + [
                tuple(int(v) for v in r) for r in rows
            ]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            consume(pool.map(_sweep_worker, [(c, model.rho) for c in chunk_args]))
    else:
        consume(process(c) for c in chunk_args)

    evaluated = []
    for row, obj in zip(front_rows, front_objs):
        report = MetricsReport(
            epsilon=float(obj[0]),
            mse=float(obj[1]),
            coding_gain_db=float(-obj[2]),
            efficiency_pct=float(-obj[3]),
            additions=int(obj[4]),
            shifts=int(obj[5]),
        )
        evaluated.append((ParamVector(row), report))
    entries = pareto_front(evaluated)
    return SearchResult(
        entries=tuple(entries),
        n_candidates=N_CANDIDATES,
        n_feasible=None,
        n_evaluated=n_evaluated,
        model=model,
        feasibility_filter=False,
    )


def _sweep_worker(args):
    chunk, rho = args
    model = SignalModel(rho=rho, n=8)
    t0, basis = _basis_decomposition()
    objs, valid = _batch_objectives(chunk, model, t0, basis)
    return objs, chunk[valid]
