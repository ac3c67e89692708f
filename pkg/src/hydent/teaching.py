"""Joint curriculum selection across teachers.

Every teacher m scores its candidate pool with a symmetric matrix R(m); a
relaxed binary selection matrix S(m) of shape (pool size, curriculum size)
encodes which candidates that teacher picks.  The joint objective couples
the per-teacher scores tr(S'RS) with a row-sparsity term on the stacked
matrix (S(1), ..., S(M)), so a candidate whose whole stacked row is driven
to zero is one that every teacher agrees is difficult, plus penalties
pushing each S toward binary, orthogonal-column matrices.  The solver sweeps the
blocks with gradient steps under a Wolfe line search, refreshing the
row-norm weights once per sweep, which makes the objective monotonically
non-increasing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


def stack_blocks(blocks) -> np.ndarray:
    """Side-by-side view (b, s*M) of the per-teacher selection blocks."""
    return np.hstack(blocks)


def l21_norm(matrix: np.ndarray) -> float:
    """Sum of row 2-norms."""
    return float(np.linalg.norm(matrix, axis=1).sum())


def l21_weight_matrix(stacked: np.ndarray, zeta: float = 1e-8) -> np.ndarray:
    """Diagonal of the row-norm reweighting matrix: 1 / (2 ||row||_2 + zeta).

    tr(S' diag(h) S) reproduces the row-sparsity term exactly in the limit
    zeta -> 0; the small offset keeps the weights finite on zero rows.
    """
    if zeta <= 0:
        raise ValueError("zeta must be positive")
    return 1.0 / (2.0 * np.linalg.norm(stacked, axis=1) + zeta)


def _check_blocks(blocks, r_list):
    if len(blocks) != len(r_list) or not blocks:
        raise ValueError("need one score matrix per selection block")
    b, s = blocks[0].shape
    for block, r in zip(blocks, r_list):
        if block.shape != (b, s):
            raise ValueError("all selection blocks must share one shape")
        if r.shape != (b, b):
            raise ValueError(f"score matrix shape {r.shape} does not match pool size {b}")


def objective(blocks, r_list, beta0: float, beta1: float) -> float:
    """Full joint objective, with the row-sparsity term computed exactly."""
    _check_blocks(blocks, r_list)
    s = blocks[0].shape[1]
    eye = np.eye(s)
    total = beta0 * l21_norm(stack_blocks(blocks))
    for block, r in zip(blocks, r_list):
        total += float(np.sum(block * (r @ block)))
        total += beta1 * float(np.sum((block * block - block) ** 2))
        total += beta1 * float(np.sum((block.T @ block - eye) ** 2))
    return total


def surrogate(block: np.ndarray, r: np.ndarray, h: np.ndarray, beta0: float, beta1: float) -> float:
    """One block's objective with the row-sparsity term majorized by h.

    This is the function the per-block gradient and line search act on; h
    stays fixed for a whole sweep.
    """
    eye = np.eye(block.shape[1])
    value = float(np.sum(block * (r @ block)))
    value += beta0 * float(np.sum(h * np.einsum("ij,ij->i", block, block)))
    value += beta1 * float(np.sum((block * block - block) ** 2))
    value += beta1 * float(np.sum((block.T @ block - eye) ** 2))
    return value


def gradient(block: np.ndarray, r: np.ndarray, h: np.ndarray, beta0: float, beta1: float) -> np.ndarray:
    """Gradient of :func:`surrogate` with respect to the block."""
    sq = block * block
    linear = r @ block + beta0 * (h[:, None] * block)
    linear += beta1 * (2.0 * (block @ (block.T @ block)) - block)
    return 2.0 * (linear + beta1 * (2.0 * sq * block - 3.0 * sq))


def wolfe_step(
    x: np.ndarray,
    direction: np.ndarray,
    value,
    grad,
    *,
    initial: float = 1.0,
    c1: float = 1e-4,
    c2: float = 0.9,
    max_iter: int = 60,
    max_backtrack: int = 30,
) -> float:
    """Step size along ``direction`` satisfying the Wolfe conditions.

    Brackets by bisection/expansion until both the sufficient-decrease and
    curvature conditions hold; if curvature proves unattainable, retreats
    to plain backtracking with at most ``max_backtrack`` halvings so the
    step at least decreases the objective.  A zero (or ascent) direction
    returns 0.0, signalling a stationary point.
    """
    slope0 = float(np.vdot(grad(x), direction))
    if slope0 >= 0.0:
        return 0.0
    f0 = value(x)
    lo, hi = 0.0, np.inf
    t = initial
    for _ in range(max_iter):
        if value(x + t * direction) > f0 + c1 * t * slope0:
            hi = t
            t = 0.5 * (lo + hi)
        elif float(np.vdot(grad(x + t * direction), direction)) < c2 * slope0:
            lo = t
            t = 2.0 * lo if np.isinf(hi) else 0.5 * (lo + hi)
        else:
            return t
    t = initial
    for _ in range(max_backtrack):
        if value(x + t * direction) <= f0 + c1 * t * slope0:
            return t
        t *= 0.5
    return t


def extract_curriculum(blocks, s: int, threshold: float = 0.001):
    """Pick the curriculum rows and per-teacher weights out of a solution.

    Entries below ``threshold`` in magnitude are zeroed; rows are ranked by
    surviving-entry count, then row norm, then candidate index, and the top
    ``s`` (or fewer, if thresholding left fewer nonzero rows) become the
    curriculum.  Each curriculum row gets per-teacher weights proportional
    to the absolute surviving mass in that teacher's block.

    Returns ``(positions, weights)`` where positions index into the
    candidate pool in rank order and weights has one row-stochastic row per
    position.
    """
    stacked = stack_blocks(blocks)
    b = stacked.shape[0]
    teachers = len(blocks)
    want = min(s, b)

    kept = np.where(np.abs(stacked) >= threshold, stacked, 0.0)
    counts = (kept != 0.0).sum(axis=1)
    if not counts.any():
        warnings.warn("every selection entry fell below the threshold; ranking by raw row norms")
        order = np.lexsort((np.arange(b), -np.linalg.norm(stacked, axis=1)))
        positions = order[:want]
        return positions, np.full((len(positions), teachers), 1.0 / teachers)

    norms = np.linalg.norm(kept, axis=1)
    order = np.lexsort((np.arange(b), -norms, -counts))
    positions = order[: min(want, int((counts > 0).sum()))]

    per_teacher = np.abs(kept[positions]).reshape(len(positions), teachers, -1).sum(axis=2)
    totals = per_teacher.sum(axis=1)
    weights = np.full((len(positions), teachers), 1.0 / teachers)
    covered = totals > 0
    weights[covered] = per_teacher[covered] / totals[covered, None]
    return positions, weights


@dataclass(frozen=True)
class TeachingSolution:
    """Outcome of one joint curriculum optimization.

    ``curriculum`` holds candidate-pool positions in rank order and
    ``weights`` the matching per-teacher combination weights.  The
    objective trace has one entry per sweep plus the starting value.
    """

    blocks: tuple
    curriculum: np.ndarray
    weights: np.ndarray
    objective_trace: np.ndarray
    converged: bool

    @property
    def stacked(self) -> np.ndarray:
        return stack_blocks(self.blocks)


def bcd_solve(
    r_list,
    beta0: float,
    beta1: float,
    s: int,
    init_seed: int,
    *,
    zeta: float = 1e-8,
    epsilon: float = 1e-4,
    iter_max: int = 300,
    threshold: float = 0.001,
    init=None,
) -> TeachingSolution:
    """Minimize the joint curriculum objective by per-block gradient sweeps.

    Each sweep refreshes the row-norm weights from the current stacked
    matrix, then updates every block once along its negative gradient with
    a Wolfe-searched step (the blocks are independent given the weights,
    so their updates commute).  Stops when the stacked matrix moves less
    than ``epsilon`` in Frobenius norm or after ``iter_max`` sweeps.

    ``init`` may supply explicit starting blocks (e.g. for warm starts);
    otherwise entries start uniform on [0, 1) drawn from ``init_seed``.
    """
    r_list = [np.asarray(r, dtype=float) for r in r_list]
    b = r_list[0].shape[0]
    if any(r.shape != (b, b) for r in r_list):
        raise ValueError("score matrices must be square and equally sized")
    if s < 1:
        raise ValueError("curriculum size must be positive")
    s = min(s, b)

    if init is None:
        rng = np.random.default_rng(init_seed)
        blocks = [rng.random((b, s)) for _ in r_list]
    else:
        blocks = [np.array(block, dtype=float, copy=True) for block in init]
        _check_blocks(blocks, r_list)
        if blocks[0].shape[1] != s:
            raise ValueError("init blocks must have s columns")

    trace = [objective(blocks, r_list, beta0, beta1)]
    step_hint = [1.0] * len(r_list)
    converged = False
    for _ in range(iter_max):
        h = l21_weight_matrix(stack_blocks(blocks), zeta)
        moved = 0.0
        for m, r in enumerate(r_list):
            block = blocks[m]

            def value(x, r=r):
                return surrogate(x, r, h, beta0, beta1)

            def grad(x, r=r):
                return gradient(x, r, h, beta0, beta1)

            descent = -grad(block)
            tau = wolfe_step(block, descent, value, grad, initial=step_hint[m])
            if tau > 0.0:
                candidate = block + tau * descent
                # Guard the sweep-level descent argument: never accept a step
                # the line search failed to make non-increasing.
                if value(candidate) <= value(block):
                    moved += float(np.sum((candidate - block) ** 2))
                    blocks[m] = candidate
                    step_hint[m] = 2.0 * tau
        trace.append(objective(blocks, r_list, beta0, beta1))
        if np.sqrt(moved) < epsilon:
            converged = True
            break

    stacked = stack_blocks(blocks)
    if stacked.min() < -0.5 or stacked.max() > 1.5:
        warnings.warn("selection entries drifted outside [-0.5, 1.5]")
    curriculum, weights = extract_curriculum(blocks, s, threshold)
    return TeachingSolution(tuple(blocks), curriculum, weights, np.asarray(trace), converged)
