"""End-to-end driver: rounds of teaching and propagation, then readout.

A run starts from a fully labeled dataset and the indices revealed to the
algorithm.  Each round gathers the frontier of unlabeled nodes adjacent to
anything already labeled or learned, asks the teachers for a curriculum
(unless the variant disables teaching, in which case the whole frontier is
taken), propagates one synchronous step, and measures feedback to size the
next curriculum.  When nothing is left unlearned the per-learner damped
diffusions are solved to their limits, averaged, and read out by argmax.

Ablation variants reuse the same driver so that, for example, the full
method with one learner and the coupling weight at zero reproduces the
single-teacher baseline bit for bit.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .feedback import feedback_value, initial_size, next_size
from .graph import assemble, flap_style_weights, gaussian_weights, knn_pattern
from .propagate import final_labels, init_labels, propagate_round, steady_state
from .teacher import candidate_set, make_teacher, teaching_matrix
from .teaching import bcd_solve

KNOWN_KERNELS = ("gaussian", "flap")

VARIANTS = (
    "hydent",
    "hybrid-no-teaching",
    "single-teacher-<kernel>",
    "single-learner-<kernel>",
)


@dataclass(frozen=True)
class RunConfig:
    kernels: tuple = ("gaussian", "flap")
    k: int = 5
    sigma: float = 1.0
    kappa2: float = 100.0
    beta0: float = 100.0
    beta1: float = 100.0
    gamma: float = 0.5
    theta: float = 0.05
    threshold: float = 0.001
    zeta: float = 1e-8
    epsilon_bcd: float = 1e-4
    iter_max: int = 300
    seed: int = 0

    def __post_init__(self):
        if not self.kernels:
            raise ValueError("need at least one learner kernel")
        for kernel in self.kernels:
            if kernel not in KNOWN_KERNELS:
                raise ValueError(f"unknown kernel {kernel!r}; choose from {KNOWN_KERNELS}")
        if self.k < 1 or self.sigma <= 0 or self.kappa2 <= 0:
            raise ValueError("k, sigma and kappa2 must be positive")
        if self.beta0 < 0 or self.beta1 < 0 or self.gamma <= 0:
            raise ValueError("beta0 and beta1 must be nonnegative, gamma positive")
        if not 0.0 <= self.theta < 1.0:
            raise ValueError("theta must lie in [0, 1)")
        if self.threshold < 0 or self.zeta <= 0 or self.epsilon_bcd <= 0 or self.iter_max < 1:
            raise ValueError("threshold, zeta, epsilon_bcd and iter_max must be positive")


@dataclass(frozen=True)
class RoundRecord:
    """Trace of one teaching round."""

    index: int
    pool_size: int
    size: int
    feedback: float
    seconds: float
    objective: np.ndarray
    curriculum: np.ndarray
    weights: np.ndarray
    scores: np.ndarray


@dataclass(frozen=True)
class RunResult:
    variant: str
    predictions: np.ndarray
    accuracy: float
    rounds: tuple
    seconds: float
    scores: np.ndarray
    config: RunConfig = field(repr=False, default=None)


def evaluate(predictions, truth, unlabeled_idx) -> float:
    """Fraction of the given indices predicted correctly.

    An empty index set counts as vacuously perfect.
    """
    unlabeled_idx = np.asarray(unlabeled_idx, dtype=int)
    if unlabeled_idx.size == 0:
        return 1.0
    predictions = np.asarray(predictions)
    truth = np.asarray(truth)
    return float(np.mean(predictions[unlabeled_idx] == truth[unlabeled_idx]))


def _build_graphs(features, kernels, config):
    pattern = knn_pattern(features, config.k)
    graphs = []
    for kernel in kernels:
        if kernel == "gaussian":
            weights = gaussian_weights(pattern, features, config.sigma)
        else:
            weights = flap_style_weights(pattern, features, config.sigma)
        graphs.append(assemble(weights))
    return graphs


def _classes_so_far(masked, learned, scores, class_count):
    """Current per-class membership: given labels plus learned argmaxes."""
    groups = {c: list(np.flatnonzero(masked == c)) for c in range(class_count)}
    for i in learned:
        groups[int(np.argmax(scores[i]))].append(int(i))
    return {c: np.sort(np.asarray(group, dtype=int)) for c, group in groups.items()}


def _parse_variant(variant, kernels):
    """Map a variant name to (kernels, teaching on, beta0 override)."""
    if variant == "hydent":
        return tuple(kernels), True, None
    if variant == "hybrid-no-teaching":
        return tuple(kernels), False, None
    for prefix, teaching in (("single-teacher-", True), ("single-learner-", False)):
        if variant.startswith(prefix):
            tag = variant[len(prefix):]
            if tag in kernels:
                return (tag,), teaching, 0.0 if teaching else None
            if tag.isdigit() and 1 <= int(tag) <= len(kernels):
                return (kernels[int(tag) - 1],), teaching, 0.0 if teaching else None
    raise ValueError(f"unknown variant {variant!r}; expected one of {VARIANTS} "
                     f"with <kernel> a configured kernel name or 1-based position")


def _drive(dataset, labeled_idx, config, kernels, teaching, beta0, variant, round_hook):
    started = time.perf_counter()
    labeled_idx = np.asarray(labeled_idx, dtype=int)
    n = dataset.n
    c = dataset.class_count
    masked = np.full(n, -1, dtype=int)
    masked[labeled_idx] = dataset.labels[labeled_idx]
    if np.any(dataset.labels[labeled_idx] < 0):
        raise ValueError("labeled indices must carry known classes")

    graphs = _build_graphs(dataset.features, kernels, config)
    iterations = [g.iteration for g in graphs]
    teachers = [make_teacher(g, config.kappa2) for g in graphs] if teaching else None

    start = init_labels(masked, c)
    scores = start
    learned = np.empty(0, dtype=int)
    remaining = np.setdiff1d(np.arange(n), labeled_idx)
    unlabeled0 = remaining.copy()
    rng = np.random.default_rng(config.seed)
    uniform = np.full(len(kernels), 1.0 / len(kernels))

    records = []
    feedback = None
    while remaining.size:
        tick = time.perf_counter()
        anchors = np.sort(np.concatenate([labeled_idx, learned]))
        candidates = candidate_set(graphs, anchors, remaining)
        pool = candidates.size
        if teaching:
            want = initial_size(pool, config.gamma) if feedback is None else next_size(pool, feedback)
            r_list = [
                teaching_matrix(teacher, candidates, _classes_so_far(masked, learned, scores, c))
                for teacher in teachers
            ]
            solution = bcd_solve(
                r_list,
                beta0,
                config.beta1,
                min(want, pool),
                int(rng.integers(2 ** 32)),
                zeta=config.zeta,
                epsilon=config.epsilon_bcd,
                iter_max=config.iter_max,
                threshold=config.threshold,
            )
            chosen = candidates[solution.curriculum]
            weights = solution.weights
            objective = solution.objective_trace
        else:
            chosen = candidates
            weights = np.tile(uniform, (pool, 1))
            objective = np.empty(0)

        scores = propagate_round(scores, iterations, chosen, weights, learned, start)
        feedback = feedback_value(scores[chosen], c, config.gamma)
        learned = np.concatenate([learned, chosen])
        remaining = np.setdiff1d(remaining, chosen)

        record = RoundRecord(
            index=len(records) + 1,
            pool_size=pool,
            size=int(chosen.size),
            feedback=feedback,
            seconds=time.perf_counter() - tick,
            objective=objective,
            curriculum=chosen,
            weights=weights,
            scores=scores,
        )
        records.append(record)
        if round_hook is not None:
            round_hook(record)

    limits = [steady_state(p, scores, config.theta) for p in iterations]
    mean_scores = sum(limits) / len(limits)
    predictions = final_labels(mean_scores, masked)
    accuracy = evaluate(predictions, dataset.labels, unlabeled0)
    return RunResult(
        variant=variant,
        predictions=predictions,
        accuracy=accuracy,
        rounds=tuple(records),
        seconds=time.perf_counter() - started,
        scores=mean_scores,
        config=config,
    )


def run_baseline(dataset: Dataset, labeled_idx, config: RunConfig, variant: str, round_hook=None) -> RunResult:
    """Run one variant: the full method, a no-teaching ablation, or a
    single-teacher / single-learner reduction."""
    kernels, teaching, beta0_override = _parse_variant(variant, config.kernels)
    beta0 = config.beta0 if beta0_override is None else beta0_override
    return _drive(dataset, labeled_idx, config, kernels, teaching, beta0, variant, round_hook)


def run_hydent(dataset: Dataset, labeled_idx, config: RunConfig, round_hook=None) -> RunResult:
    """Run the full method with every configured learner."""
    return run_baseline(dataset, labeled_idx, config, "hydent", round_hook=round_hook)


# One-sided critical values of Student's t at confidence 0.9, df 1..30.
_T_CRITICAL_90 = (
    3.078, 1.886, 1.638, 1.533, 1.476, 1.440, 1.415, 1.397, 1.383, 1.372,
    1.363, 1.356, 1.350, 1.345, 1.341, 1.337, 1.333, 1.330, 1.328, 1.325,
    1.323, 1.321, 1.319, 1.318, 1.316, 1.315, 1.314, 1.313, 1.311, 1.310,
)
_T_CRITICAL_90_LARGE = 1.2816


def paired_t_test(accuracies_a, accuracies_b, confidence: float = 0.9):
    """One-sided paired test that mean(a - b) > 0.

    Returns ``(t, significant)``.  Zero-variance differences are decided
    degenerately: a positive mean is certain improvement, anything else is
    not significant.  Only the 0.9 confidence level is supported; its
    critical values are built in.
    """
    a = np.asarray(accuracies_a, dtype=float)
    b = np.asarray(accuracies_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("paired samples must be equal-length vectors")
    if a.size < 2:
        raise ValueError("need at least two paired runs")
    if abs(confidence - 0.9) > 1e-12:
        raise ValueError("only confidence 0.9 is supported")
    diff = a - b
    mean = float(diff.mean())
    sd = float(diff.std(ddof=1))
    df = diff.size - 1
    critical = _T_CRITICAL_90[df - 1] if df <= 30 else _T_CRITICAL_90_LARGE
    if sd == 0.0:
        if mean > 0.0:
            return math.inf, True
        return (0.0 if mean == 0.0 else -math.inf), False
    t = mean / (sd / math.sqrt(diff.size))
    return float(t), bool(t > critical)


def config_to_dict(config: RunConfig) -> dict:
    return {
        "kernels": list(config.kernels),
        "k": config.k,
        "sigma": config.sigma,
        "kappa2": config.kappa2,
        "beta0": config.beta0,
        "beta1": config.beta1,
        "gamma": config.gamma,
        "theta": config.theta,
        "threshold": config.threshold,
        "zeta": config.zeta,
        "epsilon_bcd": config.epsilon_bcd,
        "iter_max": config.iter_max,
        "seed": config.seed,
    }


def result_to_json(result: RunResult) -> str:
    """Stable JSON summary of a run (schema field first)."""
    payload = {
        "schema": "hydent.run.v1",
        "variant": result.variant,
        "accuracy": result.accuracy,
        "rounds": len(result.rounds),
        "seconds": result.seconds,
        "config": config_to_dict(result.config) if result.config is not None else None,
    }
    return json.dumps(payload, indent=2)


def write_rounds_csv(result: RunResult, path) -> None:
    """Per-round trace: round, b, s, g, seconds."""
    with open(path, "w") as handle:
        for r in result.rounds:
            handle.write(f"{r.index},{r.pool_size},{r.size},{repr(r.feedback)},{repr(r.seconds)}\n")


def write_bcd_trace_csv(result: RunResult, path) -> None:
    """Per-sweep objective trace: round, iteration, Q.

    Rounds without a teaching step (no-teaching variants) contribute no
    rows; the file is still created.
    """
    with open(path, "w") as handle:
        for r in result.rounds:
            for i, q in enumerate(r.objective):
                handle.write(f"{r.index},{i},{repr(float(q))}\n")
