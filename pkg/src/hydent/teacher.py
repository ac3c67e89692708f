"""Per-teacher difficulty scoring primitives.

A teacher judges how easy a frontier candidate is for its learner using two
signals: reliability (low conditional variance of the candidate's label
under a Gaussian process on the graph, given the labeled examples) and
discriminability (a large gap between the candidate's average commute times
to its two closest labeled classes).  Both are rolled into one symmetric
score matrix over the current candidate pool.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .graph import LearnerGraph, commute_table

# Ties in average commute time would make 1/gap blow up; a tied candidate is
# simply non-discriminable, so its gap is floored at a small positive value.
GAP_FLOOR = 1e-8

# Jitter Sigma_LL only when it is this badly conditioned.
COND_LIMIT = 1e12


@dataclass(frozen=True)
class TeacherState:
    """Precomputed per-teacher quantities, fixed for a whole run.

    ``covariance`` is the GP prior covariance on all n nodes and
    ``commute`` the all-pairs commute-time table of this teacher's graph.
    """

    covariance: np.ndarray
    commute: np.ndarray
    kappa2: float


def covariance(graph: LearnerGraph, kappa2: float = 100.0) -> np.ndarray:
    """GP prior covariance: the inverse of (Laplacian + I / kappa2).

    ``kappa2`` sharpens or flattens the prior; the Laplacian is PSD, so the
    shifted matrix is positive definite for any finite positive kappa2.
    """
    if kappa2 <= 0:
        raise ValueError("kappa2 must be positive")
    shifted = graph.laplacian + np.eye(graph.n) / kappa2
    sigma = np.linalg.inv(shifted)
    return 0.5 * (sigma + sigma.T)


def make_teacher(graph: LearnerGraph, kappa2: float = 100.0) -> TeacherState:
    """Bundle the covariance and commute table for one teacher-learner pair."""
    return TeacherState(covariance(graph, kappa2), commute_table(graph), kappa2)


def candidate_set(
    graphs: Sequence[LearnerGraph],
    labeled: Sequence[int],
    unlabeled: Sequence[int],
) -> np.ndarray:
    """Frontier candidates: unlabeled direct neighbors of the labeled set.

    The frontiers of all learners are unioned so that every teacher scores
    the same candidate list.  If no unlabeled example touches the labeled
    set (a disconnected frontier) the whole unlabeled set is promoted, so
    the propagation loop can always make progress.
    """
    labeled = np.asarray(labeled, dtype=int)
    unlabeled = np.asarray(unlabeled, dtype=int)
    if unlabeled.size == 0:
        return np.empty(0, dtype=int)
    if labeled.size == 0:
        raise ValueError("labeled set must be nonempty")
    frontier = np.zeros(0, dtype=bool)
    for graph in graphs:
        touches = graph.adjacency[np.ix_(unlabeled, labeled)].sum(axis=1) > 0
        frontier = touches if frontier.size == 0 else (frontier | touches)
    if not frontier.any():
        return np.sort(unlabeled)
    return np.sort(unlabeled[frontier])


def reliability_term(
    sigma: np.ndarray, candidates: Sequence[int], labeled: Sequence[int]
) -> np.ndarray:
    """Conditional covariance of candidate labels given the labeled labels.

    Returns Sigma_BB - Sigma_BL Sigma_LL^-1 Sigma_LB, the covariance of the
    GP posterior over the candidate pool; its trace is the quantity each
    teacher minimizes when judging reliability.
    """
    candidates = np.asarray(candidates, dtype=int)
    labeled = np.asarray(labeled, dtype=int)
    sig_bb = sigma[np.ix_(candidates, candidates)]
    sig_bl = sigma[np.ix_(candidates, labeled)]
    sig_ll = sigma[np.ix_(labeled, labeled)]
    if np.linalg.cond(sig_ll) > COND_LIMIT:
        sig_ll = sig_ll + (1e-10 * np.trace(sig_ll) / len(labeled)) * np.eye(len(labeled))
    conditional = sig_bb - sig_bl @ np.linalg.solve(sig_ll, sig_bl.T)
    return 0.5 * (conditional + conditional.T)


def class_gap(
    teacher: TeacherState, candidate: int, labeled_by_class: Mapping[int, Sequence[int]]
) -> float:
    """Commute-time gap between the candidate's two closest labeled classes."""
    averages = sorted(
        float(np.mean(teacher.commute[candidate, np.asarray(members, dtype=int)]))
        for members in labeled_by_class.values()
        if len(members) > 0
    )
    if len(averages) < 2:
        raise ValueError("need labeled members of at least 2 classes")
    return max(averages[1] - averages[0], GAP_FLOOR)


def gap_matrix(
    teacher: TeacherState,
    candidates: Sequence[int],
    labeled_by_class: Mapping[int, Sequence[int]],
) -> np.ndarray:
    """Diagonal discriminability penalty, 1/gap per candidate.

    With fewer than two labeled classes there is nothing to discriminate
    between, so the penalty is disabled (all zeros) for this round.
    """
    b = len(candidates)
    populated = sum(1 for members in labeled_by_class.values() if len(members) > 0)
    if populated < 2:
        return np.zeros((b, b))
    gaps = np.array([class_gap(teacher, i, labeled_by_class) for i in candidates])
    return np.diag(1.0 / gaps)


def teaching_matrix(
    teacher: TeacherState,
    candidates: Sequence[int],
    labeled_by_class: Mapping[int, Sequence[int]],
) -> np.ndarray:
    """Per-teacher score matrix: reliability term plus discriminability diagonal."""
    labeled = np.sort(np.concatenate([np.asarray(v, dtype=int) for v in labeled_by_class.values()]))
    rel = reliability_term(teacher.covariance, candidates, labeled)
    return rel + gap_matrix(teacher, candidates, labeled_by_class)
