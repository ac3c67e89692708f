"""Curriculum-guided hybrid label propagation.

A small toolkit for semi-supervised classification on graphs: several
propagation learners built from different edge kernels share one pool of
unlabeled nodes, and a matching ensemble of teachers repeatedly selects
the simplest candidates for them to learn next.  See README.md for the
workflow and the command-line interface.
"""

from .data import (
    CLUSTER_CENTERS,
    UNLABELED,
    Dataset,
    SplitSpec,
    load_csv,
    save_csv,
    split,
    synth_noisy_gaussian,
)
from .feedback import feedback_value, initial_size, next_size
from .graph import (
    LearnerGraph,
    assemble,
    commute_table,
    commute_time,
    dump_edges,
    flap_style_weights,
    gaussian_weights,
    knn_pattern,
    squared_distances,
)
from .propagate import final_labels, init_labels, propagate_round, save_scores, steady_state
from .run import (
    RunConfig,
    RunResult,
    RoundRecord,
    evaluate,
    paired_t_test,
    result_to_json,
    run_baseline,
    run_hydent,
    write_bcd_trace_csv,
    write_rounds_csv,
)
from .teacher import (
    TeacherState,
    candidate_set,
    class_gap,
    covariance,
    gap_matrix,
    make_teacher,
    reliability_term,
    teaching_matrix,
)
from .teaching import (
    TeachingSolution,
    bcd_solve,
    extract_curriculum,
    gradient,
    l21_norm,
    l21_weight_matrix,
    objective,
    stack_blocks,
    surrogate,
    wolfe_step,
)

__version__ = "0.1.0"

__all__ = [
    "CLUSTER_CENTERS",
    "Dataset",
    "LearnerGraph",
    "RoundRecord",
    "RunConfig",
    "RunResult",
    "SplitSpec",
    "TeacherState",
    "TeachingSolution",
    "UNLABELED",
    "assemble",
    "bcd_solve",
    "candidate_set",
    "class_gap",
    "commute_table",
    "commute_time",
    "covariance",
    "dump_edges",
    "evaluate",
    "extract_curriculum",
    "feedback_value",
    "final_labels",
    "flap_style_weights",
    "gap_matrix",
    "gaussian_weights",
    "gradient",
    "init_labels",
    "initial_size",
    "knn_pattern",
    "l21_norm",
    "l21_weight_matrix",
    "load_csv",
    "make_teacher",
    "next_size",
    "objective",
    "paired_t_test",
    "propagate_round",
    "reliability_term",
    "result_to_json",
    "run_baseline",
    "run_hydent",
    "save_csv",
    "save_scores",
    "split",
    "squared_distances",
    "stack_blocks",
    "steady_state",
    "surrogate",
    "synth_noisy_gaussian",
    "teaching_matrix",
    "wolfe_step",
    "write_bcd_trace_csv",
    "write_rounds_csv",
]
