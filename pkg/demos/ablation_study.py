"""Compare the full method against its ablations.

Four switches matter: how many learners propagate (one kernel or the
hybrid pair), and whether teachers select curricula or the whole
frontier advances at once.  This script runs all six variants over a
few paired seeds at one noise level, prints mean and spread, and tests
each ablation against the full method with the paired one-sided t-test
at confidence 0.9.

Run:  python3 demos/ablation_study.py [covariance_scale] [n_seeds]
"""

import sys

import numpy as np

from hydent import RunConfig, SplitSpec, paired_t_test, run_baseline, split, synth_noisy_gaussian

VARIANTS = (
    "hydent",
    "hybrid-no-teaching",
    "single-teacher-gaussian",
    "single-teacher-flap",
    "single-learner-gaussian",
    "single-learner-flap",
)


def main():
    cov = float(sys.argv[1]) if len(sys.argv) > 1 else 1.0
    n_seeds = int(sys.argv[2]) if len(sys.argv) > 2 else 5
    print(f"covariance scale {cov}, {n_seeds} paired seeds, 100 points per class\n")

    scores = {v: [] for v in VARIANTS}
    for seed in range(n_seeds):
        dataset = synth_noisy_gaussian(100, cov, seed=seed)
        labeled_idx, _ = split(dataset, SplitSpec(1, seed=seed))
        for variant in VARIANTS:
            result = run_baseline(dataset, labeled_idx, RunConfig(seed=seed), variant)
            scores[variant].append(result.accuracy)

    print(f"{'variant':<26} {'mean':>7} {'std':>7}   vs full method")
    base = scores["hydent"]
    for variant in VARIANTS:
        accs = scores[variant]
        mean, std = np.mean(accs), np.std(accs, ddof=1)
        if variant == "hydent":
            verdict = "-"
        else:
            t, significant = paired_t_test(base, accs)
            verdict = f"t={t:+.2f} {'significantly behind' if significant else 'no significant gap'}"
        print(f"{variant:<26} {mean:7.4f} {std:7.4f}   {verdict}")


if __name__ == "__main__":
    main()
