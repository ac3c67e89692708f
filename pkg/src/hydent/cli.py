"""Command-line front end.

Four subcommands: ``synth`` writes a two-blob benchmark dataset, ``run``
executes one variant on a dataset and prints a JSON summary, ``bench``
sweeps variants over labeled-set sizes and repeats into a results table,
and ``ttest`` compares two variants from such a table.  All numeric output
files are plain headerless CSV.
"""

from __future__ import annotations

import argparse
import csv
import os
import statistics
import sys

from .data import SplitSpec, load_csv, save_csv, split, synth_noisy_gaussian
from .run import (
    RunConfig,
    paired_t_test,
    result_to_json,
    run_baseline,
    write_bcd_trace_csv,
    write_rounds_csv,
)

DEFAULT_VARIANTS = (
    "hydent",
    "hybrid-no-teaching",
    "single-teacher-gaussian",
    "single-teacher-flap",
    "single-learner-gaussian",
    "single-learner-flap",
)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    base = RunConfig()
    parser.add_argument("--kernels", default=",".join(base.kernels),
                        help="comma-separated learner kernels (gaussian, flap)")
    parser.add_argument("--k", type=int, default=base.k, help="neighbors per node")
    parser.add_argument("--sigma", type=float, default=base.sigma, help="kernel width")
    parser.add_argument("--kappa2", type=float, default=base.kappa2, help="prior variance")
    parser.add_argument("--beta0", type=float, default=base.beta0, help="row-sparsity weight")
    parser.add_argument("--beta1", type=float, default=base.beta1, help="binary/orthogonality weight")
    parser.add_argument("--gamma", type=float, default=base.gamma, help="feedback sharpness")
    parser.add_argument("--theta", type=float, default=base.theta, help="diffusion damping")
    parser.add_argument("--threshold", type=float, default=base.threshold,
                        help="selection magnitude cutoff")
    parser.add_argument("--zeta", type=float, default=base.zeta, help="row-norm regularizer offset")
    parser.add_argument("--epsilon-bcd", type=float, default=base.epsilon_bcd,
                        help="solver movement tolerance")
    parser.add_argument("--iter-max", type=int, default=base.iter_max, help="solver sweep cap")
    parser.add_argument("--seed", type=int, default=base.seed, help="run and split seed")


def _config_from(args, seed=None) -> RunConfig:
    return RunConfig(
        kernels=tuple(k.strip() for k in args.kernels.split(",") if k.strip()),
        k=args.k,
        sigma=args.sigma,
        kappa2=args.kappa2,
        beta0=args.beta0,
        beta1=args.beta1,
        gamma=args.gamma,
        theta=args.theta,
        threshold=args.threshold,
        zeta=args.zeta,
        epsilon_bcd=args.epsilon_bcd,
        iter_max=args.iter_max,
        seed=args.seed if seed is None else seed,
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hydent",
                                     description="curriculum-guided hybrid label propagation")
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="write a two-cluster benchmark dataset")
    p_synth.add_argument("--n-per-class", type=int, default=100)
    p_synth.add_argument("--cov", type=float, required=True, help="isotropic covariance scale")
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out", required=True, help="CSV path to write")
    p_synth.add_argument("--header", action="store_true", help="write a header line")

    p_run = sub.add_parser("run", help="run one variant on a dataset")
    p_run.add_argument("--data", required=True, help="dataset CSV (fully labeled)")
    p_run.add_argument("--labeled-per-class", type=int, default=1)
    p_run.add_argument("--variant", default="hydent")
    p_run.add_argument("--trace-dir", help="directory for rounds.csv and bcd_trace.csv")
    p_run.add_argument("--header", action="store_true", help="dataset CSV has a header line")
    _add_config_flags(p_run)

    p_bench = sub.add_parser("bench", help="sweep variants, labeled sizes and repeats")
    p_bench.add_argument("--data", required=True)
    p_bench.add_argument("--labeled-per-class", type=int, nargs="+", default=[1])
    p_bench.add_argument("--repeats", type=int, default=10)
    p_bench.add_argument("--seeds", type=int, nargs="+",
                         help="one seed per repeat (default: 0..repeats-1)")
    p_bench.add_argument("--variants", default=",".join(DEFAULT_VARIANTS),
                         help="comma-separated variant names")
    p_bench.add_argument("--out", required=True, help="results CSV path")
    p_bench.add_argument("--header", action="store_true", help="dataset CSV has a header line")
    _add_config_flags(p_bench)

    p_ttest = sub.add_parser("ttest", help="paired one-sided test between two variants")
    p_ttest.add_argument("--results", required=True, help="CSV written by bench")
    p_ttest.add_argument("--variant-a", required=True)
    p_ttest.add_argument("--variant-b", required=True)
    p_ttest.add_argument("--confidence", type=float, default=0.9)
    return parser


def cmd_synth(args) -> int:
    dataset = synth_noisy_gaussian(args.n_per_class, args.cov, args.seed)
    save_csv(dataset, args.out, header=args.header)
    print(f"wrote {args.out}: n={dataset.n} d={dataset.dim} c={dataset.class_count}")
    return 0


def cmd_run(args) -> int:
    dataset = load_csv(args.data, header=args.header)
    config = _config_from(args)
    labeled_idx, _ = split(dataset, SplitSpec(args.labeled_per_class, seed=config.seed))
    result = run_baseline(dataset, labeled_idx, config, args.variant)
    if args.trace_dir:
        os.makedirs(args.trace_dir, exist_ok=True)
        write_rounds_csv(result, os.path.join(args.trace_dir, "rounds.csv"))
        write_bcd_trace_csv(result, os.path.join(args.trace_dir, "bcd_trace.csv"))
    print(result_to_json(result))
    return 0


def cmd_bench(args) -> int:
    dataset = load_csv(args.data, header=args.header)
    variants = [v.strip() for v in args.variants.split(",") if v.strip()]
    if not variants:
        raise ValueError("no variants given")
    if args.repeats < 1:
        raise ValueError("repeats must be positive")
    seeds = args.seeds if args.seeds is not None else list(range(args.repeats))
    if len(seeds) != args.repeats:
        raise ValueError(f"got {len(seeds)} seeds for {args.repeats} repeats")

    rows = []
    cells = {}
    for variant in variants:
        for l in args.labeled_per_class:
            for repeat, seed in enumerate(seeds):
                config = _config_from(args, seed=seed)
                labeled_idx, _ = split(dataset, SplitSpec(l, seed=seed))
                result = run_baseline(dataset, labeled_idx, config, variant)
                rows.append((variant, l, repeat, seed, result.accuracy))
                cells.setdefault((variant, l), []).append(result.accuracy)

    with open(args.out, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        for variant, l, repeat, seed, accuracy in rows:
            writer.writerow([variant, l, repeat, seed, repr(accuracy)])
        # One summary row per (variant, l): mean in the seed column, std in
        # the accuracy column, "summary" marking the repeat column.
        for (variant, l), accs in cells.items():
            mean = statistics.fmean(accs)
            std = statistics.stdev(accs) if len(accs) > 1 else 0.0
            writer.writerow([variant, l, "summary", repr(mean), repr(std)])
    print(f"wrote {args.out}: {len(rows)} result rows, {len(cells)} summary rows")
    return 0


def _read_bench(path):
    table = {}
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.reader(handle):
            if len(row) != 5:
                raise ValueError(f"{path}: expected 5 columns, got {len(row)}")
            variant, l, repeat = row[0], row[1], row[2]
            if repeat == "summary":
                continue
            table[(variant, int(l), int(repeat))] = float(row[4])
    return table


def cmd_ttest(args) -> int:
    table = _read_bench(args.results)
    for name in (args.variant_a, args.variant_b):
        if not any(key[0] == name for key in table):
            raise ValueError(f"variant {name!r} not present in {args.results}")
    sizes = sorted({l for variant, l, _ in table if variant == args.variant_a})
    for l in sizes:
        repeats = sorted(r for variant, size, r in table if variant == args.variant_a and size == l)
        try:
            a = [table[(args.variant_a, l, r)] for r in repeats]
            b = [table[(args.variant_b, l, r)] for r in repeats]
        except KeyError as missing:
            raise ValueError(f"unpaired rows: no accuracy for {missing.args[0]}") from None
        t, significant = paired_t_test(a, b, args.confidence)
        mark = "✓" if significant else "-"
        print(f"l={l}: t={t:.4f} {mark}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"synth": cmd_synth, "run": cmd_run, "bench": cmd_bench, "ttest": cmd_ttest}
    try:
        return handlers[args.command](args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
