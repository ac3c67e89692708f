"""How the feedback loop paces the curriculum.

The feedback value g measures how confidently the learners absorbed the
last batch; the next batch size is the frontier size scaled by g.  One
propagation step leaves most rows soft, so g hovers a little above
exp(-gamma) and the schedule advances in measured bites: batches grow
while the frontier widens across the cluster cores, then taper as the
pool drains.  This script prints the schedule side by side for three
noise levels, with the final accuracy under each column.

Run:  python3 demos/curriculum_schedule.py
"""

from hydent import RunConfig, SplitSpec, run_hydent, split, synth_noisy_gaussian


def schedule(cov, seed=0):
    dataset = synth_noisy_gaussian(60, cov, seed=seed)
    labeled_idx, _ = split(dataset, SplitSpec(1, seed=seed))
    result = run_hydent(dataset, labeled_idx, RunConfig(seed=seed))
    return result


def main():
    results = {cov: schedule(cov) for cov in (0.5, 1.0, 1.5)}
    rounds = max(len(r.rounds) for r in results.values())

    header = "round " + "".join(f"| cov {cov:<11}" for cov in results)
    print(header)
    print("      " + "|  s      g     " * len(results))
    print("-" * len(header))
    for i in range(rounds):
        cells = []
        for result in results.values():
            if i < len(result.rounds):
                r = result.rounds[i]
                cells.append(f"| {r.size:3d}  {r.feedback:6.4f} ")
            else:
                cells.append("|   -       -   ")
        print(f"{i + 1:5d} " + "".join(cells))

    print("-" * len(header))
    line = "acc   "
    for result in results.values():
        line += f"| {result.accuracy:<14.4f}"
    print(line)


if __name__ == "__main__":
    main()
