"""Sweep random incidence structures and compare the size of the Boolean
algebra generated by the rows with 2^c, tabulated by (m, n)."""

import argparse
import random
import time
from collections import defaultdict
from dataclasses import dataclass

from dualkit.context import column_classes, random_structure, rows_family
from dualkit.setfam import generate_boolean


@dataclass
class SweepConfig:
    trials: int = 500
    max_m: int = 10
    max_n: int = 10
    density: float = 0.5
    seed: int = 1


def sweep(cfg: SweepConfig) -> dict[tuple[int, int], list[int]]:
    rng = random.Random(cfg.seed)
    table: dict[tuple[int, int], list[int]] = defaultdict(lambda: [0, 0])
    for _ in range(cfg.trials):
        R = random_structure(rng, cfg.max_m, cfg.max_n, cfg.density)
        _, c = column_classes(R)
        cell = table[(R.m, R.n)]
        cell[0] += 1
        cell[1] += len(generate_boolean(rows_family(R)).members) == 2**c
    return dict(table)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=SweepConfig.trials)
    ap.add_argument("--density", type=float, default=SweepConfig.density)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    args = ap.parse_args()
    cfg = SweepConfig(trials=args.trials, density=args.density, seed=args.seed)
    start = time.perf_counter()
    table = sweep(cfg)
    print(f"{'m':>3} {'n':>3} {'trials':>7} {'agree':>6}")
    for (m, n), (total, ok) in sorted(table.items()):
        print(f"{m:>3} {n:>3} {total:>7} {ok:>6}")
    total = sum(t for t, _ in table.values())
    agree = sum(a for _, a in table.values())
    print(f"{agree}/{total} agree in {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
