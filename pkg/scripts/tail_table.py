"""Tabulate tail algebra / tail lattice sizes, spectrum sizes and free
Boolean algebra sizes for every labeled poset of a given size, grouped by
isomorphism-invariant signature."""

import argparse
from collections import Counter
from dataclasses import dataclass

from dualkit.poset import all_posets, ideals
from dualkit.spectra import prime_filters
from dualkit.tail import free_boolean, tailalg, taillat


@dataclass
class TableConfig:
    size: int = 3
    free: bool = True


def signature(P) -> tuple:
    comparable = sum(bin(u).count("1") - 1 for u in P.ups)
    return (comparable, len(P.cover_pairs()), len(ideals(P)))


def rows(cfg: TableConfig) -> Counter:
    out: Counter = Counter()
    for P in all_posets(cfg.size):
        A, L = tailalg(P), taillat(P)
        fb = len(free_boolean(P).carrier.members) if cfg.free else None
        key = signature(P) + (len(A.members), len(L.members), len(prime_filters(L)), fb)
        out[key] += 1
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--size", type=int, default=TableConfig.size)
    ap.add_argument("--no-free", action="store_true", help="skip free Boolean algebra sizes")
    args = ap.parse_args()
    cfg = TableConfig(size=args.size, free=not args.no_free)
    header = ("<", "covers", "ideals", "|Tailalg|", "|Taillat|", "|Spec|", "|FB|", "count")
    print(" ".join(f"{h:>9}" for h in header))
    for key, count in sorted(rows(cfg).items()):
        print(" ".join(f"{str(v):>9}" for v in key + (count,)))


if __name__ == "__main__":
    main()
