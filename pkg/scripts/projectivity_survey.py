"""Survey projection property, projective triviality and projectivity over
every 2-element algebra with one binary operation (optionally plus both
constants)."""

import argparse
from dataclasses import dataclass

from dualkit import ualg


@dataclass
class SurveyConfig:
    n_max: int = 2
    with_constants: bool = False


def survey(cfg: SurveyConfig) -> list[tuple]:
    consts = (ualg.Operation.constant(2, 0), ualg.Operation.constant(2, 1))
    out = []
    for f in ualg.all_operations(2, 2):
        ops = (f,) + (consts if cfg.with_constants else ())
        K = ualg.FiniteAlgebra(2, ops)
        out.append(
            (
                f.table,
                ualg.has_projection_property(K, cfg.n_max).holds,
                ualg.is_projectively_trivial(K, cfg.n_max).holds,
                ualg.is_projective(K, cfg.n_max).holds,
            )
        )
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=SurveyConfig.n_max)
    ap.add_argument("--constants", action="store_true")
    args = ap.parse_args()
    cfg = SurveyConfig(n_max=args.n_max, with_constants=args.constants)
    print(f"{'table':>14} {'proj.prop':>10} {'proj.triv':>10} {'projective':>10}")
    for table, pp, pt, pj in survey(cfg):
        print(f"{str(table):>14} {pp!s:>10} {pt!s:>10} {pj!s:>10}")


if __name__ == "__main__":
    main()
