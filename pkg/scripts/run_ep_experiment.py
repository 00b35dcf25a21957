"""Packing vs covering table for several graph families.

    python3 scripts/run_ep_experiment.py --families doubled-cycle,cycle --sizes 3..6 --pattern theta2
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from immersion_lab.cli import PATTERNS, parse_sizes
from immersion_lab.solver import ep_experiment, family_instances, rows_to_csv


@dataclass
class ExperimentConfig:
    families: list[str] = field(default_factory=lambda: ["doubled-cycle"])
    sizes: list[int] = field(default_factory=lambda: [3, 4, 5, 6])
    pattern: str = "theta2"
    k_max: int = 64
    capacity: int | None = None
    timing: bool = True
    out: str | None = None


def run(cfg: ExperimentConfig) -> str:
    h = PATTERNS[cfg.pattern]()
    rows = []
    for fam in cfg.families:
        rows.extend(ep_experiment(family_instances(fam, cfg.sizes), h, cfg.pattern, cfg.k_max, cfg.capacity))
    return rows_to_csv(rows, timing=cfg.timing)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--families", default="doubled-cycle")
    p.add_argument("--sizes", default="3..6")
    p.add_argument("--pattern", default="theta2", choices=sorted(PATTERNS))
    p.add_argument("--kmax", type=int, default=64)
    p.add_argument("--capacity", type=int, default=None)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--out", default=None)
    a = p.parse_args()
    cfg = ExperimentConfig(a.families.split(","), parse_sizes(a.sizes), a.pattern, a.kmax,
                           a.capacity, not a.no_timing, a.out)
    text = run(cfg)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
