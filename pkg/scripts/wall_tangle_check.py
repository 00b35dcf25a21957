"""Exhaustive checks of the wall edge-tangle and the row/column trichotomy.

For each r, sweeps every bipartition of the r x 2r wall (small r only) and
reports whether the column-oriented family satisfies the edge-tangle axioms.
Combinations outside the sweep limit or with r < 2 * theta are skipped.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from immersion_lab.errors import CapacityError, InputError
from immersion_lab.tangle import check_edge_tangle_axioms, wall_cut_trichotomy, wall_edge_tangle


@dataclass
class WallCheckConfig:
    radii: list[int] = field(default_factory=lambda: [2, 3, 4])
    max_theta: int = 2


@dataclass
class WallCheckResult:
    r: int
    theta: int
    trichotomy: str
    axioms: str
    seconds: float


def _verdict(fn) -> str:
    try:
        v = fn()
    except (CapacityError, InputError):
        return "skipped"
    return "ok" if v.ok else f"FAIL: {v.reason}"


def run(cfg: WallCheckConfig) -> list[WallCheckResult]:
    out = []
    for r in cfg.radii:
        for theta in range(1, cfg.max_theta + 1):
            t0 = time.perf_counter()
            tri = _verdict(lambda: wall_cut_trichotomy(r, theta)) if theta <= r else "n/a"
            method = "bridges" if theta <= 2 else "auto"
            ax = _verdict(lambda: check_edge_tangle_axioms(wall_edge_tangle(r, theta), method=method))
            out.append(WallCheckResult(r, theta, tri, ax, time.perf_counter() - t0))
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--radii", default="2,3,4")
    p.add_argument("--max-theta", type=int, default=2)
    a = p.parse_args()
    cfg = WallCheckConfig([int(x) for x in a.radii.split(",")], a.max_theta)
    print(f"{'r':>3} {'theta':>5}  {'trichotomy':<12} {'axioms':<12} seconds")
    for res in run(cfg):
        print(f"{res.r:>3} {res.theta:>5}  {res.trichotomy:<12} {res.axioms:<12} {res.seconds:.2f}")


if __name__ == "__main__":
    main()
