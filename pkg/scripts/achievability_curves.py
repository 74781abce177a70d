"""Write the achievability curves next to the best converse as CSV."""
import argparse
import csv
import sys
from dataclasses import dataclass, field

from lrcbench.asymptotic import delta_grid, sample_curves


@dataclass
class CurveConfig:
    r: int = 2
    q: int = 2
    delta_max: float = 0.5
    step: float = 0.005
    series: list[str] = field(default_factory=lambda: [
        "achievable-eq5", "achievable-eq10", "gv-parity", "converse-mrrw"])


def main(argv=None) -> int:
    cfg = CurveConfig()
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--r", type=int, default=cfg.r)
    p.add_argument("--q", type=int, default=cfg.q)
    p.add_argument("--step", type=float, default=cfg.step)
    p.add_argument("--out", default="-")
    args = p.parse_args(argv)
    cfg = CurveConfig(r=args.r, q=args.q, delta_max=1 - 1 / args.q, step=args.step)
    points = sample_curves(cfg.series, cfg.r, cfg.q, delta_grid(0.0, cfg.delta_max, cfg.step))
    out = sys.stdout if args.out == "-" else open(args.out, "w", encoding="utf-8", newline="")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["delta", "rate", "series"])
    for pt in points:
        w.writerow([f"{pt.delta:.6f}", f"{pt.rate:.6f}", pt.series])
    if out is not sys.stdout:
        out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
