"""Print n^2 (3 - rho(B_n)) next to its two-sided bracket for growing n."""

import argparse
import math
from dataclasses import dataclass

from irregbip.cli import limit_rows, num


@dataclass
class Config:
    start: int = 8
    stop: int = 2048
    tol: float = 1e-12


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=Config.start)
    ap.add_argument("--stop", type=int, default=Config.stop)
    ap.add_argument("--tol", type=float, default=Config.tol)
    cfg = Config(**vars(ap.parse_args()))

    ns = []
    n = cfg.start
    while n <= cfg.stop:
        ns.append(n)
        n *= 2
    print(f"{'n':>6} {'n^2(3-rho)':>14} {'lower':>14} {'upper':>14} {'width':>12}")
    for r in limit_rows(ns, cfg.tol):
        width = r["upper"] - r["lower"]
        print(f"{r['n']:>6} {num(r['scaled_gap']):>14} {num(r['lower']):>14} "
              f"{num(r['upper']):>14} {num(width):>12}")
    print(f"pi^2 = {num(math.pi ** 2)}")


if __name__ == "__main__":
    main()
