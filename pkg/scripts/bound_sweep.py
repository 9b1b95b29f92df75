"""Tightness of the gap lower bounds over every graph in B(n, Delta).

For each (n, Delta) reports the smallest observed Delta - rho and how far
above each bound it sits. Optional CSV of per-graph reports.
"""

import argparse
from dataclasses import dataclass

from irregbip.bounds import bound_report, reports_to_csv
from irregbip.enumeration import SearchSpec, generate


@dataclass
class Config:
    n_max: int = 9
    csv_out: str | None = None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--csv-out")
    cfg = Config(**vars(ap.parse_args()))

    all_reports = []
    print(f"{'n':>3} {'D':>3} {'graphs':>7} {'min gap':>12} {'new bound':>12} {'ratio':>8} {'all ok':>7}")
    for n in range(4, cfg.n_max + 1):
        for delta in range(2, n - 1):
            reps = [bound_report(g) for g in generate(SearchSpec(n, delta))]
            all_reports += reps
            tight = min(reps, key=lambda r: r.gap)
            print(f"{n:>3} {delta:>3} {len(reps):>7} {tight.gap:>12.6g} {tight.new_bound:>12.6g} "
                  f"{tight.gap / tight.new_bound:>8.2f} {all(r.all_ok() for r in reps)!s:>7}")
    if cfg.csv_out:
        with open(cfg.csv_out, "w") as fh:
            fh.write(reports_to_csv(all_reports))


if __name__ == "__main__":
    main()
