"""Run every check over the multiplicity-3 semigroups up to a genus bound.

    python scripts/sweep_multiplicity_three.py --max-genus 12 --workers 4
"""

import argparse
import sys
import time
from dataclasses import dataclass

from kunzlattice.analysis import CHECKS, reports_json, verify_suite


@dataclass
class SweepConfig:
    max_genus: int = 12
    workers: int = 1
    json_out: str | None = None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-genus", type=int, default=SweepConfig.max_genus)
    ap.add_argument("--workers", type=int, default=SweepConfig.workers)
    ap.add_argument("--json-out", default=None)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))

    t0 = time.perf_counter()
    reports = verify_suite(cfg.max_genus, list(CHECKS), workers=cfg.workers)
    for r in reports:
        print(f"{r.check:20s} {'pass' if r.passed else 'FAIL'}  instances={r.instances} failures={len(r.failures)}")
    print(f"elapsed {time.perf_counter() - t0:.1f}s")
    if cfg.json_out:
        with open(cfg.json_out, "w", encoding="utf-8") as fh:
            fh.write(reports_json(reports) + "\n")
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
