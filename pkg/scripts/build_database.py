"""Build the irreducible hypertree divisor database for a range of n.

n = 9 and 10 take about a minute on one core; a budget truncates the output
cleanly with a trailing marker record.
"""

import argparse
import json
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from m0n.extremal import write_database


@dataclass
class DatabaseConfig:
    n_min: int = 6
    n_max: int = 10
    out: Path = Path("hypertree_db.json")
    budget_seconds: float | None = None


def run(cfg: DatabaseConfig) -> dict:
    start = time.monotonic()
    with cfg.out.open("w") as fh:
        count, truncated = write_database(
            fh, cfg.n_min, cfg.n_max, deep=True, budget_seconds=cfg.budget_seconds
        )
    records = [r for r in json.loads(cfg.out.read_text()) if "truncated" not in r]
    return {
        "out": str(cfg.out),
        "records": count,
        "truncated": truncated,
        "per_n": dict(sorted(Counter(r["n"] for r in records).items())),
        # order -> number of hypertrees with that automorphism group order
        "automorphism_orders": {
            n: dict(sorted(Counter(r["automorphism_order"] for r in records if r["n"] == n).items()))
            for n in range(cfg.n_min, cfg.n_max + 1)
        },
        "seconds": round(time.monotonic() - start, 1),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--out", type=Path, default=Path("hypertree_db.json"))
    p.add_argument("--budget", type=float, default=None, dest="budget_seconds")
    print(json.dumps(run(DatabaseConfig(**vars(p.parse_args()))), indent=2))


if __name__ == "__main__":
    main()
