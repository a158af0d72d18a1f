"""Closed-form classes vs the multiplicity engine over a box of weight vectors."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from m0n.chen_coskun import lambda_polynomial, pullback_class_closed_form, weight_vectors
from m0n.classes import pullback_class_from_polynomial


@dataclass
class SweepConfig:
    n_min: int = 3
    n_max: int = 6
    max_abs: int = 3
    max_l1: int = 8
    allow_zero: bool = True


def run(cfg: SweepConfig) -> dict:
    start = time.monotonic()
    checked, mismatches = 0, []
    for w in weight_vectors(cfg.n_min, cfg.n_max, cfg.max_abs, cfg.max_l1, allow_zero=cfg.allow_zero):
        engine = pullback_class_from_polynomial(lambda_polynomial(w), w.n + 2)
        if engine != pullback_class_closed_form(w):
            mismatches.append(list(w.a))
        checked += 1
    return {
        "config": asdict(cfg),
        "checked": checked,
        "mismatches": mismatches,
        "seconds": round(time.monotonic() - start, 2),
    }


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for name, default in asdict(SweepConfig()).items():
        flag = "--" + name.replace("_", "-")
        if isinstance(default, bool):
            p.add_argument(flag, type=lambda s: s.lower() in ("1", "true", "yes"), default=default)
        else:
            p.add_argument(flag, type=type(default), default=default)
    result = run(SweepConfig(**vars(p.parse_args())))
    print(json.dumps(result, indent=2))
    raise SystemExit(1 if result["mismatches"] else 0)


if __name__ == "__main__":
    main()
