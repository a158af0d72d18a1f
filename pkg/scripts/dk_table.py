"""Table of the D_k family: class data, pairing with covering curves, degree gate."""

import argparse
from dataclasses import dataclass

from m0n.extremal import counterexample_check, dk_class, dk_pairing


@dataclass
class TableConfig:
    k_max: int = 8


def rows(cfg: TableConfig):
    for k in range(1, cfg.k_max + 1):
        c = dk_class(k)
        pair = dk_pairing(k)
        gate = counterexample_check(k)
        yield {
            "k": k,
            "markings": c.n,
            "h": c.h,
            "terms": len(c.terms),
            "pairing": f"{pair.degree_term}-{pair.point_term}-{pair.span_term}={pair.pairing}",
            "pullback_h": gate.pullback_h,
            "bound": gate.hypertree_degree_bound,
            "hypertree?": "excluded" if gate.is_counterexample else "open",
        }


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--k-max", type=int, default=8)
    table = list(rows(TableConfig(**vars(p.parse_args()))))
    cols = list(table[0])
    widths = {c: max(len(c), *(len(str(r[c])) for r in table)) for c in cols}
    print("  ".join(c.rjust(widths[c]) for c in cols))
    for r in table:
        print("  ".join(str(r[c]).rjust(widths[c]) for c in cols))


if __name__ == "__main__":
    main()
