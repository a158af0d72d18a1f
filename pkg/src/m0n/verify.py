"""Desk-scale self checks shared by ``m0n verify`` and the experiment scripts.

Every check is exact; the probabilistic multiplicity mode is never used here.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Callable

from .chen_coskun import (
    WeightVector,
    class_in_basis,
    lambda_polynomial,
    merged_weights,
    pullback_class_closed_form,
    restriction_check,
    weight_vectors,
)
from .classes import class_from_polynomial, pullback_class_from_polynomial, push_down
from .diagonal_mult import PartialDiagonal, is_difference_translation_invariant, multiplicity_along
from .extremal import bipyramid_matches_lambda, counterexample_check, dk_pairing
from .hypertree import divisor_polynomial, enumerate_irreducible
from .polyring import PolyMatrix, Polynomial, determinant, determinant_cofactor, equal_up_to_sign, exact_divide


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass
class VerifyConfig:
    seed: int = 0
    ring_trials: int = 200
    det_trials: int = 100
    restriction_trials: int = 20
    sweep_max_n: int = 5  # the acceptance sweep goes to 6
    max_enum_n: int = 8
    dk_max: int = 8
    gate_max: int = 20
    bipyramid_ks: tuple = (2, 3)


def random_polynomial(rng: random.Random, nvars: int = 3, max_terms: int = 4, max_deg: int = 3, coeff: int = 5) -> Polynomial:
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        mono = {}
        for v in range(1, nvars + 1):
            e = rng.randint(0, max_deg)
            if e:
                mono[v] = e
        terms.append((mono, rng.randint(-coeff, coeff)))
    return Polynomial.from_terms(terms)


def random_admissible_weights(rng: random.Random, max_n: int = 6, max_abs: int = 3) -> WeightVector:
    """A random weight vector of length 3..max_n whose merged tail still has gcd one."""
    while True:
        n = rng.randint(3, max_n)
        a = [rng.randint(-max_abs, max_abs) for _ in range(n - 1)]
        a.append(-sum(a))
        if abs(a[-1]) > max_abs or reduce(gcd, a, 0) != 1:
            continue
        if reduce(gcd, merged_weights(a), 0) != 1:
            continue
        return WeightVector(a)


def check_ring_laws(cfg: VerifyConfig) -> str:
    rng = random.Random(cfg.seed)
    for _ in range(cfg.ring_trials):
        p, q, r = (random_polynomial(rng) for _ in range(3))
        assert (p + q) * r == p * r + q * r
        assert (p * q) * r == p * (q * r)
        assert p * q == q * p
        assert p - p == Polynomial()
        if q:
            assert exact_divide(p * q, q) == p
    return f"{cfg.ring_trials} triples"


def check_determinants(cfg: VerifyConfig) -> str:
    rng = random.Random(cfg.seed + 1)
    for _ in range(cfg.det_trials):
        size = rng.randint(1, 4)
        m = PolyMatrix.from_rows(
            [[random_polynomial(rng, max_terms=2, max_deg=2) for _ in range(size)] for _ in range(size)]
        )
        assert determinant(m) == determinant_cofactor(m)
    return f"{cfg.det_trials} matrices"


def check_hypertree_polynomials(cfg: VerifyConfig) -> str:
    total = 0
    for n in range(6, cfg.max_enum_n + 1):
        for h in enumerate_irreducible(n):
            g = divisor_polynomial(h)
            assert g.degree() == h.d - 1
            assert is_difference_translation_invariant(g, n)
            assert multiplicity_along(g, PartialDiagonal(n, range(1, n + 1))) == g.degree()
            for row in range(1, n - 2):
                assert equal_up_to_sign(g, divisor_polynomial(h, pivot_row=row)), (h, row)
            total += 1
    return f"{total} hypertrees"


def check_counts(cfg: VerifyConfig) -> str:
    expected = {6: 1, 7: 1, 8: 3, 9: 11, 10: 96}
    got = {n: len(enumerate_irreducible(n)) for n in range(6, cfg.max_enum_n + 1)}
    for n, c in got.items():
        assert c == expected[n], (n, c)
    return str(got)


def check_oracle_sweep(cfg: VerifyConfig) -> str:
    count = 0
    for w in weight_vectors(3, cfg.sweep_max_n, 3, 8):
        engine = pullback_class_from_polynomial(lambda_polynomial(w), w.n + 2)
        assert engine == pullback_class_closed_form(w), w.a
        for r in range(1, w.n + 1):
            assert class_in_basis(w, r) == push_down(engine, r), (w.a, r)
        count += 1
    return f"{count} weight vectors"


def check_dk(cfg: VerifyConfig) -> str:
    for k in range(1, cfg.dk_max + 1):
        assert dk_pairing(k).pairing == -1, k
    for k in range(1, cfg.gate_max + 1):
        assert counterexample_check(k).is_counterexample == (k >= 2), k
    return f"pairing k<= {cfg.dk_max}, gate k <= {cfg.gate_max}"


def check_bipyramids(cfg: VerifyConfig) -> str:
    for k in cfg.bipyramid_ks:
        assert bipyramid_matches_lambda(k), k
    return f"k in {list(cfg.bipyramid_ks)}"


def check_restriction(cfg: VerifyConfig) -> str:
    rng = random.Random(cfg.seed + 2)
    for _ in range(cfg.restriction_trials):
        w = random_admissible_weights(rng)
        assert restriction_check(w), w.a
    return f"{cfg.restriction_trials} weight vectors"


def check_permutation_equivariance(cfg: VerifyConfig) -> str:
    rng = random.Random(cfg.seed + 3)
    count = 0
    for n in range(6, min(cfg.max_enum_n, 8) + 1):
        for h in enumerate_irreducible(n):
            perm = list(range(1, n + 1))
            rng.shuffle(perm)
            sigma = dict(zip(range(1, n + 1), perm))
            moved = divisor_polynomial(h.relabel(sigma))
            assert equal_up_to_sign(moved, divisor_polynomial(h).rename(sigma))
            assert class_from_polynomial(moved, n, sigma[1]) == class_from_polynomial(
                divisor_polynomial(h), n, 1
            ).relabel(sigma)
            count += 1
    return f"{count} relabelings"


CHECKS: dict[str, Callable[[VerifyConfig], str]] = {
    "ring_laws": check_ring_laws,
    "bareiss_vs_cofactor": check_determinants,
    "enumeration_counts": check_counts,
    "hypertree_polynomials": check_hypertree_polynomials,
    "permutation_equivariance": check_permutation_equivariance,
    "closed_form_vs_engine": check_oracle_sweep,
    "dk_pairing_and_gate": check_dk,
    "bipyramid_classes": check_bipyramids,
    "restriction_identity": check_restriction,
}


def run_checks(cfg: VerifyConfig | None = None, names=None) -> list[CheckResult]:
    cfg = cfg or VerifyConfig()
    out = []
    for name, fn in CHECKS.items():
        if names and name not in names:
            continue
        start = time.monotonic()
        try:
            detail = fn(cfg)
            ok = True
        except AssertionError as exc:
            ok, detail = False, f"assertion failed: {exc}"
        out.append(CheckResult(name, ok, detail, time.monotonic() - start))
    return out
