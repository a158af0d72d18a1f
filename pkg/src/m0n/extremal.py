"""The D_k family: pairing with its covering curves, the hypertree-degree gate, and the database."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from typing import IO, Iterator

from .chen_coskun import class_in_basis, pullback_h_coeff
from .classes import DivisorClass, class_from_polynomial, classes_equal, push_down, pullback_class_from_polynomial
from .errors import BadK, ClassMismatch, UnsupportedN
from .hypertree import (
    Hypertree,
    automorphism_group_size,
    bipyramid,
    divisor_polynomial,
    enumerate_irreducible,
)

DEEP_N = 9  # database sizes from here on need deep=True


def dk_weights(k: int) -> tuple:
    """Weights ``(k, 1, -1, ..., -1)`` with ``k + 1`` copies of ``-1`` (``k + 5`` markings)."""
    if k < 1:
        raise BadK(f"D_k needs k >= 1, got {k}")
    return (k, 1) + (-1,) * (k + 1)


def dk_class(k: int) -> DivisorClass:
    return class_in_basis(dk_weights(k), r=1)


@dataclass(frozen=True)
class PairingReport:
    k: int
    degree_term: int
    point_term: int
    span_term: int
    pairing: int

    def __post_init__(self):
        if self.pairing != self.degree_term - self.point_term - self.span_term:
            raise ValueError("pairing must equal degree_term - point_term - span_term")

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "degree_term": self.degree_term,
            "point_term": self.point_term,
            "span_term": self.span_term,
            "pairing": self.pairing,
        }


def dk_pairing(k: int) -> PairingReport:
    """Intersection of ``D_k`` with a general curve of its covering family.

    The three inputs are read from the computed class in the index-1 basis:
    the H-coefficient, the multiplicity at the point ``p_2`` and the number
    of codimension-two spans ``<p_i : i in J>`` contained with multiplicity
    one, where ``|J| = k + 1``, ``J`` meets the glued pair once, ``2 not in J``.
    """
    c = dk_class(k)
    glued = {k + 4, k + 5}
    h = c.h
    at_p2 = c.coeff((2,))
    spans = [(I, coeff) for I, coeff in c.terms if len(I) == k + 1 and len(glued & set(I)) == 1 and 2 not in I]
    if any(coeff != 1 for _, coeff in spans):
        raise ClassMismatch(f"span coefficients are not all 1: {spans}")
    if h != k + 1:
        raise ClassMismatch(f"H-coefficient {h}, expected {k + 1}")
    if at_p2 != k:
        raise ClassMismatch(f"coefficient of E_{{2}} is {at_p2}, expected {k}")
    if len(spans) != 2 * k + 2:
        raise ClassMismatch(f"{len(spans)} spans, expected {2 * k + 2}")
    degree_term = h * h
    point_term = at_p2 * k
    span_term = sum(coeff for _, coeff in spans)
    return PairingReport(k, degree_term, point_term, span_term, degree_term - point_term - span_term)


@dataclass(frozen=True)
class CounterexampleReport:
    k: int
    pullback_h: int
    hypertree_degree_bound: int
    is_counterexample: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "pullback_h": self.pullback_h,
            "hypertree_degree_bound": self.hypertree_degree_bound,
            "is_counterexample": self.is_counterexample,
        }


def counterexample_check(k: int) -> CounterexampleReport:
    """Compare the pullback H-coefficient of ``D_k`` with the hypertree bound.

    A hypertree divisor (or pullback of one) on ``k + 5`` markings has an
    equation of degree at most ``(k + 5) - 3``, which is the H-coefficient of
    its pullback; ``D_k`` pulls back with ``2k + 1``.
    """
    h = pullback_h_coeff(dk_weights(k))
    bound = (k + 5) - 3
    return CounterexampleReport(k, h, bound, h > bound)


# --------------------------------------------------------------------------
# bipyramids vs Lambda_(1,...,1,-1,...,-1)


def interleaving(k: int) -> dict:
    """Relabel equator position ``2j-1 -> j`` and ``2j -> k+j``; poles are fixed."""
    perm = {}
    for j in range(1, k + 1):
        perm[2 * j - 1] = j
        perm[2 * j] = k + j
    perm[2 * k + 1] = 2 * k + 1
    perm[2 * k + 2] = 2 * k + 2
    return perm


def bipyramid_matches_lambda(k: int, r: int = 1) -> bool:
    """Class equality of the (relabeled) bipyramid divisor and ``Lambda_(1^k, (-1)^k)``."""
    h = bipyramid(k).relabel(interleaving(k))
    ht_class = class_from_polynomial(divisor_polynomial(h), h.n, r)
    cc_class = class_in_basis((1,) * k + (-1,) * k, r)
    return classes_equal(ht_class, cc_class)


# --------------------------------------------------------------------------
# database


@dataclass(frozen=True)
class DatabaseRecord:
    n: int
    hypertree: Hypertree
    divisor_class: DivisorClass
    automorphism_order: int
    polynomial_degree: int

    def __post_init__(self):
        if self.polynomial_degree != self.hypertree.d - 1:
            raise ClassMismatch(
                f"divisor degree {self.polynomial_degree} differs from d - 1 = {self.hypertree.d - 1}"
            )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "hypertree": self.hypertree.to_json(),
            "class": self.divisor_class.to_json(),
            "automorphism_order": self.automorphism_order,
            "polynomial_degree": self.polynomial_degree,
        }

    @classmethod
    def from_json(cls, data) -> "DatabaseRecord":
        return cls(
            int(data["n"]),
            Hypertree.from_json(data["hypertree"]),
            DivisorClass.from_json(data["class"]),
            int(data["automorphism_order"]),
            int(data["polynomial_degree"]),
        )


def make_record(h: Hypertree) -> DatabaseRecord:
    g = divisor_polynomial(h)
    c = class_from_polynomial(g, h.n, 1)
    return DatabaseRecord(h.n, h, c, automorphism_group_size(h), g.degree())


def _check_range(n_min: int, n_max: int, deep: bool) -> None:
    if not 6 <= n_min <= n_max <= 10:
        raise UnsupportedN(f"database range must satisfy 6 <= n_min <= n_max <= 10, got {n_min}..{n_max}")
    if n_max >= DEEP_N and not deep:
        raise UnsupportedN(f"n >= {DEEP_N} needs deep mode")


def iter_database(n_min: int, n_max: int, *, deep: bool = False) -> Iterator[DatabaseRecord]:
    _check_range(n_min, n_max, deep)
    for n in range(n_min, n_max + 1):
        for h in enumerate_irreducible(n):
            yield make_record(h)


def build_database(n_min: int, n_max: int, *, deep: bool = False) -> list[DatabaseRecord]:
    return list(iter_database(n_min, n_max, deep=deep))


def write_database(
    out: IO[str],
    n_min: int,
    n_max: int,
    *,
    deep: bool = False,
    budget_seconds: float | None = None,
) -> tuple[int, bool]:
    """Stream records as a JSON array; returns ``(records written, truncated)``.

    Each record is flushed as soon as it is computed.  If the time budget runs
    out, the array is closed with a final ``{"truncated": true, ...}`` marker.
    """
    _check_range(n_min, n_max, deep)
    start = time.monotonic()
    count = 0
    out.write("[")
    truncated = False
    for rec in iter_database(n_min, n_max, deep=deep):
        out.write(("," if count else "") + "\n" + json.dumps(rec.to_json(), sort_keys=True))
        out.flush()
        count += 1
        if budget_seconds is not None and time.monotonic() - start > budget_seconds:
            truncated = True
            break
    if truncated:
        marker = {"truncated": True, "records": count, "last_n": rec.n}
        out.write(("," if count else "") + "\n" + json.dumps(marker, sort_keys=True))
    out.write("\n]\n")
    out.flush()
    return count, truncated


def record_is_consistent(rec: DatabaseRecord) -> bool:
    """Re-derive the class through the pullback and push-down."""
    g = divisor_polynomial(rec.hypertree)
    return push_down(pullback_class_from_polynomial(g, rec.n), 1) == rec.divisor_class
