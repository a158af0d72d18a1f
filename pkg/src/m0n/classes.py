"""Divisor classes on moduli of stable marked rational curves in Kapranov bases.

A :class:`DivisorClass` on the space with ``n`` markings in the Kapranov basis
of index ``r`` stands for ``h*H - sum(coeff[I] * E_I)``, where ``E_I`` is the
boundary divisor separating ``I + {r}`` from the rest and ``I`` ranges over
subsets of ``{1..n} - {r}`` with ``1 <= |I| <= n - 4``.  The stored
coefficients are the subtracted multiplicities, so effective classes coming
from polynomials have nonnegative entries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .diagonal_mult import (
    InvariantMultiplicities,
    PartialDiagonal,
    is_difference_translation_invariant,
    multiplicity_along,
)
from .errors import BadIndex, BasisMismatch, NotTranslationInvariant
from .polyring import Polynomial, primitive_normalize

IndexSet = tuple  # sorted tuple of distinct ints


def index_set(members: Iterable[int]) -> IndexSet:
    return tuple(sorted(set(members)))


def _term_order(I: IndexSet):
    return (len(I), I)


@dataclass(frozen=True)
class DivisorClass:
    n: int
    basis_index: int
    h: int
    terms: tuple = field(default=())  # ((I, coeff), ...) sorted, no zero coeffs

    def __post_init__(self):
        merged: dict = {}
        for I, c in self.terms:
            key = index_set(I)
            merged[key] = merged.get(key, 0) + int(c)
        terms = tuple(sorted(((I, c) for I, c in merged.items() if c), key=lambda ic: _term_order(ic[0])))
        for I, _ in terms:
            _check_key(I, self.n, self.basis_index)
        if not 1 <= self.basis_index <= self.n:
            raise BadIndex(f"basis index {self.basis_index} outside 1..{self.n}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def from_mapping(cls, n: int, basis_index: int, h: int, coeffs: Mapping) -> "DivisorClass":
        return cls(n, basis_index, h, tuple(coeffs.items()))

    @property
    def e_coeffs(self) -> dict:
        return dict(self.terms)

    def coeff(self, I: Iterable[int]) -> int:
        return self.e_coeffs.get(index_set(I), 0)

    def relabel(self, perm: Mapping[int, int]) -> "DivisorClass":
        """Apply a permutation of the markings (must fix nothing in particular)."""
        r = perm.get(self.basis_index, self.basis_index)
        return DivisorClass(
            self.n, r, self.h, tuple((tuple(perm.get(i, i) for i in I), c) for I, c in self.terms)
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "basis_index": self.basis_index,
            "h": self.h,
            "terms": [{"I": list(I), "coeff": c} for I, c in self.terms],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DivisorClass":
        return cls(
            int(data["n"]),
            int(data["basis_index"]),
            int(data["h"]),
            tuple((tuple(t["I"]), int(t["coeff"])) for t in data["terms"]),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def render(self) -> str:
        parts = [f"{self.h}*H"]
        for I, c in self.terms:
            name = "E_{" + ",".join(map(str, I)) + "}"
            parts.append(f"- {c}*{name}" if c > 0 else f"+ {-c}*{name}")
        return " ".join(parts)


def _check_key(I: IndexSet, n: int, r: int) -> None:
    if not 1 <= len(I) <= n - 4:
        raise ValueError(f"E_{list(I)} is not a Kapranov generator on {n} markings (need 1 <= |I| <= {n - 4})")
    if r in I or not all(1 <= i <= n for i in I):
        raise ValueError(f"E_{list(I)} must be a subset of 1..{n} without the basis index {r}")


def generator_keys(n: int, r: int) -> list[IndexSet]:
    """All ``I`` indexing the ``E_I`` generators of the index-``r`` basis."""
    others = [i for i in range(1, n + 1) if i != r]
    return [I for size in range(1, n - 3) for I in combinations(others, size)]


def pullback_class_from_polynomial(f: Polynomial, n: int, *, fast: bool = False, rng=None) -> DivisorClass:
    """Class of the pullback of ``V(f)`` to ``n + 1`` markings, basis index ``n + 1``.

    ``fast=True`` evaluates each multiplicity with the probabilistic mode of
    :func:`multiplicity_along` instead of the exact exponent-matrix minimum.
    """
    f = primitive_normalize(f)
    if not is_difference_translation_invariant(f, n):
        raise NotTranslationInvariant(
            "polynomial is not homogeneous and invariant under simultaneous translation"
        )
    full = list(range(1, n + 1))
    keys = generator_keys(n + 1, n + 1)
    complements = [[j for j in full if j not in I] for I in keys]
    if fast:
        values = [multiplicity_along(f, PartialDiagonal(n, J), fast=True, rng=rng) for J in complements]
    else:
        values = InvariantMultiplicities(f, n).many(complements)
    return DivisorClass(n + 1, n + 1, f.degree(), tuple(zip(keys, values)))


def push_down(c: DivisorClass, r: int) -> DivisorClass:
    """Class on ``c.n - 1`` markings (basis ``r``) of a divisor whose pullback is ``c``."""
    n = c.n - 1
    if c.basis_index != c.n:
        raise BasisMismatch(f"push_down expects the basis of index {c.n}, got {c.basis_index}")
    if not 1 <= r <= n:
        raise BadIndex(f"basis index {r} outside 1..{n}")
    h = c.coeff((r,))
    kept = []
    for I, coeff in c.terms:
        if r in I and 2 <= len(I) <= n - 3:
            kept.append((tuple(i for i in I if i != r), coeff))
    return DivisorClass(n, r, h, tuple(kept))


def class_from_polynomial(f: Polynomial, n: int, r: int = 1, *, fast: bool = False, rng=None) -> DivisorClass:
    """Class of ``V(f)`` on ``n`` markings in the Kapranov basis of index ``r``."""
    if not 1 <= r <= n:
        raise BadIndex(f"basis index {r} outside 1..{n}")
    return push_down(pullback_class_from_polynomial(f, n, fast=fast, rng=rng), r)


def classes_equal(c1: DivisorClass, c2: DivisorClass) -> bool:
    if (c1.n, c1.basis_index) != (c2.n, c2.basis_index):
        raise BasisMismatch(
            f"cannot compare classes in bases (n={c1.n}, r={c1.basis_index}) and (n={c2.n}, r={c2.basis_index})"
        )
    return c1 == c2
