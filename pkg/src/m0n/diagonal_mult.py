"""Multiplicity of a hypersurface ``V(f)`` along a partial diagonal.

The multiplicity along ``{x_i = x_j : i, j in J}`` is computed at a general
point of the diagonal: ``x_i -> x_i + t`` for ``i`` in ``J`` and
``x_i -> x_i + b_i`` otherwise, with ``t`` and ``b_i`` symbolic, then the
lowest degree of the result in the ``x`` variables is read off.

Two exact evaluation strategies are used.

* General ``f``: the lowest-degree layer is built directly from Taylor
  coefficients.  Derivatives along the diagonal's tangent directions never
  lower the order, so only multi-indices supported on ``J`` are needed, and
  each layer is a monomial-by-monomial computation with no full expansion.
* Difference-translation-invariant ``f`` (every divisor equation is one):
  shifting all coordinates by ``-t`` reduces the general point to
  ``(0, ..., 0, b')``, and the multiplicity is the minimum over the terms of
  ``f`` of their degree in the ``J`` variables.

:func:`multiplicity_by_substitution` is the literal full-expansion procedure
and serves as the test oracle for both.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import BadDiagonal, ZeroPolynomial
from .polyring import (
    T_VAR,
    Polynomial,
    b_var,
    min_total_degree_in,
    substitute,
)


@dataclass(frozen=True)
class PartialDiagonal:
    n: int
    J: frozenset

    def __init__(self, n: int, J: Iterable[int]):
        J = frozenset(J)
        if len(J) < 2:
            raise BadDiagonal(f"a partial diagonal needs |J| >= 2, got {sorted(J)}")
        if not all(1 <= j <= n for j in J):
            raise BadDiagonal(f"J={sorted(J)} is not a subset of 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "J", J)

    def __repr__(self) -> str:
        return f"PartialDiagonal(n={self.n}, J={sorted(self.J)})"


def _check_input(f: Polynomial, d: PartialDiagonal) -> None:
    if f.is_zero():
        raise ZeroPolynomial("multiplicity of the zero polynomial is undefined")
    bad = [v for v in f.variables() if not 1 <= v <= d.n]
    if bad:
        raise ValueError(f"polynomial uses variables outside x1..x{d.n}: {sorted(bad)}")


def _shift_values(d: PartialDiagonal, numeric: dict | None):
    """Point of the diagonal: a polynomial (or int) for each coordinate."""
    if numeric is not None:
        return numeric
    return {i: T_VAR if i in d.J else b_var(i) for i in range(1, d.n + 1)}


def _bounded_compositions(caps: list, k: int):
    """Tuples ``alpha`` with ``0 <= alpha_i <= caps[i]`` and ``sum(alpha) == k``."""
    if not caps:
        if k == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for a in range(max(0, k - rest), min(caps[0], k) + 1):
        for tail in _bounded_compositions(caps[1:], k - a):
            yield (a,) + tail


def _layer(f: Polynomial, d: PartialDiagonal, k: int, point: dict, numeric: bool) -> dict:
    """Degree-``k`` part (in the ``J`` variables) of ``f`` at ``point + x_J``."""
    acc: dict = {}
    for m, c in f.items():
        ej = [(v, e) for v, e in m if v in d.J]
        if sum(e for _, e in ej) < k:
            continue
        rest = [(v, e) for v, e in m if v not in d.J]
        for alpha in _bounded_compositions([e for _, e in ej], k):
            coeff = c
            for (v, e), a in zip(ej, alpha):
                coeff *= comb(e, a)
            xpart = tuple((v, a) for (v, _), a in zip(ej, alpha) if a)
            if numeric:
                for (v, e), a in zip(ej, alpha):
                    coeff *= point[v] ** (e - a)
                for v, e in rest:
                    coeff *= point[v] ** e
                key = xpart
            else:
                params: dict = {}
                for (v, e), a in zip(ej, alpha):
                    if e - a:
                        params[point[v]] = params.get(point[v], 0) + e - a
                for v, e in rest:
                    params[point[v]] = params.get(point[v], 0) + e
                key = xpart + tuple(sorted(params.items()))
            acc[key] = acc.get(key, 0) + coeff
    return {m: c for m, c in acc.items() if c}


def _multiplicity_taylor(f: Polynomial, d: PartialDiagonal, point: dict, numeric: bool) -> int:
    for k in range(f.degree() + 1):
        if _layer(f, d, k, point, numeric):
            return k
    raise AssertionError("a nonzero polynomial has a nonzero Taylor layer")


def multiplicity_along(
    f: Polynomial,
    d: PartialDiagonal,
    *,
    fast: bool = False,
    rng: random.Random | None = None,
) -> int:
    """Multiplicity of ``V(f)`` along the partial diagonal ``d``.

    Exact by default.  With ``fast=True`` the parameters are replaced by
    random 63-bit integers; two independent samples must agree, otherwise
    the exact computation is used.
    """
    _check_input(f, d)
    if fast:
        rng = rng or random.Random()
        results = []
        for _ in range(2):
            tval = rng.getrandbits(63)
            point = {i: tval if i in d.J else rng.getrandbits(63) for i in range(1, d.n + 1)}
            results.append(_multiplicity_taylor(f, d, point, numeric=True))
        if results[0] == results[1]:
            return results[0]
    return _multiplicity_taylor(f, d, _shift_values(d, None), numeric=False)


def multiplicity_by_substitution(f: Polynomial, d: PartialDiagonal) -> int:
    """Literal procedure: full symbolic substitution, then the lowest x-degree."""
    _check_input(f, d)
    assign = {
        i: Polynomial.var(i) + Polynomial.var(T_VAR if i in d.J else b_var(i))
        for i in range(1, d.n + 1)
    }
    return min_total_degree_in(substitute(f, assign), range(1, d.n + 1))


def multiplicity_of_product(factors: Sequence[tuple[Polynomial, int]], d: PartialDiagonal) -> int:
    """Multiplicity of ``prod g**e`` from its factors (valuations add)."""
    return sum(e * multiplicity_along(g, d) for g, e in factors if e)


def is_difference_translation_invariant(f: Polynomial, n: int) -> bool:
    """True iff ``f`` is homogeneous and ``f(x + t*(1,...,1)) == f(x)``.

    In characteristic zero the translation condition is equivalent to the sum
    of the partial derivatives in ``x1..xn`` vanishing, which is what is
    evaluated here.
    """
    if f.is_zero():
        return False
    if not f.is_homogeneous():
        return False
    total = Polynomial()
    for i in range(1, n + 1):
        total = total + f.derivative(i)
    return total.is_zero()


def is_difference_translation_invariant_literal(f: Polynomial, n: int) -> bool:
    """Same predicate evaluated by explicit substitution (oracle)."""
    if f.is_zero() or not f.is_homogeneous():
        return False
    shift = {i: Polynomial.var(i) + Polynomial.var(T_VAR) for i in range(1, n + 1)}
    return substitute(f, shift) == f


class InvariantMultiplicities:
    """Batch multiplicities of one translation-invariant ``f`` along many diagonals.

    The caller guarantees invariance (see
    :func:`is_difference_translation_invariant`); the per-diagonal value is
    then a minimum over an exponent matrix.
    """

    def __init__(self, f: Polynomial, n: int):
        if f.is_zero():
            raise ZeroPolynomial("multiplicity of the zero polynomial is undefined")
        self.n = n
        exps = np.zeros((len(f), n), dtype=np.int64)
        for row, m in enumerate(f):
            for v, e in m:
                if not 1 <= v <= n:
                    raise ValueError(f"variable x{v} outside x1..x{n}")
                exps[row, v - 1] = e
        self._exps = exps

    def __call__(self, J: Iterable[int]) -> int:
        cols = [j - 1 for j in J]
        return int(self._exps[:, cols].sum(axis=1).min())

    def many(self, Js: Sequence[Iterable[int]]) -> list[int]:
        if not Js:
            return []
        mask = np.zeros((self.n, len(Js)), dtype=np.int64)
        for col, J in enumerate(Js):
            for j in J:
                mask[j - 1, col] = 1
        return [int(v) for v in (self._exps @ mask).min(axis=0)]


def invariant_multiplicity(f: Polynomial, d: PartialDiagonal) -> int:
    """Multiplicity for translation-invariant ``f`` (minimum ``J``-degree of a term)."""
    _check_input(f, d)
    return min_total_degree_in(f, d.J)
