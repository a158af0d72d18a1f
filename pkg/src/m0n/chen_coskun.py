"""Chen--Coskun divisors ``Lambda_a`` on ``n + 2`` markings.

A weight vector ``a = (a_1, ..., a_n)`` with zero sum and gcd one places the
two glued markings at ``n + 1`` and ``n + 2``.  The divisor is cut out by

    (P_plus - P_minus) / (x_{n+1} - x_{n+2}),

    P_plus  = prod_{a_i >= 0} (x_{n+1} - x_i)^|a_i| * prod_{a_i <= 0} (x_{n+2} - x_i)^|a_i|
    P_minus = prod_{a_i <= 0} (x_{n+1} - x_i)^|a_i| * prod_{a_i >= 0} (x_{n+2} - x_i)^|a_i|

Zero weights contribute empty factors.  The closed-form class coefficients are
stated for nonzero weights; a zero weight makes its marking a spectator, and
the formulas below treat spectators explicitly (see ``_pullback_coeff``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterable, Iterator, Sequence

from .classes import DivisorClass, generator_keys
from .errors import BadIndex, GcdViolation, InvalidWeights, NotDivisible
from .polyring import ONE, Polynomial, exact_divide, primitive_normalize, x


@dataclass(frozen=True)
class WeightVector:
    a: tuple

    def __init__(self, a: Iterable[int]):
        a = tuple(int(v) for v in a)
        if len(a) < 2:
            raise InvalidWeights(f"need at least two weights, got {list(a)}")
        if sum(a) != 0:
            raise InvalidWeights(f"weights must sum to zero: {list(a)}")
        if reduce(gcd, a, 0) != 1:
            raise InvalidWeights(f"weights must have gcd 1: {list(a)}")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    def __iter__(self):
        return iter(self.a)

    def __neg__(self) -> "WeightVector":
        return WeightVector(-v for v in self.a)

    def permuted(self, perm: Sequence[int]) -> "WeightVector":
        """``result[perm[i]] = a[i]`` with 0-based ``perm``."""
        out = [0] * self.n
        for i, p in enumerate(perm):
            out[p] = self.a[i]
        return WeightVector(out)


def parse_weights(text: str) -> WeightVector:
    try:
        values = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise InvalidWeights(f"cannot parse weights {text!r}") from exc
    return WeightVector(values)


def weight_vectors(n_min: int, n_max: int, max_abs: int, max_l1: int, *, allow_zero: bool = True) -> Iterator[WeightVector]:
    """All admissible weight vectors with ``n_min <= n <= n_max`` within the given bounds."""
    values = [v for v in range(-max_abs, max_abs + 1) if allow_zero or v]
    for n in range(n_min, n_max + 1):
        for a in product(values, repeat=n):
            if sum(a) == 0 and sum(map(abs, a)) <= max_l1 and reduce(gcd, a, 0) == 1:
                yield WeightVector(a)


def _as_weights(w) -> WeightVector:
    return w if isinstance(w, WeightVector) else WeightVector(w)


def numerator_factors(w) -> tuple[list, list]:
    """The two products of the numerator as ``[(linear form, exponent), ...]``."""
    w = _as_weights(w)
    n = w.n
    p1, p2 = x(n + 1), x(n + 2)
    plus, minus = [], []
    for i, a in enumerate(w.a, start=1):
        if a > 0:
            plus.append((p1 - x(i), a))
            minus.append((p2 - x(i), a))
        elif a < 0:
            plus.append((p2 - x(i), -a))
            minus.append((p1 - x(i), -a))
    return plus, minus


def _expand(factors) -> Polynomial:
    acc = ONE
    for g, e in factors:
        acc = acc * g ** e
    return acc


def lambda_numerator(w) -> Polynomial:
    plus, minus = numerator_factors(w)
    return _expand(plus) - _expand(minus)


def lambda_polynomial(w) -> Polynomial:
    """Primitive equation of ``Lambda_a``; degree ``sum|a_i| - 1``."""
    w = _as_weights(w)
    n = w.n
    quotient = exact_divide(lambda_numerator(w), x(n + 1) - x(n + 2))
    return primitive_normalize(quotient)


# --------------------------------------------------------------------------
# closed-form classes


def _require_class_size(w: WeightVector) -> None:
    if w.n < 3:
        raise InvalidWeights(f"class formulas need at least 3 weights (5 markings), got {w.n}")


def _pullback_coeff(a: tuple, I: Sequence[int]) -> int:
    """Coefficient of ``E_I`` in the pullback to ``n + 3`` markings."""
    n = len(a)
    Iset = set(I)
    inter = len(Iset & {n + 1, n + 2})
    outside = [a[i - 1] for i in range(1, n + 1) if i not in Iset]
    if inter == 0:
        # only a marking set of spectators can leave sum 0; the -1 then does not apply
        return max(sum(abs(v) for v in outside) - 1, 0)
    if inter == 2:
        return 1 if all(a[i - 1] == 0 for i in Iset if i <= n) else 0
    return min(sum(v for v in outside if v >= 0), sum(-v for v in outside if v <= 0))


def pullback_h_coeff(w) -> int:
    """H-coefficient of the pullback class: ``sum |a_i| - 1``."""
    return sum(abs(v) for v in _as_weights(w).a) - 1


def pullback_class_closed_form(w) -> DivisorClass:
    """Class of the pullback of ``Lambda_a`` to ``n + 3`` markings, basis ``n + 3``."""
    w = _as_weights(w)
    _require_class_size(w)
    n = w.n
    h = pullback_h_coeff(w)
    keys = generator_keys(n + 3, n + 3)
    return DivisorClass(n + 3, n + 3, h, tuple((I, _pullback_coeff(w.a, I)) for I in keys))


def class_in_basis(w, r: int = 1) -> DivisorClass:
    """Class of ``Lambda_a`` on ``n + 2`` markings in the Kapranov basis of index ``r``."""
    w = _as_weights(w)
    _require_class_size(w)
    n = w.n
    if not 1 <= r <= n:
        raise BadIndex(f"basis index {r} must be one of the weighted markings 1..{n}")
    a = w.a
    h = max(sum(abs(v) for i, v in enumerate(a, start=1) if i != r) - 1, 0)
    terms = []
    for I in generator_keys(n + 2, r):
        Iset = set(I)
        inter = len(Iset & {n + 1, n + 2})
        outside = [a[i - 1] for i in range(1, n + 1) if i not in Iset and i != r]
        if inter == 0:
            coeff = max(sum(abs(v) for v in outside) - 1, 0)
        elif inter == 1:
            coeff = min(sum(v for v in outside if v >= 0), sum(-v for v in outside if v <= 0))
        else:
            coeff = 1 if all(a[i - 1] == 0 for i in Iset | {r} if i <= n) else 0
        terms.append((I, coeff))
    return DivisorClass(n + 2, r, h, tuple(terms))


# --------------------------------------------------------------------------
# restriction to the boundary divisor where the last two weighted markings meet


@dataclass(frozen=True)
class RestrictionReport:
    weights: tuple
    merged: tuple
    stripped_factors: tuple  # diagonal factors (i, j, multiplicity) removed besides the glued one
    agrees: bool

    def to_json(self) -> dict:
        return {
            "weights": list(self.weights),
            "merged": list(self.merged),
            "stripped_factors": [list(f) for f in self.stripped_factors],
            "agrees": self.agrees,
        }


def merged_weights(w) -> tuple:
    a = tuple(_as_weights(w).a)
    return a[:-2] + (a[-2] + a[-1],)


def cancelled_exponent(w) -> int:
    """Power of each ``(x_merged - x_glued)`` common to both products after merging.

    Merging a positive and a negative weight leaves ``min(|a_{m-1}|, |a_m|)``
    copies of both glued-point factors in both summands of the numerator.
    """
    a = _as_weights(w).a
    u, v = a[-2], a[-1]
    return min(abs(u), abs(v)) if u * v < 0 else 0


def restriction(w) -> RestrictionReport:
    """Set ``x_{m} = x_{m-1}`` in the numerator of ``Lambda_a`` (``m = len(a)``) and compare.

    After the substitution the glued markings are renamed down by one, the
    result is divided by the glued-points factor and by the common factors
    ``(x_{m-1} - x_m)^c (x_{m-1} - x_{m+1})^c`` of :func:`cancelled_exponent`.
    The remainder must be ``+-`` the equation of ``Lambda_b`` with ``b`` the
    merged weights.
    """
    w = _as_weights(w)
    m = w.n
    if m < 3:
        raise InvalidWeights(f"restriction needs at least 3 weights, got {m}")
    b_tuple = merged_weights(w)
    if reduce(gcd, b_tuple, 0) != 1:
        raise GcdViolation(f"merged weights {list(b_tuple)} do not have gcd 1")
    numerator = lambda_numerator(w)
    restricted = numerator.substitute({m: x(m - 1)}).rename({m + 1: m, m + 2: m + 1})
    core = exact_divide(restricted, x(m) - x(m + 1))
    c = cancelled_exponent(w)
    stripped = ()
    if c:
        common = ((x(m - 1) - x(m)) * (x(m - 1) - x(m + 1))) ** c
        try:
            core = exact_divide(core, common)
        except NotDivisible:
            return RestrictionReport(w.a, b_tuple, (), False)
        stripped = ((m - 1, m, c), (m - 1, m + 1, c))
    agrees = primitive_normalize(core) == lambda_polynomial(b_tuple)
    return RestrictionReport(w.a, b_tuple, stripped, agrees)


def restriction_check(w) -> bool:
    return restriction(w).agrees
