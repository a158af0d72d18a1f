"""Exact sparse multivariate polynomials over the integers.

A monomial is a tuple of ``(variable, exponent)`` pairs sorted by variable id,
with every exponent positive; the empty tuple is the monomial ``1``.  A
:class:`Polynomial` maps monomials to nonzero Python ints, so equality is
structural and the zero polynomial has no terms.

Variable ids
------------
``x_i`` has id ``i`` (``i >= 1``).  The genericity parameters live in a
disjoint band above every geometry variable: ``t`` is ``PARAM_BASE`` and
``b_i`` is ``PARAM_BASE + i``.  Ordering ids numerically gives the variable
order ``x1 > x2 > ... > t > b1 > b2 > ...`` used by the graded-lex monomial
order.
"""

from __future__ import annotations

import heapq
import math
import re
from dataclasses import dataclass
from functools import reduce
from itertools import permutations
from typing import Iterable, Iterator, Mapping

from .errors import DivisionByZero, NonSquare, NotDivisible, ParseError, ZeroPolynomial

PARAM_BASE = 1 << 20
T_VAR = PARAM_BASE

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE_MONO: Monomial = ()


def b_var(i: int) -> int:
    """Id of the parameter ``b_i``."""
    if i < 1:
        raise ValueError(f"parameter index must be positive, got {i}")
    return PARAM_BASE + i


def is_param(v: int) -> bool:
    return v >= PARAM_BASE


def var_name(v: int) -> str:
    if v == T_VAR:
        return "t"
    if v > PARAM_BASE:
        return f"b{v - PARAM_BASE}"
    return f"x{v}"


# --------------------------------------------------------------------------
# monomial helpers


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        va, ea = a[i]
        vb, eb = b[j]
        if va == vb:
            out.append((va, ea + eb))
            i += 1
            j += 1
        elif va < vb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    if i < la:
        out.extend(a[i:])
    if j < lb:
        out.extend(b[j:])
    return tuple(out)


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """``a / b`` if ``b`` divides ``a``, else ``None``."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        ea = da.get(v, 0)
        if ea < e:
            return None
        if ea == e:
            del da[v]
        else:
            da[v] = ea - e
    return tuple(sorted(da.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def grlex_key(m: Monomial):
    """Sort key: larger key means larger monomial in graded-lex order."""
    return (mono_degree(m), tuple((-v, e) for v, e in m))


def _grlex_rev_key(m: Monomial):
    # Smaller for larger monomials; the trailing sentinel makes a proper
    # prefix compare as the smaller monomial, matching grlex_key.
    return (-mono_degree(m), tuple((v, -e) for v, e in m) + ((math.inf,),))


# --------------------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial with arbitrary-precision integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self._terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical with no zero coefficients
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls._raw({ONE_MONO: int(c)} if c else {})

    @classmethod
    def var(cls, v: int, exp: int = 1) -> "Polynomial":
        if exp < 0:
            raise ValueError("negative exponent")
        return cls._raw({((v, exp),) if exp else ONE_MONO: 1})

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[Mapping[int, int] | Monomial, int]]) -> "Polynomial":
        """Build from ``(exponent map, coefficient)`` pairs, merging like terms."""
        acc: dict = {}
        for mono, c in pairs:
            items = mono.items() if isinstance(mono, Mapping) else mono
            m = tuple(sorted((v, e) for v, e in items if e))
            if any(e < 0 for _, e in m):
                raise ValueError("negative exponent")
            acc[m] = acc.get(m, 0) + c
        return cls(acc)

    # ---- basic queries ---------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(m, 0)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if not self._terms:
            return -1
        return max(mono_degree(m) for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({mono_degree(m) for m in self._terms}) <= 1

    def variables(self) -> set[int]:
        return {v for m in self._terms for v, _ in m}

    def leading_term(self) -> tuple[Monomial, int]:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        m = max(self._terms, key=grlex_key)
        return m, self._terms[m]

    def content(self) -> int:
        return reduce(math.gcd, self._terms.values(), 0)

    # ---- arithmetic ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if not other:
                return Polynomial()
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __repr__(self) -> str:
        return f"Polynomial({render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    # ---- transformations -------------------------------------------------

    def rename(self, mapping: Mapping[int, int]) -> "Polynomial":
        """Apply a variable-to-variable map (a monomial substitution)."""
        acc: dict = {}
        for m, c in self._terms.items():
            d: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            key = tuple(sorted(d.items()))
            acc[key] = acc.get(key, 0) + c
        return Polynomial(acc)

    def derivative(self, v: int) -> "Polynomial":
        acc: dict = {}
        for m, c in self._terms.items():
            for idx, (w, e) in enumerate(m):
                if w == v:
                    nm = m[:idx] + (((w, e - 1),) if e > 1 else ()) + m[idx + 1:]
                    acc[nm] = acc.get(nm, 0) + c * e
                    break
        return Polynomial(acc)

    def substitute(self, assignments: Mapping[int, "Polynomial | int"]) -> "Polynomial":
        return substitute(self, assignments)


def _coerce(x) -> Polynomial | None:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, int):
        return Polynomial.const(x)
    return None


def x(i: int) -> Polynomial:
    if i < 1 or i >= PARAM_BASE:
        raise ValueError(f"bad variable index {i}")
    return Polynomial.var(i)


def t() -> Polynomial:
    return Polynomial.var(T_VAR)


def b(i: int) -> Polynomial:
    return Polynomial.var(b_var(i))


ZERO = Polynomial()
ONE = Polynomial.const(1)


# --------------------------------------------------------------------------
# ring operations


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    if len(p._terms) < len(q._terms):
        p, q = q, p
    acc = dict(p._terms)
    for m, c in q._terms.items():
        s = acc.get(m, 0) + c
        if s:
            acc[m] = s
        else:
            acc.pop(m, None)
    return Polynomial._raw(acc)


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    if not p._terms or not q._terms:
        return Polynomial()
    if len(p._terms) > len(q._terms):
        p, q = q, p
    acc: dict = {}
    get = acc.get
    qitems = list(q._terms.items())
    for ma, ca in p._terms.items():
        for mb, cb in qitems:
            m = mono_mul(ma, mb)
            acc[m] = get(m, 0) + ca * cb
    return Polynomial({m: c for m, c in acc.items() if c})


def substitute(p: Polynomial, assignments: Mapping[int, Polynomial | int]) -> Polynomial:
    """Simultaneous substitution ``v -> assignments[v]``; other variables are kept."""
    subs = {v: _coerce(q) for v, q in assignments.items()}
    powers: dict = {}

    def power(v: int, e: int) -> Polynomial:
        key = (v, e)
        if key not in powers:
            powers[key] = subs[v] ** e
        return powers[key]

    acc = Polynomial()
    for m, c in p._terms.items():
        kept = tuple((v, e) for v, e in m if v not in subs)
        term = Polynomial._raw({kept: c})
        for v, e in m:
            if v in subs:
                term = term * power(v, e)
                if not term:
                    break
        acc = acc + term
    return acc


def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return ``r`` with ``q * r == p``; raise :class:`NotDivisible` otherwise."""
    if not q._terms:
        raise DivisionByZero("division by the zero polynomial")
    if not p._terms:
        return Polynomial()
    if q.is_constant():
        c = q._terms[ONE_MONO]
        if any(v % c for v in p._terms.values()):
            raise NotDivisible("integer content does not divide")
        return Polynomial._raw({m: v // c for m, v in p._terms.items()})

    lm_q, lc_q = q.leading_term()
    q_items = list(q._terms.items())
    rem = dict(p._terms)
    heap = [(_grlex_rev_key(m), m) for m in rem]
    heapq.heapify(heap)
    in_heap = set(rem)
    quotient: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        in_heap.discard(m)
        c = rem.pop(m, 0)
        if not c:
            continue
        qm = mono_div(m, lm_q)
        if qm is None or c % lc_q:
            raise NotDivisible("polynomial division leaves a remainder")
        qc = c // lc_q
        quotient[qm] = qc
        for mq, cq in q_items:
            if mq == lm_q:
                continue
            mm = mono_mul(qm, mq)
            s = rem.get(mm, 0) - qc * cq
            if s:
                rem[mm] = s
                if mm not in in_heap:
                    heapq.heappush(heap, (_grlex_rev_key(mm), mm))
                    in_heap.add(mm)
            else:
                rem.pop(mm, None)
    return Polynomial._raw(quotient)


def divides(q: Polynomial, p: Polynomial) -> bool:
    try:
        exact_divide(p, q)
    except NotDivisible:
        return False
    return True


def min_total_degree_in(p: Polynomial, variables: Iterable[int]) -> int:
    """Minimum over the terms of ``p`` of the degree in ``variables`` only."""
    if not p._terms:
        raise ZeroPolynomial("minimum degree of the zero polynomial")
    vs = set(variables)
    return min(sum(e for v, e in m if v in vs) for m in p._terms)


def primitive_normalize(p: Polynomial) -> Polynomial:
    """Divide by the integer content; make the grlex-leading coefficient positive."""
    if not p._terms:
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    g = p.content()
    _, lc = p.leading_term()
    if lc < 0:
        g = -g
    return Polynomial._raw({m: c // g for m, c in p._terms.items()})


def equal_up_to_sign(p: Polynomial, q: Polynomial) -> bool:
    return p == q or p == -q


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry array does not match the declared shape")

    @classmethod
    def from_rows(cls, rows) -> "PolyMatrix":
        ent = tuple(tuple(_coerce(e) for e in r) for r in rows)
        ncols = len(ent[0]) if ent else 0
        return cls(len(ent), ncols, ent)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def swap_rows(self, i: int, j: int) -> "PolyMatrix":
        rows = list(self.entries)
        rows[i], rows[j] = rows[j], rows[i]
        return PolyMatrix(self.rows, self.cols, tuple(rows))

    def submatrix(self, keep_rows, keep_cols) -> "PolyMatrix":
        kr, kc = list(keep_rows), list(keep_cols)
        return PolyMatrix(len(kr), len(kc), tuple(tuple(self.entries[i][j] for j in kc) for i in kr))

    def relabel(self, mapping: Mapping[int, int]) -> "PolyMatrix":
        return PolyMatrix(self.rows, self.cols, tuple(tuple(e.rename(mapping) for e in r) for r in self.entries))


def determinant(m: PolyMatrix) -> Polynomial:
    """Fraction-free Bareiss elimination; every division is exact."""
    if m.rows != m.cols:
        raise NonSquare(f"{m.rows}x{m.cols} matrix is not square")
    n = m.rows
    if n == 0:
        return ONE
    a = [list(r) for r in m.entries]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        candidates = [i for i in range(k, n) if a[i][k]]
        if not candidates:
            return Polynomial()
        piv = min(candidates, key=lambda i: (len(a[i][k]), i))
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk
                if aik and row_k[j]:
                    num = num - aik * row_k[j]
                row_i[j] = exact_divide(num, prev) if prev != ONE else num
            row_i[k] = ZERO
        prev = akk
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant_cofactor(m: PolyMatrix) -> Polynomial:
    """Laplace expansion along the first row (small-size oracle)."""
    if m.rows != m.cols:
        raise NonSquare(f"{m.rows}x{m.cols} matrix is not square")
    n = m.rows
    if n == 0:
        return ONE
    if n == 1:
        return m[0, 0]
    total = ZERO
    for j in range(n):
        e = m[0, j]
        if not e:
            continue
        minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
        term = e * determinant_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinant_leibniz(m: PolyMatrix) -> Polynomial:
    """Sum over permutations; only for tiny matrices in tests."""
    n = m.rows
    total = ZERO
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ONE
        for i, j in enumerate(perm):
            term = term * m[i, j]
            if not term:
                break
        total = total - term if inv % 2 else total + term
    return total


# --------------------------------------------------------------------------
# text format


def _render_mono(m: Monomial) -> str:
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in m)


def render(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    parts = []
    for m in sorted(p._terms, key=grlex_key, reverse=True):
        c = p._terms[m]
        mono = _render_mono(m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+|b\d+|t)|(\*\*|[-+*^()]))")


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, name, op = mt.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("var", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = mt.end()
    return out


def _name_to_var(name: str) -> int:
    if name == "t":
        return T_VAR
    idx = int(name[1:])
    if idx < 1:
        raise ParseError(f"variable index must be positive: {name}")
    return b_var(idx) if name[0] == "b" else idx


def parse(text: str) -> Polynomial:
    """Parse ``x1^2*x2 - 3*x3`` style text (parentheses also accepted)."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def expr() -> Polynomial:
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            _, op = take()
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> Polynomial:
        acc = unary()
        while peek() == ("op", "*"):
            take()
            acc = acc * unary()
        return acc

    def unary() -> Polynomial:
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power() -> Polynomial:
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom() -> Polynomial:
        kind, val = take()
        if kind == "num":
            return Polynomial.const(val)
        if kind == "var":
            return Polynomial.var(_name_to_var(val))
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise ParseError("missing ')'")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    if not toks:
        raise ParseError("empty polynomial")
    result = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input near token {pos}")
    return result
