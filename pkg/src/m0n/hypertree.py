"""Hypertrees: validation, divisor equations, enumeration up to relabeling.

Vertices are labelled ``1..n`` throughout.  Blocks are stored as sorted
tuples; the block list order is kept as given (block ``j`` of a validation
report refers to it), but equality of hypertrees as set systems is available
through :meth:`Hypertree.block_set`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .errors import BadK, BadPivot, InvalidHypertree, UnsupportedN
from .polyring import (
    ONE,
    PolyMatrix,
    Polynomial,
    determinant,
    exact_divide,
    primitive_normalize,
    x,
)

MAX_ENUM_N = 10


@dataclass(frozen=True)
class Hypertree:
    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(blk)) for blk in self.blocks)
        for blk in blocks:
            if len(set(blk)) != len(blk):
                raise ValueError(f"block {list(blk)} repeats a vertex")
            if not all(1 <= v <= self.n for v in blk):
                raise ValueError(f"block {list(blk)} is not a subset of 1..{self.n}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def d(self) -> int:
        return len(self.blocks)

    def block_set(self) -> frozenset:
        return frozenset(frozenset(blk) for blk in self.blocks)

    def relabel(self, perm: Mapping[int, int]) -> "Hypertree":
        return Hypertree(self.n, tuple(tuple(perm[v] for v in blk) for blk in self.blocks))

    def sorted_blocks(self) -> "Hypertree":
        return Hypertree(self.n, tuple(sorted(self.blocks)))

    def to_json(self) -> dict:
        return {"n": self.n, "blocks": [list(blk) for blk in self.blocks]}

    @classmethod
    def from_json(cls, data: Mapping, zero_based: bool = False) -> "Hypertree":
        shift = 1 if zero_based else 0
        return cls(int(data["n"]), tuple(tuple(int(v) + shift for v in blk) for blk in data["blocks"]))

    @classmethod
    def load(cls, path, zero_based: bool = False) -> "Hypertree":
        with open(path) as fh:
            return cls.from_json(json.load(fh), zero_based=zero_based)


COMPLETE_QUADRILATERAL = Hypertree(6, ((1, 2, 3), (2, 4, 5), (1, 5, 6), (3, 4, 6)))


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    block_sizes: bool
    coverage: bool
    convexity: bool
    normalization: bool
    convexity_violation: tuple | None = None  # 1-based block indices of a violating S
    uncovered: tuple = field(default=())

    @property
    def valid(self) -> bool:
        return self.block_sizes and self.coverage and self.convexity and self.normalization

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "block_sizes": self.block_sizes,
            "coverage": self.coverage,
            "convexity": self.convexity,
            "normalization": self.normalization,
            "convexity_violation": list(self.convexity_violation) if self.convexity_violation else None,
            "uncovered": list(self.uncovered),
        }


def _masks(h: Hypertree) -> list[int]:
    return [sum(1 << (v - 1) for v in blk) for blk in h.blocks]


def _subset_slack(h: Hypertree):
    """Yield ``(S_mask, |union S| - 2 - sum(|G_j| - 2))`` over nonempty S."""
    masks = _masks(h)
    d = len(masks)
    union = [0] * (1 << d)
    weight = [0] * (1 << d)
    for S in range(1, 1 << d):
        low = S & -S
        j = low.bit_length() - 1
        union[S] = union[S ^ low] | masks[j]
        weight[S] = weight[S ^ low] + len(h.blocks[j]) - 2
        yield S, union[S].bit_count() - 2 - weight[S]


def _mask_to_indices(S: int) -> tuple:
    return tuple(j + 1 for j in range(S.bit_length()) if S >> j & 1)


def validate(h: Hypertree) -> ValidationReport:
    sizes = all(len(blk) >= 3 for blk in h.blocks)
    counts = {v: 0 for v in range(1, h.n + 1)}
    for blk in h.blocks:
        for v in blk:
            counts[v] += 1
    uncovered = tuple(v for v, c in counts.items() if c < 2)
    violation = None
    for S, slack in _subset_slack(h):
        if slack < 0:
            violation = _mask_to_indices(S)
            break
    norm = h.n - 2 == sum(len(blk) - 2 for blk in h.blocks)
    return ValidationReport(sizes, not uncovered, violation is None, norm, violation, uncovered)


def is_irreducible(h: Hypertree) -> bool:
    if not validate(h).valid:
        raise InvalidHypertree("irreducibility is only defined for valid hypertrees")
    d = h.d
    for S, slack in _subset_slack(h):
        if 1 < S.bit_count() < d and slack <= 0:
            return False
    return True


def _require_valid(h: Hypertree) -> None:
    report = validate(h)
    if not report.valid:
        raise InvalidHypertree(f"not a valid hypertree: {report.to_json()}")


# --------------------------------------------------------------------------
# divisor equation


@dataclass(frozen=True)
class TripleSystem:
    triples: tuple


def triple_system(h: Hypertree) -> TripleSystem:
    """Triples ``{a1, a2, aj}`` of each block, ``a1 < a2`` its two smallest elements."""
    _require_valid(h)
    triples = []
    for blk in h.blocks:
        a1, a2 = blk[0], blk[1]
        triples.extend((a1, a2, aj) for aj in blk[2:])
    return TripleSystem(tuple(triples))


def matrix_A(ts: TripleSystem, n: int) -> PolyMatrix:
    zero = Polynomial()
    rows = []
    for i, j, k in ts.triples:
        row = [zero] * n
        row[i - 1] = x(j) - x(k)
        row[j - 1] = x(k) - x(i)
        row[k - 1] = x(i) - x(j)
        rows.append(tuple(row))
    return PolyMatrix(len(rows), n, tuple(rows))


def matrix_B(a: PolyMatrix, pivot_row: int = 0) -> PolyMatrix:
    """Delete ``pivot_row`` (0-based) and the columns where it is nonzero."""
    if not 0 <= pivot_row < a.rows:
        raise BadPivot(f"pivot row {pivot_row} outside 0..{a.rows - 1}")
    support = [j for j, e in enumerate(a.row(pivot_row)) if e]
    if len(support) != 3:
        raise BadPivot(f"pivot row has {len(support)} nonzero entries, expected 3")
    return a.submatrix(
        [i for i in range(a.rows) if i != pivot_row],
        [j for j in range(a.cols) if j not in support],
    )


def denominator(h: Hypertree) -> Polynomial:
    den = ONE
    for blk in h.blocks:
        if len(blk) > 3:
            den = den * (x(blk[0]) - x(blk[1])) ** (len(blk) - 3)
    return den


def divisor_polynomial(h: Hypertree, pivot_row: int = 0) -> Polynomial:
    """Primitive equation of the hypertree divisor, of degree ``d - 1``."""
    ts = triple_system(h)
    B = matrix_B(matrix_A(ts, h.n), pivot_row)
    g = exact_divide(determinant(B), denominator(h))
    return primitive_normalize(g)


# --------------------------------------------------------------------------
# canonical labeling (individualization-refinement on the incidence structure)


def _refine(colors: list[int], incidence: list[list[tuple]]) -> list[int]:
    ncells = len(set(colors))
    while True:
        sigs = []
        for v, blocks in enumerate(incidence):
            nb = sorted(tuple(sorted(colors[w] for w in blk if w != v)) for blk in blocks)
            sigs.append((colors[v], tuple(nb)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == ncells:
            return colors
        ncells = len(rank)


def canonical_form(h: Hypertree) -> tuple:
    """Relabeling-invariant certificate: sorted blocks under a canonical labeling."""
    n = h.n
    blocks0 = [tuple(v - 1 for v in blk) for blk in h.blocks]
    incidence = [[blk for blk in blocks0 if v in blk] for v in range(n)]
    best = None

    def search(colors: list[int]) -> None:
        nonlocal best
        if len(set(colors)) == n:
            cert = tuple(sorted(tuple(sorted(colors[v] + 1 for v in blk)) for blk in blocks0))
            if best is None or cert < best:
                best = cert
            return
        cells: dict = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = min(c for c, vs in cells.items() if len(vs) > 1)
        for v in cells[target]:
            split = [2 * c for c in colors]
            split[v] -= 1
            search(_refine(split, incidence))

    search(_refine([0] * n, incidence))
    return (n, best)


def canonical_hypertree(h: Hypertree) -> Hypertree:
    n, blocks = canonical_form(h)
    return Hypertree(n, blocks)


def isomorphic(h1: Hypertree, h2: Hypertree) -> bool:
    return canonical_form(h1) == canonical_form(h2)


# --------------------------------------------------------------------------
# automorphisms


def automorphism_group_size_brute(h: Hypertree) -> int:
    target = h.block_set()
    count = 0
    for perm in permutations(range(1, h.n + 1)):
        mapping = dict(zip(range(1, h.n + 1), perm))
        if frozenset(frozenset(mapping[v] for v in blk) for blk in h.blocks) == target:
            count += 1
    return count


def automorphism_group_size_search(h: Hypertree) -> int:
    """Backtracking count; images are assigned vertex by vertex, pruning on blocks."""
    n = h.n
    blocks = [frozenset(blk) for blk in h.blocks]
    target = set(blocks)
    degree = {v: sum(v in blk for blk in blocks) for v in range(1, n + 1)}
    sizes = {v: sorted(len(blk) for blk in blocks if v in blk) for v in range(1, n + 1)}
    # blocks become checkable once their last vertex (in assignment order) is placed
    closing: dict = {v: [] for v in range(1, n + 1)}
    for blk in blocks:
        closing[max(blk)].append(blk)
    image: dict = {}
    used: set = set()

    def extend(v: int) -> int:
        if v > n:
            return 1
        total = 0
        for w in range(1, n + 1):
            if w in used or degree[w] != degree[v] or sizes[w] != sizes[v]:
                continue
            image[v] = w
            if all(frozenset(image[u] for u in blk) in target for blk in closing[v]):
                used.add(w)
                total += extend(v + 1)
                used.discard(w)
            del image[v]
        return total

    return extend(1)


def automorphism_group_size(h: Hypertree) -> int:
    """Order of the group of vertex permutations preserving the block set."""
    _require_valid(h)
    if h.n <= 8:
        return automorphism_group_size_brute(h)
    return automorphism_group_size_search(h)


# --------------------------------------------------------------------------
# constructors and enumeration


def bipyramid(k: int) -> Hypertree:
    """Black triangles of a checkerboard-colored bipyramid over a ``2k``-gon.

    Equator vertices ``1..2k`` in cyclic order; poles ``2k+1`` and ``2k+2``.
    """
    if k < 2:
        raise BadK(f"bipyramid needs k >= 2, got {k}")
    m = 2 * k
    north, south = m + 1, m + 2
    blocks = []
    for i in range(1, m + 1):
        nxt = i % m + 1
        blocks.append((north if i % 2 == 0 else south, i, nxt))
    return Hypertree(m + 2, tuple(blocks))


def _enumerate_labelled(n: int):
    """Yield labelled irreducible hypertrees covering every isomorphism class.

    Blocks are added one at a time.  The first block is ``{1..kmax}`` with
    ``kmax`` the largest block size; each later block must contain the
    smallest used vertex that still lies in fewer than two blocks (or, if
    there is none, some used vertex), and the vertices it introduces take the
    next unused labels.  Partial collections are kept strictly convex.
    """
    target = n - 2

    def rec(blocks, masks, deg, used, weight, kmax):
        if weight == target:
            if used == n and all(c >= 2 for c in deg[1:]):
                yield tuple(blocks)
            return
        remaining = target - weight
        need = sum(max(0, 2 - c) for c in deg[1: used + 1]) + 2 * (n - used)
        if need > 3 * remaining:
            return
        deficient = [v for v in range(1, used + 1) if deg[v] < 2]
        anchors = deficient[:1] if deficient else list(range(1, used + 1))
        seen = set()
        for v in anchors:
            others = [u for u in range(1, used + 1) if u != v]
            for size in range(3, min(kmax, remaining + 2) + 1):
                for n_new in range(0, min(size - 1, n - used) + 1):
                    n_old = size - 1 - n_new
                    if n_old > len(others):
                        continue
                    new_part = tuple(range(used + 1, used + n_new + 1))
                    for old_part in combinations(others, n_old):
                        blk = tuple(sorted((v,) + old_part)) + new_part
                        if blk in seen:
                            continue
                        seen.add(blk)
                        mask = sum(1 << (u - 1) for u in blk)
                        if any((mask & m2).bit_count() > 1 for m2 in masks):
                            continue
                        final = weight + size - 2 == target
                        if not _convex_with(masks, blocks, mask, size, final):
                            continue
                        for u in blk:
                            deg[u] += 1
                        blocks.append(blk)
                        masks.append(mask)
                        yield from rec(blocks, masks, deg, max(used, blk[-1]), weight + size - 2, kmax)
                        blocks.pop()
                        masks.pop()
                        for u in blk:
                            deg[u] -= 1

    for kmax in range(min(n, target + 2), 2, -1):
        first = tuple(range(1, kmax + 1))
        deg = [0] * (n + 1)
        for u in first:
            deg[u] = 1
        yield from rec([first], [sum(1 << (u - 1) for u in first)], deg, kmax, kmax - 2, kmax)


def _convex_with(masks, blocks, mask, size, final) -> bool:
    """Convexity of every S containing the new block; strict unless S is everything at the end."""
    d = len(masks)
    union = [0] * (1 << d)
    weight = [0] * (1 << d)
    full = (1 << d) - 1
    for S in range(0, 1 << d):
        if S:
            low = S & -S
            j = low.bit_length() - 1
            union[S] = union[S ^ low] | masks[j]
            weight[S] = weight[S ^ low] + len(blocks[j]) - 2
        if not S:
            continue
        slack = (union[S] | mask).bit_count() - 2 - (weight[S] + size - 2)
        if final and S == full:
            if slack < 0:
                return False
        elif slack <= 0:
            return False
    return True


def enumerate_irreducible(n: int) -> list[Hypertree]:
    """Irreducible hypertrees on ``1..n`` up to relabeling, in canonical order."""
    if not 1 <= n <= MAX_ENUM_N:
        raise UnsupportedN(f"enumeration supports 1 <= n <= {MAX_ENUM_N}, got {n}")
    found: dict = {}
    for blocks in _enumerate_labelled(n):
        h = Hypertree(n, blocks)
        if not validate(h).valid or not is_irreducible(h):
            continue
        cert = canonical_form(h)
        if cert not in found:
            found[cert] = Hypertree(n, cert[1])
    return [found[c] for c in sorted(found)]
