"""Pairings (perfect matchings) of {1, ..., 2k} and the index bookkeeping
of the Weingarten formula.

A :class:`Pairing` is stored in canonical form: each block ``(l, r)`` has
``l < r`` and blocks are sorted by ``l``. Enumeration order is lexicographic
on that form, which fixes the row/column order of every Gram and Weingarten
matrix in the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ContractError, ParityError, ResourceLimitError

DEFAULT_PAIRING_LIMIT = 8

MultiIndex = tuple


@dataclass(frozen=True, order=True)
class Pairing:
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted((int(l), int(r)))) for l, r in self.pairs))
        points = [x for pair in pairs for x in pair]
        if sorted(points) != list(range(1, len(points) + 1)):
            raise ContractError(f"{pairs} is not a pairing of 1..{len(points)}")
        object.__setattr__(self, "pairs", pairs)

    @property
    def k(self) -> int:
        return len(self.pairs)

    def partner(self) -> tuple:
        """Zero-based involution: ``partner()[x]`` is the point matched to ``x``."""
        out = [0] * (2 * self.k)
        for l, r in self.pairs:
            out[l - 1] = r - 1
            out[r - 1] = l - 1
        return tuple(out)

    def __str__(self) -> str:
        if not self.pairs:
            return "()"
        return "".join(f"({l} {r})" for l, r in self.pairs)

    @classmethod
    def parse(cls, text: str) -> "Pairing":
        """Read the block syntax used by :meth:`__str__`, e.g. ``"(1 3)(2 4)"``."""
        text = text.strip()
        if text in ("", "()"):
            return cls(())
        blocks = re.findall(r"\(\s*(\d+)[\s,]+(\d+)\s*\)", text)
        rebuilt = re.sub(r"\(\s*\d+[\s,]+\d+\s*\)", "", text)
        if not blocks or rebuilt.strip():
            raise ContractError(f"cannot parse pairing {text!r}")
        return cls(tuple((int(l), int(r)) for l, r in blocks))


def _check_limit(k, limit):
    if limit is None:
        limit = DEFAULT_PAIRING_LIMIT
    if k < 0:
        raise ContractError(f"k must be nonnegative, got {k}")
    if k > limit:
        raise ResourceLimitError("pairing degree k =", k, limit)


def _iter_pairings(points: Sequence[int]):
    """Lexicographic pairings of ``points`` (sorted), without recursion."""
    points = list(points)
    if not points:
        yield ()
        return
    # each stack frame: (remaining points, blocks so far); candidates are
    # pushed in reverse so the smallest partner is expanded first
    stack = [(tuple(points), ())]
    while stack:
        rest, blocks = stack.pop()
        if not rest:
            yield blocks
            continue
        first = rest[0]
        for idx in range(len(rest) - 1, 0, -1):
            other = rest[idx]
            stack.append((rest[1:idx] + rest[idx + 1:], blocks + ((first, other),)))


def enumerate_pairings(k: int, limit: int | None = None) -> list[Pairing]:
    """All ``(2k-1)!!`` pairings of {1..2k} in canonical lexicographic order."""
    _check_limit(k, limit)
    return list(_pairing_table(k)[0])


@lru_cache(maxsize=None)
def _pairing_table(k: int):
    pairings = tuple(Pairing(blocks) for blocks in _iter_pairings(range(1, 2 * k + 1)))
    partners = np.array([p.partner() for p in pairings], dtype=np.int64).reshape(len(pairings), 2 * k)
    index = {p: i for i, p in enumerate(pairings)}
    return pairings, partners, index


def _check_same_k(p: Pairing, s: Pairing):
    if p.k != s.k:
        raise ContractError(f"pairings of different sizes: 2*{p.k} vs 2*{s.k}")


def join_components(p: Pairing, s: Pairing) -> list[list[int]]:
    """Blocks of the join partition, as sorted lists of 1-based points."""
    _check_same_k(p, s)
    parent = list(range(2 * p.k + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for l, r in p.pairs + s.pairs:
        rl, rr = find(l), find(r)
        if rl != rr:
            parent[max(rl, rr)] = min(rl, rr)
    blocks: dict = {}
    for x in range(1, 2 * p.k + 1):
        blocks.setdefault(find(x), []).append(x)
    return list(blocks.values())


def join_block_count(p: Pairing, s: Pairing) -> int:
    """Number of blocks of the join of two pairings (union-find)."""
    return len(join_components(p, s))


def coset_type(p: Pairing, s: Pairing) -> tuple:
    """Half-sizes of the join blocks, sorted decreasingly (a partition of k)."""
    return tuple(sorted((len(b) // 2 for b in join_components(p, s)), reverse=True))


def join_counts_against(partner: Sequence[int], partners: np.ndarray) -> np.ndarray:
    """Vectorised ``join_block_count`` of one pairing against many.

    ``partner`` is a zero-based involution, ``partners`` a stack of them. For
    two perfect matchings every join block of 2m points splits into exactly two
    cycles of the composed permutation, so blocks = cycles / 2.
    """
    partners = np.asarray(partners)
    count, width = partners.shape
    if width == 0:
        return np.zeros(count, dtype=np.int64)
    perm = partners[:, np.asarray(partner)]
    label = np.broadcast_to(np.arange(width), (count, width)).copy()
    step = perm.copy()
    # pointer doubling: after t rounds each label is the min over 2**t steps
    for _ in range(int(np.ceil(np.log2(width))) + 1):
        label = np.minimum(label, np.take_along_axis(label, step, axis=1))
        step = np.take_along_axis(step, step, axis=1)
    cycles = (label == np.arange(width)).sum(axis=1)
    return cycles // 2


def fits(p: Pairing, index: Sequence[int]) -> bool:
    """True when every block of ``p`` joins two equal entries of ``index``."""
    if len(index) != 2 * p.k:
        raise ContractError(f"multi-index of length {len(index)} for a pairing of {2 * p.k} points")
    return all(index[l - 1] == index[r - 1] for l, r in p.pairs)


def fitting_pairings(index: Sequence[int]) -> list[Pairing]:
    """All pairings that ``index`` fits into, built class by class.

    Only points carrying the same label may be matched, so this is the product
    of the pairings of each equality class; nothing from D_k is filtered.
    """
    classes: dict = {}
    for pos, label in enumerate(index, start=1):
        classes.setdefault(label, []).append(pos)
    groups = list(classes.values())
    if any(len(g) % 2 for g in groups):
        return []
    out = [()]
    for g in groups:
        out = [acc + blocks for acc in out for blocks in _iter_pairings(g)]
    return [Pairing(blocks) for blocks in out]


def as_exponent_matrix(a) -> tuple:
    """Validate and normalise an exponent matrix to a tuple of int tuples."""
    rows = tuple(tuple(int(v) for v in row) for row in a)
    if rows and len({len(r) for r in rows}) != 1:
        raise ContractError("ragged exponent matrix")
    if any(v < 0 for row in rows for v in row):
        raise ContractError("exponents must be nonnegative")
    return rows


def multi_indices_of(a) -> tuple[MultiIndex, MultiIndex]:
    """Row and column labels of the factor list of prod u_ij**a_ij (row-major)."""
    a = as_exponent_matrix(a)
    rows, cols = [], []
    for i, row in enumerate(a, start=1):
        for j, e in enumerate(row, start=1):
            rows.extend([i] * e)
            cols.extend([j] * e)
    if len(rows) % 2:
        raise ParityError(f"total degree {len(rows)} is odd; the integral vanishes")
    return tuple(rows), tuple(cols)


def label_orbit_key(p: Pairing, labels: Sequence[int]) -> tuple:
    """Invariant of ``p`` under permutations preserving ``labels``.

    Two pairings are in the same orbit of the label-preserving (Young)
    subgroup exactly when they join the same multiset of label pairs.
    """
    return tuple(sorted(
        (min(labels[l - 1], labels[r - 1]), max(labels[l - 1], labels[r - 1])) for l, r in p.pairs
    ))
