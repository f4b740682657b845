"""Brute-force ground truth: the Weingarten formula at a concrete integer n.

The integral of ``u_{i1 j1} ... u_{i2k j2k}`` over O_n is
``sum_{pi, sigma} delta_pi(i) delta_sigma(j) W(pi, sigma)`` with ``W`` the
inverse of the Gram matrix ``G(pi, sigma) = n ** |pi v sigma|``.

Nothing here inverts G. Every value comes from one exact solve of a linear
system ``G x = rhs`` whose right-hand side is invariant under a group of
point permutations that also leaves G invariant. The solution is then
invariant too, so the system collapses onto orbit indicators:

* for an integral, the permutations preserving the row (or column) labels of
  the multi-index; orbits are keyed by the multiset of label pairs joined;
* for a Weingarten entry, the stabiliser of the column pairing; orbits are
  the coset types (join block sizes), a partition of k.

The coset-type system also decides invertibility of G: the permutation
module on pairings is multiplicity free, so G has the same distinct
eigenvalues as its restriction to the stabiliser-invariant vectors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    ContractError,
    DomainError,
    GramSingularError,
    ResourceLimitError,
    SingularMatrixError,
)
from .exact_arith import bareiss_solve, solve_consistent
from .pairings import (
    Pairing,
    _pairing_table,
    as_exponent_matrix,
    coset_type,
    enumerate_pairings,
    fitting_pairings,
    join_counts_against,
    label_orbit_key,
    multi_indices_of,
)

GRAM_LIMIT = 6


def oracle_limit() -> int:
    """Degree cap for exact solves; ``ORTHO_MOMENTS_LIMIT_K`` overrides it."""
    return int(os.environ.get("ORTHO_MOMENTS_LIMIT_K", "6"))


def _check_kn(k, n, limit):
    if k < 1:
        raise ContractError(f"degree k must be at least 1, got {k}")
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    if k > limit:
        raise ResourceLimitError("degree k =", k, limit)


@dataclass(frozen=True)
class GramMatrix:
    """``G(pi, sigma) = n ** blocks[pi, sigma]`` over canonically ordered pairings."""

    k: int
    n: int
    pairings: tuple
    blocks: np.ndarray

    @property
    def size(self) -> int:
        return len(self.pairings)

    def __getitem__(self, idx) -> int:
        i, j = idx
        return self.n ** int(self.blocks[i, j])

    @property
    def entries(self) -> list[list[int]]:
        powers = [self.n ** c for c in range(self.k + 1)]
        return [[powers[c] for c in row] for row in self.blocks.tolist()]


@lru_cache(maxsize=8)
def _join_matrix(k: int) -> np.ndarray:
    pairings, partners, _ = _pairing_table(k)
    out = np.empty((len(pairings), len(pairings)), dtype=np.int8)
    for i in range(len(pairings)):
        out[i] = join_counts_against(partners[i], partners)
    return out


def gram_matrix(k: int, n: int, limit: int = GRAM_LIMIT) -> GramMatrix:
    _check_kn(k, n, limit)
    pairings = _pairing_table(k)[0]
    return GramMatrix(k, n, pairings, _join_matrix(k))


# -- orbit reductions ------------------------------------------------------


@dataclass(frozen=True)
class _Reduction:
    k: int
    keys: tuple  # orbit keys, in first-seen order
    orbit_of: dict  # orbit key -> orbit number
    coeffs: tuple  # coeffs[a][b][c] = #{rho in orbit b : |rep_a v rho| = c}

    def matrix(self, n: int) -> list[list[int]]:
        powers = [n ** c for c in range(self.k + 1)]
        return [[sum(c * p for c, p in zip(row, powers)) for row in block] for block in self.coeffs]


def _reduce(k: int, keys_per_pairing: list) -> _Reduction:
    pairings, partners, _ = _pairing_table(k)
    orbit_of: dict = {}
    reps = []
    ids = np.empty(len(pairings), dtype=np.int64)
    for idx, key in enumerate(keys_per_pairing):
        if key not in orbit_of:
            orbit_of[key] = len(reps)
            reps.append(idx)
        ids[idx] = orbit_of[key]
    m = len(reps)
    coeffs = []
    for rep in reps:
        counts = join_counts_against(partners[rep], partners)
        hist = np.bincount(ids * (k + 1) + counts, minlength=m * (k + 1)).reshape(m, k + 1)
        coeffs.append(tuple(tuple(int(v) for v in row) for row in hist))
    return _Reduction(k, tuple(orbit_of), orbit_of, tuple(coeffs))


@lru_cache(maxsize=16)
def _coset_reduction(k: int) -> _Reduction:
    pairings = _pairing_table(k)[0]
    base = pairings[0]  # (1 2)(3 4)...(2k-1 2k)
    return _reduce(k, [coset_type(p, base) for p in pairings])


@lru_cache(maxsize=512)
def _label_reduction(labels: tuple) -> _Reduction:
    k = len(labels) // 2
    pairings = _pairing_table(k)[0]
    return _reduce(k, [label_orbit_key(p, labels) for p in pairings])


@lru_cache(maxsize=256)
def weingarten_function(k: int, n: int) -> dict:
    """Map coset type -> W(pi, sigma) for every pair of that type.

    Raises :class:`GramSingularError` when G is singular at this n.
    """
    red = _coset_reduction(k)
    identity = tuple([1] * k)
    rhs = [1 if key == identity else 0 for key in red.keys]
    try:
        sol = bareiss_solve(red.matrix(n), rhs)
    except SingularMatrixError:
        raise GramSingularError(k, n) from None
    return dict(zip(red.keys, sol))


def gram_singular(k: int, n: int) -> bool:
    """Exact test of whether the Gram matrix G_kn is singular."""
    if k == 0:
        return False
    try:
        weingarten_function(k, n)
    except GramSingularError:
        return True
    return False


def weingarten_entry(k: int, n: int, p: Pairing, s: Pairing, limit: int = GRAM_LIMIT) -> Fraction:
    """Entry (p, s) of the inverse Gram matrix.

    Solves ``G x = e_s`` restricted to vectors invariant under the stabiliser
    of ``s`` and reads coordinate ``p``.
    """
    _check_kn(k, n, limit)
    if p.k != k or s.k != k:
        raise ContractError(f"pairings must live on {2 * k} points")
    return weingarten_function(k, n)[coset_type(p, s)]


def weingarten_matrix(k: int, n: int, limit: int = GRAM_LIMIT) -> tuple[list[Pairing], list[list[Fraction]]]:
    """The full Weingarten matrix in canonical pairing order."""
    _check_kn(k, n, limit)
    w = weingarten_function(k, n)
    pairings = enumerate_pairings(k)
    rows = [[w[coset_type(p, s)] for s in pairings] for p in pairings]
    return pairings, rows


# -- integrals -------------------------------------------------------------


def _drop_zero_lines(a: tuple) -> tuple:
    rows = [r for r in a if any(r)]
    if not rows:
        return ()
    keep = [j for j in range(len(rows[0])) if any(r[j] for r in rows)]
    return tuple(tuple(r[j] for j in keep) for r in rows)


def admissible(a) -> bool:
    """Every row sum and every column sum is even."""
    a = as_exponent_matrix(a)
    if not a:
        return True
    return all(sum(r) % 2 == 0 for r in a) and all(sum(col) % 2 == 0 for col in zip(*a))


@lru_cache(maxsize=4096)
def _fitting_counts(reduce_labels: tuple, other_labels: tuple) -> tuple:
    red = _label_reduction(reduce_labels)
    counts = [0] * len(red.keys)
    for s in fitting_pairings(other_labels):
        counts[red.orbit_of[label_orbit_key(s, reduce_labels)]] += 1
    return tuple(counts)


def _solve_labels(reduce_labels: tuple, other_labels: tuple, n: int, project: bool) -> Fraction:
    red = _label_reduction(reduce_labels)
    rhs = [1 if all(x == y for x, y in key) else 0 for key in red.keys]
    matrix = red.matrix(n)
    sol = solve_consistent(matrix, rhs) if project else bareiss_solve(matrix, rhs)
    counts = _fitting_counts(reduce_labels, other_labels)
    return sum((c * x for c, x in zip(counts, sol) if c), Fraction(0))


def integral_oracle(a, n: int, *, singular: str = "refuse", limit: int | None = None) -> Fraction:
    """Exact value of ``int_{O_n} prod u_ij ** a_ij du`` via the Weingarten formula.

    ``singular`` selects what happens when G is not invertible at ``n``:
    ``"refuse"`` raises :class:`GramSingularError`; ``"project"`` solves the
    (consistent) singular system instead. The integral is the orthogonal
    projection onto the span of the pairing vectors, so any solution gives the
    same contraction; that mode needs at most n nonzero rows and columns.
    """
    if singular not in ("refuse", "project"):
        raise ContractError(f"unknown singular mode {singular!r}")
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    a = _drop_zero_lines(as_exponent_matrix(a))
    if not a:
        return Fraction(1)
    if not admissible(a):
        return Fraction(0)
    k = sum(map(sum, a)) // 2
    limit = oracle_limit() if limit is None else limit
    if k > limit:
        raise ResourceLimitError("half-degree", k, limit)
    project = False
    if gram_singular(k, n):
        if singular == "refuse":
            raise GramSingularError(k, n)
        if len(a) > n or len(a[0]) > n:
            raise DomainError(f"a {len(a)}x{len(a[0])} block does not fit inside O_{n}")
        project = True
    rows, cols = multi_indices_of(a)
    # fewer distinct labels -> larger symmetry group -> smaller reduced system
    if len(set(rows)) <= len(set(cols)):
        return _solve_labels(rows, cols, n, project)
    return _solve_labels(cols, rows, n, project)


def elementary_matrix_of(p: Pairing, s: Pairing) -> list[list[int]]:
    """k x k matrix counting the points shared by the i-th block of ``p`` and
    the j-th block of ``s`` (blocks in canonical order)."""
    if p.k != s.k:
        raise ContractError(f"pairings of different sizes: 2*{p.k} vs 2*{s.k}")
    where_s = {}
    for j, (l, r) in enumerate(s.pairs):
        where_s[l] = where_s[r] = j
    out = [[0] * p.k for _ in range(p.k)]
    for i, (l, r) in enumerate(p.pairs):
        out[i][where_s[l]] += 1
        out[i][where_s[r]] += 1
    return out
