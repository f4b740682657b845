"""Floating-point sanity checks: Haar sampling on O_n and Monte Carlo moments.

Seed contract: ``mc_integral(..., seed=s)`` splits the run into consecutive
batches of ``BATCH_SIZE`` samples; batch ``i`` draws from
``numpy.random.default_rng(SeedSequence(s).spawn(nbatches)[i])``. Batch
statistics are merged in batch order, so the estimate is bit-identical for a
given (seed, samples, n, a) on one platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError
from .pairings import as_exponent_matrix

BATCH_SIZE = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    mean: float
    standard_error: float
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {"mean": self.mean, "stderr": self.standard_error, "samples": self.samples, "seed": self.seed}


def haar_batch(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent Haar-distributed n x n orthogonal matrices.

    QR of a Gaussian matrix, with column j of Q multiplied by the sign of
    R[j, j]; without that correction the law is not Haar.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    out = np.empty((size, n, n))
    filled = 0
    while filled < size:
        z = rng.standard_normal((size - filled, n, n))
        q, r = np.linalg.qr(z)
        diag = np.diagonal(r, axis1=-2, axis2=-1)
        # rank-deficient draws have probability zero; drop and redraw them
        good = np.all(np.abs(diag) > 1e-12, axis=1)
        q, diag = q[good], diag[good]
        q = q * np.sign(diag)[:, None, :]
        out[filled:filled + len(q)] = q
        filled += len(q)
    return out


def haar_sample(n: int, rng: np.random.Generator) -> np.ndarray:
    return haar_batch(n, 1, rng)[0]


def _moment_values(mats: np.ndarray, a: tuple) -> np.ndarray:
    vals = np.ones(len(mats))
    for i, row in enumerate(a):
        for j, e in enumerate(row):
            if e:
                vals *= mats[:, i, j] ** e
    return vals


def mc_integral(a, n: int, samples: int, seed: int, batch_size: int = BATCH_SIZE) -> McEstimate:
    """Sample mean and standard error of prod u_ij ** a_ij under Haar measure."""
    a = as_exponent_matrix(a)
    if samples < 1:
        raise ContractError(f"need at least one sample, got {samples}")
    p = len(a)
    q = len(a[0]) if a else 0
    if n < max(p, q, 1):
        raise DomainError(f"a {p}x{q} exponent matrix does not fit inside O_{n}")
    nbatches = -(-samples // batch_size)
    children = np.random.SeedSequence(seed).spawn(nbatches)
    count, mean, m2 = 0, 0.0, 0.0
    for b, child in enumerate(children):
        size = min(batch_size, samples - b * batch_size)
        vals = _moment_values(haar_batch(n, size, np.random.default_rng(child)), a)
        b_mean = float(vals.mean())
        b_m2 = float(((vals - b_mean) ** 2).sum())
        # pairwise merge of (count, mean, M2)
        total = count + size
        delta = b_mean - mean
        mean += delta * size / total
        m2 += b_m2 + delta * delta * count * size / total
        count = total
    stderr = float(np.sqrt(m2 / (count - 1) / count)) if count > 1 else 0.0
    return McEstimate(mean, stderr, count, seed)
