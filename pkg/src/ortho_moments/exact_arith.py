"""Exact integer/rational kernels.

Rationals are :class:`fractions.Fraction`, which is always stored in lowest
terms with a positive denominator. The double factorial used throughout the
package is the *shifted* one,

    paper_double_factorial(m) = (m-1)(m-3)(m-5)...   (ending at 1 or 2),

i.e. the usual ``(m-1)!!``. Every closed form in the package goes through
:func:`paper_double_factorial`; nothing calls a standard double factorial.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Sequence

from .errors import ContractError, InconsistentSystemError, SingularMatrixError

ExactRational = Fraction

__all__ = [
    "ExactRational",
    "paper_double_factorial",
    "factorial",
    "binomial",
    "to_json",
    "from_json",
    "render",
    "parse_rational",
    "bareiss_solve",
    "solve_consistent",
]

# _DF[m] == paper_double_factorial(m); grown on demand
_DF = [1, 1, 1]
_DF_LOCK = threading.Lock()


def paper_double_factorial(m: int) -> int:
    """Return ``(m-1)(m-3)...``, the product ending at 1 or 2.

    >>> [paper_double_factorial(m) for m in range(8)]
    [1, 1, 1, 2, 3, 8, 15, 48]
    """
    if m < 0:
        raise ContractError(f"double factorial of negative argument {m}")
    if m >= len(_DF):
        with _DF_LOCK:
            while len(_DF) <= m:
                j = len(_DF)
                _DF.append((j - 1) * _DF[j - 2])
    return _DF[m]


def factorial(m: int) -> int:
    if m < 0:
        raise ContractError(f"factorial of negative argument {m}")
    return math.factorial(m)


def binomial(m: int, r: int) -> int:
    """C(m, r) for nonnegative arguments; zero when r > m."""
    if m < 0 or r < 0:
        raise ContractError(f"binomial({m}, {r}) needs nonnegative arguments")
    return math.comb(m, r)


def to_json(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def from_json(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def render(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _check_square(a, b):
    size = len(a)
    if any(len(row) != size for row in a) or len(b) != size:
        raise ContractError("expected a square system with a matching right-hand side")
    return size


def bareiss_solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[Fraction]:
    """Solve ``a x = b`` over the rationals for an integer matrix ``a``.

    Fraction-free (Bareiss) elimination keeps every intermediate entry an
    integer minor of the augmented matrix; only back substitution divides.
    Raises :class:`SingularMatrixError` when a column has no nonzero pivot.
    """
    size = _check_square(a, b)
    m = [[int(v) for v in row] + [int(rhs)] for row, rhs in zip(a, b)]
    prev = 1
    for k in range(size):
        if m[k][k] == 0:
            for p in range(k + 1, size):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    break
            else:
                raise SingularMatrixError(k)
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, size):
            row_i = m[i]
            lead = row_i[k]
            if lead == 0:
                # a zero lead still needs the exact rescale by pivot/prev
                for j in range(k + 1, size + 1):
                    row_i[j] = row_i[j] * pivot // prev
            else:
                for j in range(k + 1, size + 1):
                    row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
                row_i[k] = 0
        prev = pivot

    x = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        row = m[i]
        acc = Fraction(row[size])
        for j in range(i + 1, size):
            if row[j]:
                acc -= row[j] * x[j]
        x[i] = acc / row[i]
    return x


def solve_consistent(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Return one exact solution of a possibly singular square system.

    Free variables are set to zero. Raises :class:`InconsistentSystemError`
    when ``b`` is not in the column space of ``a``.
    """
    size = _check_square(a, b)
    m = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots = []
    r = 0
    for c in range(size):
        p = next((i for i in range(r, size) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(size):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == size:
            break
    if any(m[i][size] != 0 for i in range(r, size)):
        raise InconsistentSystemError("right-hand side is outside the column space")
    x = [Fraction(0)] * size
    for row, c in enumerate(pivots):
        x[c] = m[row][size]
    return x
