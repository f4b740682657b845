"""Closed-form evaluators for one- and two-row integrals over O_n.

Conventions: ``DF`` is the shifted double factorial ``(m-1)(m-3)...`` of
:mod:`ortho_moments.exact_arith`. The normalised two-row quantity is

    phi(a; b) = I(a; b) / (I_{n-1}(a) * I_{n-1}(b)),

defined for vectors of even exponents. :func:`phi_two_row` takes *half*
exponents, so ``phi_two_row([1], [1], n)`` is phi(2; 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod
from typing import Sequence

from .errors import ContractError, DomainError, ParityError
from .exact_arith import factorial
from .exact_arith import paper_double_factorial as DF
from .weingarten import admissible

__all__ = [
    "TwoRowSpec",
    "PhiValue",
    "admissible",
    "one_row_integral",
    "integral_n2",
    "phi_conversion_factor",
    "phi_from_integral",
    "integral_from_phi",
    "phi_one_row",
    "expansion_coefficient",
    "elementary_phi",
    "phi_two_row",
    "integral_two_row",
    "phi_triangular",
    "phi_compressed",
    "joint_moments",
]


def _check_n(n, least=2):
    if n < least:
        raise DomainError(f"n must be at least {least}, got {n}")


def _check_even(values, what="entries"):
    values = [int(v) for v in values]
    if any(v < 0 for v in values):
        raise ContractError(f"{what} must be nonnegative: {values}")
    if any(v % 2 for v in values):
        raise ParityError(f"{what} must be even: {values}")
    return values


def _nonneg(values):
    values = [int(v) for v in values]
    if any(v < 0 for v in values):
        raise ContractError(f"entries must be nonnegative: {values}")
    return values


@dataclass(frozen=True)
class TwoRowSpec:
    """Literal exponents of a two-row integral: top row ``a``, bottom row ``b``."""

    a: tuple
    b: tuple

    def __post_init__(self):
        a, b = tuple(_nonneg(self.a)), tuple(_nonneg(self.b))
        if len(a) != len(b):
            raise ContractError(f"rows of different lengths: {len(a)} and {len(b)}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def matrix(self) -> list[list[int]]:
        return [list(self.a), list(self.b)]

    @property
    def half_degree(self) -> int:
        return (sum(self.a) + sum(self.b)) // 2


@dataclass(frozen=True)
class PhiValue:
    value: Fraction
    n: int
    spec: TwoRowSpec


def one_row_integral(a: Sequence[int], n: int) -> Fraction:
    """I(a_1 ... a_q) for even exponents: the moments of the sphere S^{n-1}."""
    _check_n(n)
    a = _check_even(a)
    return Fraction(DF(n - 1) * prod(DF(x) for x in a), DF(sum(a) + n - 1))


def integral_n2(a: int, b: int, c: int, d: int) -> Fraction:
    """I of the 2x2 matrix [[a, b], [c, d]] over O_2."""
    a, b, c, d = _nonneg((a, b, c, d))
    parities = {a % 2, b % 2, c % 2, d % 2}
    if len(parities) > 1:
        return Fraction(0)
    sign = 1 if parities == {0} else -1
    return Fraction(sign * DF(a + d) * DF(b + c), DF(a + b + c + d + 1))


def phi_conversion_factor(a: Sequence[int], b: Sequence[int], n: int, *, strict: bool = True) -> Fraction:
    """phi / I for literal exponent rows ``a`` and ``b``.

    With ``strict=False`` odd entries are accepted; this is only meaningful
    for the 0/1/2 elementary matrices, where every DF(entry) is 1.
    """
    _check_n(n)
    a = _check_even(a) if strict else _nonneg(a)
    b = _check_even(b) if strict else _nonneg(b)
    num = DF(sum(a) + n - 2) * DF(sum(b) + n - 2)
    den = DF(n - 2) ** 2 * prod(DF(x) for x in a) * prod(DF(x) for x in b)
    return Fraction(num, den)


def phi_from_integral(spec: TwoRowSpec, value, n: int, *, strict: bool = True) -> PhiValue:
    factor = phi_conversion_factor(spec.a, spec.b, n, strict=strict)
    return PhiValue(Fraction(value) * factor, n, spec)


def integral_from_phi(phi: PhiValue, *, strict: bool = True) -> Fraction:
    return phi.value / phi_conversion_factor(phi.spec.a, phi.spec.b, phi.n, strict=strict)


def _lead(n):
    return Fraction(DF(n - 1), DF(n - 2))


def phi_one_row(a: Sequence[int], n: int) -> Fraction:
    """phi(a; 0) = I_n(a) / I_{n-1}(a)."""
    _check_n(n)
    s = sum(_check_even(a))
    return _lead(n) * Fraction(DF(s + n - 2), DF(s + n - 1))


def expansion_coefficient(r: int, a: int, b: int) -> Fraction:
    """Weight of the coupling count ``r`` in the elementary expansion."""
    if not 0 <= r <= min(a, b):
        raise ContractError(f"need 0 <= r <= min(a, b); got r={r}, a={a}, b={b}")
    return Fraction(4 ** r * factorial(a) * factorial(b),
                    factorial(2 * r) * factorial(a - r) * factorial(b - r))


def elementary_phi(r: int, a: int, b: int, n: int) -> Fraction:
    """phi of the elementary matrix with 2r columns (1;1), a columns (2;0)
    and b columns (0;2)."""
    _check_n(n)
    r, a, b = _nonneg((r, a, b))
    sign = -1 if r % 2 else 1
    return sign * _lead(n) * Fraction(DF(2 * r) * DF(2 * a + 2 * b + 2 * r + n - 2),
                                      DF(2 * a + 2 * b + 4 * r + n - 1))


def phi_two_row(a: Sequence[int], b: Sequence[int], n: int) -> Fraction:
    """phi(2a; 2b) as a finite sum of products of factorials.

    ``a`` and ``b`` are half exponents. The sum runs over coupling counts
    ``0 <= r_i <= min(a_i, b_i)``; terms depend on the r_i only through the
    coefficient product and R = sum r_i.
    """
    _check_n(n)
    a, b = _nonneg(a), _nonneg(b)
    if len(a) != len(b):
        raise ContractError(f"rows of different lengths: {len(a)} and {len(b)}")
    s = sum(a) + sum(b)
    # collect the coefficient mass per R, then weight each R once
    by_r: dict = {0: Fraction(1)}
    for ai, bi in zip(a, b):
        m = min(ai, bi)
        if m == 0:
            continue
        step = [expansion_coefficient(r, ai, bi) for r in range(m + 1)]
        nxt: dict = {}
        for big_r, w in by_r.items():
            for r, c in enumerate(step):
                nxt[big_r + r] = nxt.get(big_r + r, 0) + w * c
        by_r = nxt
    den = DF(2 * s + n - 1)
    total = Fraction(0)
    for big_r, w in by_r.items():
        term = w * DF(2 * big_r) * DF(2 * s - 2 * big_r + n - 2)
        total += -term if big_r % 2 else term
    return _lead(n) * total / den


def phi_two_row_direct(a: Sequence[int], b: Sequence[int], n: int) -> Fraction:
    """Same value as :func:`phi_two_row`, summing over every tuple (r_1..r_q).

    Exponential in q; kept as a literal transcription for cross-checks.
    """
    _check_n(n)
    a, b = _nonneg(a), _nonneg(b)
    if len(a) != len(b):
        raise ContractError(f"rows of different lengths: {len(a)} and {len(b)}")
    s = sum(a) + sum(b)
    total = Fraction(0)
    for rs in product(*(range(min(x, y) + 1) for x, y in zip(a, b))):
        big_r = sum(rs)
        coeff = prod((expansion_coefficient(r, x, y) for r, x, y in zip(rs, a, b)), start=Fraction(1))
        total += (-1) ** big_r * coeff * Fraction(DF(2 * big_r) * DF(2 * s - 2 * big_r + n - 2),
                                                  DF(2 * s + n - 1))
    return _lead(n) * total


def integral_two_row(a: Sequence[int], b: Sequence[int], n: int) -> Fraction:
    """I(2a; 2b) from the two-row formula (half-exponent inputs)."""
    spec = TwoRowSpec(tuple(2 * x for x in a), tuple(2 * x for x in b))
    return integral_from_phi(PhiValue(phi_two_row(a, b, n), n, spec))


def phi_triangular(a: int, b: int, c: int, n: int) -> Fraction:
    """phi of [[a, c], [b, 0]] for even a, b, c."""
    _check_n(n)
    a, b, c = _check_even((a, b, c))
    return _lead(n) * Fraction(DF(a + c + n - 2) * DF(b + c + n - 2),
                               DF(c + n - 2) * DF(a + b + c + n - 1))


def phi_compressed(a: int, b: int, cs: Sequence[int], n: int) -> Fraction:
    """phi of [[a, c_1 .. c_q], [b, 0 .. 0]]; depends on the c_i only via their sum."""
    cs = _check_even(cs)
    return phi_triangular(a, b, sum(cs), n)


def joint_moments(alpha: int, beta: int, n: int) -> Fraction:
    """E[x**alpha * y**beta] for two entries on different rows and columns."""
    _check_n(n)
    alpha, beta = _nonneg((alpha, beta))
    if alpha % 2 or beta % 2:
        return Fraction(0)
    num = factorial(n - 2) * DF(alpha) * DF(beta) * DF(alpha + beta + n - 2)
    den = DF(alpha + n - 2) * DF(beta + n - 2) * DF(alpha + beta + n - 1)
    return Fraction(num, den)
