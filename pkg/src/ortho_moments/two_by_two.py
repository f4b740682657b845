"""The 2 x 2 case: the symmetric function f(a, b, c, d) and the conjectured
single sums for it.

    f(a, b, c, d) = I([[a, c], [b, d]]) / (DF(a+d+n-2) * DF(b+c+n-2))

The two conjectured sums are exposed as evaluators plus report builders that
compare them against f; they are never used as a source of truth.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import prod
from typing import Iterable, NamedTuple

from .closed_forms import integral_two_row
from .errors import ContractError, DomainError, OrthoMomentsError, ParityError
from .exact_arith import binomial, factorial
from .exact_arith import paper_double_factorial as DF
from .report import VerificationReport
from .weingarten import integral_oracle


class Quad(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    @property
    def parity(self) -> str:
        bits = {x % 2 for x in self}
        if bits == {0}:
            return "even"
        if bits == {1}:
            return "odd"
        return "mixed"


def as_quad(q) -> Quad:
    q = Quad(*(int(x) for x in q))
    if any(x < 0 for x in q):
        raise ContractError(f"quad entries must be nonnegative: {tuple(q)}")
    return q


def f_value(q, n: int, *, singular: str = "project") -> Fraction:
    """f at ``n``; even quads use the two-row formula, odd quads the oracle.

    For odd quads with half-degree above n the Gram matrix is singular and
    the oracle is run in ``singular`` mode (see :func:`integral_oracle`).
    """
    q = as_quad(q)
    if n < 2:
        raise DomainError(f"n must be at least 2, got {n}")
    a, b, c, d = q
    if q.parity == "mixed":
        return Fraction(0)
    if q.parity == "even":
        value = integral_two_row([a // 2, c // 2], [b // 2, d // 2], n)
    else:
        value = integral_oracle([[a, c], [b, d]], n, singular=singular)
    return value / (DF(a + d + n - 2) * DF(b + c + n - 2))


def quantity_S(k: int, q) -> int:
    return prod(x + k for x in as_quad(q))


def quantity_F(k: int, q) -> int:
    return prod(DF(x + k) for x in as_quad(q))


def quantity_P(k: int, q) -> int:
    return DF(sum(as_quad(q)) + k)


def _triangular_prefactor(q: Quad, n: int) -> Fraction:
    return Fraction(factorial(n - 2) * DF(n - 2) * quantity_F(0, q),
                    quantity_P(n - 1, q) * quantity_F(n - 2, q))


def f_triangular(a: int, b: int, c: int, n: int) -> Fraction:
    """f(a, b, c, 0) in closed form."""
    if n < 3:
        raise DomainError(f"n must be at least 3, got {n}")
    if a % 2 or b % 2 or c % 2:
        raise ParityError(f"entries must be even: {(a, b, c)}")
    return _triangular_prefactor(as_quad((a, b, c, 0)), n)


def conjecture_even_sum(q, n: int) -> Fraction:
    """Conjectured single sum for f on an all-even quad (n >= 4)."""
    q = as_quad(q)
    if q.parity != "even":
        raise ParityError(f"expected an all-even quad, got {tuple(q)}")
    if n <= 3:
        raise DomainError(f"the even sum divides by n-3; need n >= 4, got {n}")
    total = Fraction(0)
    for r in range(min(q) // 2 + 1):
        top = prod(quantity_S(-2 * t, q) for t in range(r))
        bottom = prod(quantity_S(n - 1 + 2 * t, q) for t in range(r))
        total += Fraction(n + 4 * r - 3, n - 3) * binomial(n + 2 * r - 4, 2 * r) * Fraction(top, bottom)
    return _triangular_prefactor(q, n) * total


def conjecture_odd_sum(q, n: int) -> Fraction:
    """Conjectured single sum for f on an all-odd quad (n >= 4)."""
    q = as_quad(q)
    if q.parity != "odd":
        raise ParityError(f"expected an all-odd quad, got {tuple(q)}")
    if n <= 3:
        raise DomainError(f"the odd sum divides by n-3; need n >= 4, got {n}")
    pre = -Fraction(factorial(n - 2) * DF(n) * quantity_F(1, q),
                    quantity_P(n - 1, q) * quantity_F(n - 1, q))
    total = Fraction(0)
    for r in range((min(q) - 1) // 2 + 1):
        top = prod(quantity_S(-1 - 2 * t, q) for t in range(r))
        bottom = prod(quantity_S(n + 2 * t, q) for t in range(r))
        total += (Fraction(n + 4 * r - 1, (n - 1) * (n - 3)) * binomial(n + 2 * r - 3, 2 * r + 1)
                  * Fraction(top, bottom))
    return pre * total


def even_quads(max_entry: int) -> list[Quad]:
    return [Quad(*q) for q in product(range(0, max_entry + 1, 2), repeat=4)]


def odd_quads(max_sum: int) -> list[Quad]:
    odd = range(1, max_sum + 1, 2)
    return [Quad(*q) for q in product(odd, repeat=4) if sum(q) <= max_sum]


def _sweep(name, quads, n_values, conj) -> VerificationReport:
    report = VerificationReport(name)
    for q in quads:
        case = f"f{tuple(q)}"
        for n in n_values:
            try:
                report.record(case, n, conj(q, n), f_value(q, n))
            except OrthoMomentsError as exc:
                report.record_error(case, n, exc)
    return report.finish()


def verify_conjecture_even(max_entry: int = 6, n_values: Iterable[int] = range(4, 9)) -> VerificationReport:
    """Compare the even conjectured sum with f (two-row formula) on a grid."""
    return _sweep("conjecture-even", even_quads(max_entry), list(n_values), conjecture_even_sum)


def verify_conjecture_odd(max_sum: int = 10, n_values: Iterable[int] = range(4, 9)) -> VerificationReport:
    """Compare the odd conjectured sum with f (Weingarten oracle) on a grid."""
    return _sweep("conjecture-odd", odd_quads(max_sum), list(n_values), conjecture_odd_sum)
