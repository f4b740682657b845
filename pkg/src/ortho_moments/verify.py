"""Decisive finite checks of identities in n.

Each identity, once its explicit double-factorial denominators are cleared,
compares rational functions of n whose numerator and denominator degrees are
at most ``2k + 2`` at half-degree k. Exact agreement at ``2k + 4`` integer
points past every pole therefore proves it; :func:`verify` also evaluates
two further points as a guard on that bound.

Every property compares two different computations: a closed form against
the Weingarten oracle where the oracle is affordable, or two distinct closed
forms above the oracle's degree cap.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Iterator

from . import closed_forms as cf
from . import two_by_two as tbt
from .errors import OrthoMomentsError
from .exact_arith import paper_double_factorial as DF
from .pairings import enumerate_pairings
from .report import VerificationReport
from .weingarten import elementary_matrix_of, integral_oracle, weingarten_entry


class PropertyId(enum.Enum):
    FLIPPING = "flipping"
    COMPRESSION = "compression"
    BASIC_EXTENSION = "basic-extension"
    RECURSIVE_EXTENSION = "recursive-extension"
    TRIANGULAR = "triangular"
    TRANSMUTATION = "transmutation"
    ELEMENTARY_FLIP = "elementary-flip"
    TWO_ROW_VS_ORACLE = "two-row-vs-oracle"
    WEINGARTEN_ELEMENTARY = "weingarten-elementary"
    N2_VS_ORACLE = "n2-vs-oracle"
    ASYMPTOTIC = "asymptotic"
    F_SYMMETRY = "f-symmetry"
    CONJECTURE_EVEN = "conjecture-even"
    CONJECTURE_ODD = "conjecture-odd"


ORACLE_BACKED = {
    PropertyId.TWO_ROW_VS_ORACLE,
    PropertyId.WEINGARTEN_ELEMENTARY,
    PropertyId.N2_VS_ORACLE,
    PropertyId.ELEMENTARY_FLIP,
    PropertyId.ASYMPTOTIC,
}


@dataclass
class Budget:
    """Size of a sweep.

    ``max_entry`` bounds literal exponents in exhaustive grids (default 2;
    4 for f symmetry, 6 for the even conjecture), ``max_sum`` the entry sum of
    odd quads (default 10), ``max_cols`` the number of columns, ``max_degree``
    the half-degree of any case (default 5 for oracle-backed properties,
    8 otherwise). ``trials`` extra random cases are drawn from
    ``random.Random(seed)`` (Mersenne Twister, reproducible across
    platforms). ``n_values`` replaces the default sample points. The oracle
    is consulted for cases of half-degree <= ``oracle_cap``.
    """

    max_entry: int | None = None
    max_sum: int = 10
    max_cols: int = 3
    max_degree: int | None = None
    trials: int = 0
    oracle_cap: int = 5
    extra_points: int = 2
    n_values: tuple | None = None


def n_samples_for(k: int) -> list[int]:
    """Sample points k+1, ..., k+D+2 with D = 2k + 2."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    d = 2 * k + 2
    return list(range(k + 1, k + d + 3))


@dataclass
class _Case:
    label: str
    kappa: int
    evaluate: Callable[[int], tuple]


def _half(v):
    return [x // 2 for x in v]


def _phi_closed(top, bottom, n):
    return cf.phi_two_row(_half(top), _half(bottom), n)


def _phi_reference(top, bottom, n, cap):
    """phi from the oracle when affordable, else from the two-row formula."""
    kappa = (sum(top) + sum(bottom)) // 2
    if kappa > cap:
        return _phi_closed(top, bottom, n)
    spec = cf.TwoRowSpec(tuple(top), tuple(bottom))
    return cf.phi_from_integral(spec, integral_oracle(spec.matrix, n), n).value


def _even_vectors(length, max_entry):
    return [list(v) for v in product(range(0, max_entry + 1, 2), repeat=length)]


def _kappa(*vectors):
    return sum(sum(v) for v in vectors) // 2


def _random_vector(rng, length, max_entry):
    return [2 * rng.randint(0, max_entry // 2) for _ in range(length)]


def _fmt(*parts):
    return ";".join(",".join(str(x) for x in p) for p in parts)


# -- case generators ---------------------------------------------------------


def _flipping_cases(b: Budget, rng) -> Iterator[_Case]:
    def make(left_a, left_b, c, d):
        top, bottom = left_a + c, left_b + d
        ftop, fbottom = left_a + d, left_b + c
        kappa = _kappa(top, bottom)

        def ev(n):
            return _phi_closed(top, bottom, n), _phi_reference(ftop, fbottom, n, b.oracle_cap)

        return _Case(f"flip[{_fmt(left_a, c)}/{_fmt(left_b, d)}]", kappa, ev)

    for total in range(1, b.max_cols + 1):
        for width in range(1, total + 1):
            left = total - width
            for la, lb, c, d in product(_even_vectors(left, b.max_entry), _even_vectors(left, b.max_entry),
                                        _even_vectors(width, b.max_entry), _even_vectors(width, b.max_entry)):
                if c != d and 0 < _kappa(la, lb, c, d) <= b.max_degree:
                    yield make(la, lb, c, d)
    for _ in range(b.trials):
        left, width = rng.randint(0, b.max_cols), rng.randint(1, b.max_cols)
        vs = [_random_vector(rng, m, 6) for m in (left, left, width, width)]
        if 0 < _kappa(*vs) <= b.max_degree:
            yield make(*vs)


def _compression_cases(b: Budget, rng) -> Iterator[_Case]:
    def make(a, bb, c):
        kappa = _kappa(a, bb, c)

        def ev(n):
            lhs = _phi_closed(a + c, bb + [0] * len(c), n)
            return lhs, _phi_reference(a + [sum(c)], bb + [0], n, b.oracle_cap)

        return _Case(f"compress[{_fmt(a, c)}/{_fmt(bb)}]", kappa, ev)

    for p in range(0, b.max_cols - 1):
        for q in range(2, b.max_cols - p + 1):
            for a, bb, c in product(_even_vectors(p, b.max_entry), _even_vectors(p, b.max_entry),
                                    _even_vectors(q, b.max_entry)):
                if 0 < _kappa(a, bb, c) <= b.max_degree:
                    yield make(a, bb, c)
    for _ in range(b.trials):
        p, q = rng.randint(0, b.max_cols), rng.randint(2, b.max_cols + 1)
        a, bb, c = _random_vector(rng, p, 6), _random_vector(rng, p, 6), _random_vector(rng, q, 6)
        if 0 < _kappa(a, bb, c) <= b.max_degree:
            yield make(a, bb, c)


def _transmutation_cases(b: Budget, rng) -> Iterator[_Case]:
    def make(a, bb, c):
        big_c = sum(c)
        kappa = _kappa(a, bb, c)

        def ev(n):
            lhs = _phi_closed(a + c, bb + [0] * len(c), n)
            shift = Fraction(DF(n - 1), DF(n - 2)) * Fraction(DF(big_c + n - 2), DF(big_c + n - 1))
            return lhs, shift * _phi_reference(a, bb, n + big_c, b.oracle_cap)

        return _Case(f"transmute[{_fmt(a, c)}/{_fmt(bb)}]", kappa, ev)

    for p in range(0, b.max_cols):
        for q in range(1, b.max_cols - p + 1):
            for a, bb, c in product(_even_vectors(p, b.max_entry), _even_vectors(p, b.max_entry),
                                    _even_vectors(q, b.max_entry)):
                if sum(c) and _kappa(a, bb, c) <= b.max_degree:
                    yield make(a, bb, c)
    for _ in range(b.trials):
        p, q = rng.randint(0, b.max_cols), rng.randint(1, b.max_cols)
        a, bb, c = _random_vector(rng, p, 6), _random_vector(rng, p, 6), _random_vector(rng, q, 6)
        if sum(c) and _kappa(a, bb, c) <= b.max_degree:
            yield make(a, bb, c)


def _bumped(a, s):
    out = list(a)
    out[s] += 2
    return out


def _basic_extension_cases(b: Budget, rng) -> Iterator[_Case]:
    def make(a, bb):
        q = len(a)
        kappa = _kappa(a, bb) + 1

        def ev(n):
            # cleared of the 1/(n - q) so that n = q is a legal sample point
            lhs = (n - q) * _phi_closed(a + [2], bb + [0], n)
            rhs = (sum(a) + n - 1) * _phi_reference(a, bb, n, b.oracle_cap)
            for s in range(q):
                rhs -= (a[s] + 1) * _phi_reference(_bumped(a, s), bb, n, b.oracle_cap)
            return lhs, rhs

        return _Case(f"extend[{_fmt(a)}/{_fmt(bb)}]", kappa, ev)

    for q in range(0, b.max_cols):
        for a, bb in product(_even_vectors(q, b.max_entry), repeat=2):
            if _kappa(a, bb) + 1 <= b.max_degree:
                yield make(a, bb)
    for _ in range(b.trials):
        q = rng.randint(0, b.max_cols)
        a, bb = _random_vector(rng, q, 6), _random_vector(rng, q, 6)
        if _kappa(a, bb) + 1 <= b.max_degree:
            yield make(a, bb)


def _recursive_extension_cases(b: Budget, rng) -> Iterator[_Case]:
    def make(a, bb, c):
        q = len(a)
        kappa = _kappa(a, bb) + c // 2 + 1

        def ev(n):
            lhs = (n + c - q) * _phi_closed(a + [c + 2], bb + [0], n)
            rhs = (sum(a) + c + n - 1) * _phi_reference(a + [c], bb + [0], n, b.oracle_cap)
            for s in range(q):
                rhs -= (a[s] + 1) * _phi_reference(_bumped(a, s) + [c], bb + [0], n, b.oracle_cap)
            return lhs, rhs

        return _Case(f"recurse[{_fmt(a, [c])}/{_fmt(bb)}]", kappa, ev)

    for q in range(0, b.max_cols):
        for a, bb in product(_even_vectors(q, b.max_entry), repeat=2):
            for c in range(0, b.max_entry + 1, 2):
                if _kappa(a, bb) + c // 2 + 1 <= b.max_degree:
                    yield make(a, bb, c)
    for _ in range(b.trials):
        q = rng.randint(0, b.max_cols)
        a, bb, c = _random_vector(rng, q, 6), _random_vector(rng, q, 6), 2 * rng.randint(0, 3)
        if _kappa(a, bb) + c // 2 + 1 <= b.max_degree:
            yield make(a, bb, c)


def _triangular_cases(b: Budget, rng) -> Iterator[_Case]:
    def make_tri(a, bb, c):
        def ev(n):
            return cf.phi_triangular(a, bb, c, n), _phi_reference([a, c], [bb, 0], n, b.oracle_cap)

        return _Case(f"triangular[{a},{c}/{bb},0]", (a + bb + c) // 2, ev)

    def make_cor(a, bb, cs):
        def ev(n):
            lhs = cf.phi_compressed(a, bb, cs, n)
            return lhs, _phi_reference([a] + cs, [bb] + [0] * len(cs), n, b.oracle_cap)

        return _Case(f"compressed[{_fmt([a] + cs)}/{bb}]", (a + bb + sum(cs)) // 2, ev)

    evens = range(0, b.max_entry + 1, 2)
    for a, bb, c in product(evens, repeat=3):
        if 0 < (a + bb + c) // 2 <= b.max_degree:
            yield make_tri(a, bb, c)
    for a, bb in product(evens, repeat=2):
        for q in range(2, b.max_cols + 1):
            for cs in _even_vectors(q, b.max_entry):
                if 0 < (a + bb + sum(cs)) // 2 <= b.max_degree:
                    yield make_cor(a, bb, cs)
    for _ in range(b.trials):
        a, bb, c = (2 * rng.randint(0, 4) for _ in range(3))
        if 0 < (a + bb + c) // 2 <= b.max_degree:
            yield make_tri(a, bb, c)


def _elementary_flip_cases(b: Budget, rng) -> Iterator[_Case]:
    def make(r, a, bb):
        top = [1] * (2 * r) + [2] * a + [0] * bb
        bottom = [1] * (2 * r) + [0] * a + [2] * bb
        spec = cf.TwoRowSpec(tuple(top), tuple(bottom))

        def ev(n):
            value = integral_oracle(spec.matrix, n)
            lhs = cf.phi_from_integral(spec, value, n, strict=False).value
            return lhs, cf.elementary_phi(r, a + bb, 0, n)

        return _Case(f"elementary[r={r},a={a},b={bb}]", 2 * r + a + bb, ev)

    for r in range(0, b.max_degree // 2 + 1):
        for a in range(0, b.max_degree + 1):
            for bb in range(0, b.max_degree + 1):
                if 0 < 2 * r + a + bb <= min(b.max_degree, b.oracle_cap):
                    yield make(r, a, bb)


def _two_row_matrices(max_degree):
    """Every two-row all-even matrix without zero columns, half-degree <= max."""
    columns = [(x, w - x) for w in range(1, max_degree + 1) for x in range(w + 1)]

    def extend(prefix, weight):
        if prefix:
            yield prefix
        for col in columns:
            if weight + sum(col) <= max_degree:
                yield from extend(prefix + [col], weight + sum(col))

    for cols in extend([], 0):
        yield [2 * x for x, _ in cols], [2 * y for _, y in cols]


def _two_row_vs_oracle_cases(b: Budget, rng) -> Iterator[_Case]:
    for top, bottom in _two_row_matrices(min(b.max_degree, b.oracle_cap)):
        def ev(n, top=top, bottom=bottom):
            return cf.integral_two_row(_half(top), _half(bottom), n), integral_oracle([top, bottom], n)

        yield _Case(f"I[{_fmt(top, bottom)}]", _kappa(top, bottom), ev)


def _weingarten_cases(b: Budget, rng) -> Iterator[_Case]:
    for k in range(1, min(b.max_degree, 3) + 1):
        ps = enumerate_pairings(k)
        for p, s in product(ps, repeat=2):
            def ev(n, k=k, p=p, s=s):
                return weingarten_entry(k, n, p, s), integral_oracle(elementary_matrix_of(p, s), n)

            yield _Case(f"W{k}[{p}|{s}]", k, ev)


def _n2_cases(b: Budget, rng) -> Iterator[_Case]:
    for total in range(2, 2 * b.max_degree + 1, 2):
        for q in product(range(total + 1), repeat=4):
            if sum(q) != total:
                continue

            def ev(n, q=q):
                a, bb, c, d = q
                return cf.integral_n2(*q), integral_oracle([[a, bb], [c, d]], n, singular="project")

            yield _Case(f"n2[{_fmt(q)}]", total // 2, ev)


ASYMPTOTIC_DEFAULT = (
    ((4,),),
    ((2, 2),),
    ((2, 0), (0, 2)),
    ((2, 2), (2, 0)),
    ((1, 1), (1, 1)),
)


def _f_reference(q, n, cap):
    a, bb, c, d = q
    if sum(q) // 2 > cap:
        return tbt.f_value(q, n)
    value = integral_oracle([[a, c], [bb, d]], n, singular="project")
    return value / (DF(a + d + n - 2) * DF(bb + c + n - 2))


# -- sweep drivers -------------------------------------------------------------


_GENERATORS = {
    PropertyId.FLIPPING: _flipping_cases,
    PropertyId.COMPRESSION: _compression_cases,
    PropertyId.TRANSMUTATION: _transmutation_cases,
    PropertyId.BASIC_EXTENSION: _basic_extension_cases,
    PropertyId.RECURSIVE_EXTENSION: _recursive_extension_cases,
    PropertyId.TRIANGULAR: _triangular_cases,
    PropertyId.ELEMENTARY_FLIP: _elementary_flip_cases,
    PropertyId.TWO_ROW_VS_ORACLE: _two_row_vs_oracle_cases,
    PropertyId.WEINGARTEN_ELEMENTARY: _weingarten_cases,
    PropertyId.N2_VS_ORACLE: _n2_cases,
}


def _run_cases(report, cases, sample_points):
    for case in cases:
        for n in sample_points(case):
            try:
                lhs, rhs = case.evaluate(n)
            except OrthoMomentsError as exc:
                report.record_error(case.label, n, exc)
                continue
            report.record(case.label, n, lhs, rhs)


def _pit_points(budget):
    def points(case):
        if budget.n_values is not None:
            return list(budget.n_values)
        base = n_samples_for(max(case.kappa, 1))
        return base + list(range(base[-1] + 1, base[-1] + 1 + budget.extra_points))

    return points


def _asymptotic(budget: Budget) -> VerificationReport:
    report = VerificationReport(PropertyId.ASYMPTOTIC.value)
    ns = list(budget.n_values or (10, 20, 40, 80))
    for a in ASYMPTOTIC_DEFAULT:
        label = f"asym[{_fmt(*a)}]"
        kappa = sum(map(sum, a)) // 2
        even = all(x % 2 == 0 for row in a for x in row)
        lead = 1
        if even:
            for row in a:
                for x in row:
                    lead *= DF(x)
        try:
            gaps = [n ** kappa * integral_oracle(a, n) - (lead if even else 0) for n in ns]
        except OrthoMomentsError as exc:
            report.record_error(label, None, exc)
            continue
        for (n0, g0), (n1, g1) in zip(zip(ns, gaps), zip(ns[1:], gaps[1:])):
            if g0 == 0 and g1 == 0:
                ok = True
            elif g1 == 0:
                ok = True
            else:
                # n doubles between samples: |gap| must roughly halve
                ratio = abs(g0) / abs(g1)
                ok = abs(g1) < abs(g0) and Fraction(1, 2) * (n1 / n0) <= ratio <= 2 * (n1 / n0)
            report.record(label, n1, g0, g1, ok=ok)
    return report.finish()


def _f_symmetry(budget: Budget) -> VerificationReport:
    report = VerificationReport(PropertyId.F_SYMMETRY.value)
    even_n = list(budget.n_values or (3, 4, 5))
    odd_n = list(budget.n_values or (4, 5))
    groups = [(tbt.even_quads(budget.max_entry or 4), even_n),
              (tbt.odd_quads(budget.max_sum), odd_n)]
    for quads, ns in groups:
        for q in quads:
            others = sorted(set(permutations(q)) - {tuple(q)})
            for n in ns:
                try:
                    base = tbt.f_value(q, n)
                except OrthoMomentsError as exc:
                    report.record_error(f"f{tuple(q)}", n, exc)
                    continue
                for perm in others:
                    label = f"f{tuple(q)}~f{perm}"
                    try:
                        report.record(label, n, base, _f_reference(perm, n, budget.oracle_cap))
                    except OrthoMomentsError as exc:
                        report.record_error(label, n, exc)
    return report.finish()


def verify(prop: PropertyId | str, budget: Budget | None = None, seed: int = 0) -> VerificationReport:
    """Sweep one property and return its report.

    Deterministic in (prop, budget, seed). Per-case errors (gram-singular,
    resource limits) are recorded in the report and do not stop the sweep.
    """
    prop = PropertyId(prop)
    budget = Budget(**vars(budget)) if budget is not None else Budget()
    if budget.max_degree is None:
        budget.max_degree = 5 if prop in ORACLE_BACKED else 8

    if prop is PropertyId.ASYMPTOTIC:
        return _asymptotic(budget)
    if prop is PropertyId.F_SYMMETRY:
        return _f_symmetry(budget)
    if prop is PropertyId.CONJECTURE_EVEN:
        report = tbt.verify_conjecture_even(budget.max_entry or 6, budget.n_values or range(4, 9))
        report.name = prop.value
        return report
    if prop is PropertyId.CONJECTURE_ODD:
        report = tbt.verify_conjecture_odd(budget.max_sum, budget.n_values or range(4, 9))
        report.name = prop.value
        return report

    if budget.max_entry is None:
        budget.max_entry = 2
    rng = random.Random(seed)
    report = VerificationReport(prop.value)
    cases = _GENERATORS[prop](budget, rng)
    if prop is PropertyId.N2_VS_ORACLE:
        _run_cases(report, cases, lambda case: list(budget.n_values or (2,)))
    else:
        _run_cases(report, cases, _pit_points(budget))
    return report.finish()
