"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]`` / ``[FAIL]`` line; the lines are also
collected into a section of the pytest terminal summary.
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import numpy as np
import conftest
from ortho_moments import closed_forms as cf
from ortho_moments import pairings, weingarten
from ortho_moments.monte_carlo import haar_batch, mc_integral
from ortho_moments.pairings import Pairing, enumerate_pairings
from ortho_moments.exact_arith import paper_double_factorial as paper_df
from ortho_moments.two_by_two import conjecture_odd_sum, f_value, verify_conjecture_even, verify_conjecture_odd
from ortho_moments.verify import Budget, PropertyId, verify
from ortho_moments.weingarten import elementary_matrix_of, integral_oracle, weingarten_entry, weingarten_matrix


@contextmanager
def criterion(number, title, budget_s=None):
    """Time the block, print one verdict line and fail the test on a miss."""
    state = {"detail": ""}
    start = time.perf_counter()
    ok, problem = True, None
    try:
        yield state
    except AssertionError as exc:
        ok, problem = False, exc
    elapsed = time.perf_counter() - start
    if ok and budget_s is not None and elapsed > budget_s:
        ok, problem = False, AssertionError(f"took {elapsed:.2f}s, budget {budget_s}s")
    detail = state["detail"] or (str(problem) if problem else "")
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f}s{'; ' + detail if detail else ''})"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    if problem is not None:
        raise problem


def _clear_caches():
    for fn in (pairings._pairing_table, weingarten._join_matrix, weingarten._coset_reduction,
               weingarten._label_reduction, weingarten.weingarten_function, weingarten._fitting_counts):
        fn.cache_clear()


def test_criterion_01_weingarten_k2_table():
    _clear_caches()
    with criterion(1, "W for k=2 at n=3 has diagonal 2/15, off-diagonal -1/30", budget_s=1.0):
        _, rows = weingarten_matrix(2, 3)
        for i, j in product(range(3), repeat=2):
            assert rows[i][j] == (Fraction(2, 15) if i == j else Fraction(-1, 30))


def test_criterion_02_degree_four_values():
    _clear_caches()
    with criterion(2, "I([[4]]), I([[2,2]]), I([[2,0],[0,2]]) for n=3..10, oracle and closed forms", budget_s=5.0):
        for n in range(3, 11):
            expected = {
                ((4,),): Fraction(3, n * (n + 2)),
                ((2, 2),): Fraction(1, n * (n + 2)),
                ((2, 0), (0, 2)): Fraction(n + 1, n * (n - 1) * (n + 2)),
            }
            for a, value in expected.items():
                assert integral_oracle(a, n) == value, (a, n)
            assert cf.one_row_integral([4], n) == expected[((4,),)]
            assert cf.one_row_integral([2, 2], n) == expected[((2, 2),)]
            assert cf.integral_two_row([1, 0], [0, 1], n) == expected[((2, 0), (0, 2))]


def _two_row_even_matrices(max_half_degree):
    """All two-row matrices with even entries and no zero column, by half-degree."""
    out = []

    def grow(cols, weight):
        if cols:
            out.append(([2 * x for x, _ in cols], [2 * y for _, y in cols]))
        for w in range(1, max_half_degree - weight + 1):
            for x in range(w + 1):
                grow(cols + [(x, w - x)], weight + w)

    grow([], 0)
    return out


def test_criterion_03_two_row_formula_equals_oracle():
    with criterion(3, "two-row formula equals the oracle, total degree <= 10, n = k+1..k+4", budget_s=600) as st:
        cases = checks = 0
        for top, bottom in _two_row_even_matrices(5):
            kappa = (sum(top) + sum(bottom)) // 2
            cases += 1
            for n in range(kappa + 1, kappa + 5):
                half_top, half_bottom = [x // 2 for x in top], [x // 2 for x in bottom]
                assert cf.integral_two_row(half_top, half_bottom, n) == integral_oracle([top, bottom], n), \
                    (top, bottom, n)
                checks += 1
        st["detail"] = f"{cases} matrices, {checks} checks"


def test_criterion_04_joint_moments():
    with criterion(4, "joint moments equal the oracle for alpha, beta in {0,2,4}, n in {3,4,5}") as st:
        assert cf.joint_moments(2, 2, 3) == Fraction(2, 15)
        for alpha, beta, n in product((0, 2, 4), (0, 2, 4), (3, 4, 5)):
            # (4, 4) at n = 3 has half-degree 4 > n: the Gram matrix is singular there
            exact = integral_oracle([[alpha, 0], [0, beta]], n, singular="project")
            assert cf.joint_moments(alpha, beta, n) == exact, (alpha, beta, n)
        st["detail"] = "27 checks, anchor (2,2,3) -> 2/15"


def _run(prop, budget):
    report = verify(prop, budget)
    assert report.status == "PASS", report.summary()
    assert not report.errors, report.errors[:3]
    return report


def test_criterion_05_invariance_principles():
    grid = Budget(max_entry=2, max_cols=3)
    with criterion(5, "flipping, compression and transmutation on entries <= 2, q <= 3") as st:
        reports = [_run(p, grid) for p in (PropertyId.FLIPPING, PropertyId.COMPRESSION, PropertyId.TRANSMUTATION)]
        lhs = cf.phi_two_row([1, 1], [1, 0], 3)
        assert lhs == Fraction(32, 105) == Fraction(2, 3) * cf.phi_two_row([1], [1], 5)
        st["detail"] = ", ".join(f"{r.name} {r.case_count} cases/{len(r.checks)} checks" for r in reports)


def test_criterion_06_extensions_and_triangular():
    grid = Budget(max_entry=2, max_cols=3)
    with criterion(6, "basic and recursive extension, triangular formula") as st:
        reports = [_run(p, grid) for p in (PropertyId.BASIC_EXTENSION, PropertyId.RECURSIVE_EXTENSION,
                                           PropertyId.TRIANGULAR)]
        assert cf.phi_triangular(2, 2, 2, 3) == Fraction(32, 105)
        assert cf.phi_triangular(2, 2, 2, 4) == Fraction(25, 64)
        st["detail"] = ", ".join(f"{r.name} {len(r.checks)} checks" for r in reports)


def test_criterion_07_weingarten_equals_elementary_integral():
    with criterion(7, "W(pi, sigma) = I(elementary matrix), k <= 3, n in {4,5,6}") as st:
        checks = 0
        for k in (1, 2, 3):
            ps = enumerate_pairings(k)
            for p, s, n in product(ps, ps, (4, 5, 6)):
                assert weingarten_entry(k, n, p, s) == integral_oracle(elementary_matrix_of(p, s), n), (p, s, n)
                checks += 1
        target = [[1, 1, 0], [1, 1, 0], [0, 0, 2]]
        p, s = Pairing.parse("(1 2)(3 4)(5 6)"), Pairing.parse("(1 3)(2 4)(5 6)")
        assert elementary_matrix_of(p, s) == target
        for n in (4, 5, 6):
            assert weingarten_entry(3, n, p, s) == integral_oracle(target, n)
        st["detail"] = f"{checks} pairs x n"


def test_criterion_08_n2_closed_form():
    with criterion(8, "n=2 closed form equals the oracle at total degree 4") as st:
        report = _run(PropertyId.N2_VS_ORACLE, Budget(max_degree=2))
        assert cf.integral_n2(2, 0, 0, 2) == Fraction(3, 8)
        assert cf.integral_n2(1, 1, 1, 1) == Fraction(-1, 8)
        st["detail"] = f"{len(report.checks)} quads"


def test_criterion_09_even_conjecture():
    with criterion(9, "even conjectured sum equals f, entries <= 6, n = 4..8") as st:
        report = verify_conjecture_even(6, range(4, 9))
        st["detail"] = f"{len(report.checks)} checks, {len(report.failures)} failures"
        assert report.status == "PASS" and not report.errors, report.summary()


def test_criterion_10_odd_conjecture():
    with criterion(10, "odd conjectured sum equals f, a+b+c+d <= 10, n = 4..8") as st:
        assert f_value((1, 1, 1, 1), 4) == conjecture_odd_sum((1, 1, 1, 1), 4) == Fraction(-1, 648)
        report = verify_conjecture_odd(10, range(4, 9))
        st["detail"] = f"{len(report.checks)} checks, {len(report.failures)} failures"
        assert report.status == "PASS" and not report.errors, report.summary()


def test_criterion_11_asymptotics():
    with criterion(11, "n^k I(a) - prod DF(a_ij) shrinks like 1/n along n = 10, 20, 40, 80") as st:
        ratios = []
        for a in ([[4]], [[2, 2]], [[2, 0], [0, 2]]):
            kappa = sum(map(sum, a)) // 2
            lead = 1
            for row in a:
                for x in row:
                    lead *= paper_df(x)
            gaps = [n ** kappa * integral_oracle(a, n) - lead for n in (10, 20, 40, 80)]
            for g0, g1 in zip(gaps, gaps[1:]):
                ratio = abs(g0) / abs(g1)
                assert abs(g1) < abs(g0) and 1 <= ratio <= 4, (a, ratio)
                ratios.append(float(ratio))
        assert verify(PropertyId.ASYMPTOTIC).status == "PASS"
        st["detail"] = f"ratios in [{min(ratios):.3f}, {max(ratios):.3f}]"


def test_criterion_12_monte_carlo():
    with criterion(12, "Monte Carlo [[4]] at n=3, 10^6 samples, within 5 standard errors of 1/5", budget_s=60) as st:
        est = mc_integral([[4]], 3, 10**6, seed=20240601)
        z = (est.mean - 0.2) / est.standard_error
        qs = haar_batch(3, 10**5, np.random.default_rng(20240601))
        orth = float(np.abs(np.einsum("bji,bjk->bik", qs, qs) - np.eye(3)).max())
        st["detail"] = f"mean {est.mean:.5f}, z = {z:.2f}, max |Q^T Q - I| = {orth:.1e}"
        assert abs(z) <= 5
        assert orth <= 1e-12
