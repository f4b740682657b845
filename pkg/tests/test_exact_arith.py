from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ortho_moments.errors import ContractError, InconsistentSystemError, SingularMatrixError
from ortho_moments.exact_arith import (
    bareiss_solve,
    binomial,
    factorial,
    from_json,
    paper_double_factorial,
    parse_rational,
    render,
    solve_consistent,
    to_json,
)

rationals = st.fractions(max_denominator=10**30)


@pytest.mark.parametrize("m, expected", [(0, 1), (1, 1), (2, 1), (3, 2), (4, 3), (5, 8), (6, 15), (7, 48), (8, 105)])
def test_shifted_double_factorial_values(m, expected):
    assert paper_double_factorial(m) == expected


@given(st.integers(min_value=2, max_value=400))
def test_shifted_double_factorial_recurrence(m):
    assert paper_double_factorial(m) == (m - 1) * paper_double_factorial(m - 2)


def test_shifted_double_factorial_product_identity():
    for m in range(1, 60):
        assert paper_double_factorial(m) * paper_double_factorial(m + 1) == factorial(m)


def test_negative_arguments_rejected():
    with pytest.raises(ContractError):
        paper_double_factorial(-1)
    with pytest.raises(ContractError):
        factorial(-3)
    with pytest.raises(ContractError):
        binomial(-1, 0)


def test_binomial_edges():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1


@given(rationals)
def test_json_round_trip(x):
    obj = to_json(x)
    assert isinstance(obj["num"], str) and isinstance(obj["den"], str)
    assert from_json(obj) == x
    assert int(obj["den"]) > 0


@given(rationals)
def test_render_round_trip(x):
    assert parse_rational(render(x)) == x


def test_render_integers_without_denominator():
    assert render(Fraction(6, 3)) == "2"
    assert render(Fraction(-1, 30)) == "-1/30"


def test_huge_values_stay_exact():
    big = Fraction(paper_double_factorial(301), paper_double_factorial(300))
    assert from_json(to_json(big)) == big


square = st.integers(min_value=1, max_value=6).flatmap(
    lambda size: st.tuples(
        st.lists(st.lists(st.integers(-20, 20), min_size=size, max_size=size), min_size=size, max_size=size),
        st.lists(st.integers(-20, 20), min_size=size, max_size=size),
    )
)


def _apply(a, x):
    return [sum(Fraction(v) * xi for v, xi in zip(row, x)) for row in a]


@given(square)
def test_bareiss_solution_satisfies_system(system):
    a, b = system
    try:
        x = bareiss_solve(a, b)
    except SingularMatrixError:
        # a singular matrix must have zero determinant; check by rank over Q
        with pytest.raises((SingularMatrixError, InconsistentSystemError)):
            _strict_inverse_exists(a)
        return
    assert _apply(a, x) == [Fraction(v) for v in b]


def _strict_inverse_exists(a):
    zero = [0] * len(a)
    for i in range(len(a)):
        e = list(zero)
        e[i] = 1
        x = solve_consistent(a, e)
        if _apply(a, x) != e:
            raise SingularMatrixError(i)


def test_bareiss_needs_row_swap():
    assert bareiss_solve([[0, 1], [1, 0]], [3, 4]) == [4, 3]


def test_bareiss_singular():
    with pytest.raises(SingularMatrixError):
        bareiss_solve([[1, 2], [2, 4]], [1, 2])


def test_solve_consistent_on_singular_system():
    a = [[1, 2], [2, 4]]
    x = solve_consistent(a, [1, 2])
    assert _apply(a, x) == [1, 2]
    with pytest.raises(InconsistentSystemError):
        solve_consistent(a, [1, 3])


def test_shape_checks():
    with pytest.raises(ContractError):
        bareiss_solve([[1, 2]], [1])
