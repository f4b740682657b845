import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ortho_moments.cli import ParseError, main, parse_matrix, parse_n_range, render_matrix
from ortho_moments.exact_arith import from_json

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_COMMANDS = {
    "integral_closed": ["integral", "--matrix", "4", "--n", "3", "--method", "closed", "--json"],
    "integral_auto_odd": ["integral", "--matrix", "1,1;1,1", "--n", "4", "--json"],
    "integral_vanishing": ["integral", "--matrix", "1", "--n", "5", "--json"],
    "oracle": ["oracle", "--matrix", "2,0;0,2", "--n", "3", "--json"],
    "phi": ["phi", "--a", "2", "--b", "2", "--n", "3", "--json"],
    "moments": ["moments", "--alpha", "2", "--beta", "2", "--n", "3", "--json"],
    "weingarten_matrix": ["weingarten", "--k", "2", "--n", "3", "--json"],
    "weingarten_entry": ["weingarten", "--k", "2", "--n", "3", "--entry", "(1 2)(3 4)", "(1 3)(2 4)", "--json"],
    "mc": ["mc", "--matrix", "4", "--n", "3", "--samples", "5000", "--seed", "42", "--json"],
    "verify": ["verify", "triangular", "--max-degree", "2", "--json"],
    "conjecture": ["conjecture", "odd", "--max-sum", "6", "--n", "4:5"],
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN_COMMANDS))
def test_json_golden(name, capsys):
    code, out, _ = run(GOLDEN_COMMANDS[name], capsys)
    assert code == 0
    got = json.loads(out)
    if isinstance(got, dict):
        got.pop("elapsed_s", None)
    path = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        path.write_text(json.dumps(got, indent=2, sort_keys=True) + "\n")
    assert got == json.loads(path.read_text())


def test_value_schema(capsys):
    _, out, _ = run(GOLDEN_COMMANDS["integral_closed"], capsys)
    obj = json.loads(out)
    assert set(obj) == {"value", "method", "n", "k"}
    assert obj["value"] == {"num": "1", "den": "5"}


def test_text_output(capsys):
    code, out, _ = run(["phi", "--a", "2", "--b", "2", "--n", "3"], capsys)
    assert code == 0 and out.strip().endswith("= 4/15")
    code, out, _ = run(["integral", "--matrix", "1", "--n", "5"], capsys)
    assert code == 0 and out.strip().endswith("= 0")


def test_csv_output(capsys):
    code, out, _ = run(["conjecture", "even", "--max-entry", "2", "--n", "4:5", "--csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "case,n,lhs,rhs,status"
    assert len(lines) == 1 + 16 * 2


@pytest.mark.parametrize("argv, code", [
    (["integral", "--matrix", "2,0;0", "--n", "3"], 3),
    (["integral", "--matrix", "x", "--n", "3"], 3),
    (["frobnicate"], 3),
    (["integral", "--n", "3"], 3),
    (["conjecture", "even", "--n", "1:3"], 3),
    (["phi", "--a", "3", "--b", "1", "--n", "4"], 4),
    (["integral", "--matrix", "1,1;1,1", "--n", "3", "--method", "closed"], 4),
    (["weingarten", "--k", "3", "--n", "2"], 4),
    (["oracle", "--matrix", "2,2,2", "--n", "2"], 4),
    (["integral", "--matrix", "8,8", "--n", "3", "--method", "oracle"], 2),
    (["weingarten", "--k", "7", "--n", "9"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_verification_failure_exit_code(monkeypatch, capsys):
    from ortho_moments import two_by_two

    monkeypatch.setattr(two_by_two, "conjecture_odd_sum", lambda q, n: Fraction(0))
    code, out, _ = run(["conjecture", "odd", "--max-sum", "4", "--n", "4"], capsys)
    assert code == 1
    assert json.loads(out)["first_counterexample"] is not None


def test_auto_falls_back_to_monte_carlo(capsys):
    code, out, err = run(["integral", "--matrix", "1,1,1,1,1,1,1,1;1,1,1,1,1,1,1,1", "--n", "8",
                          "--samples", "500", "--json"], capsys)
    assert code == 0 and "warning" in err
    assert json.loads(out)["method"] == "mc"


def test_auto_uses_projection_when_gram_is_singular(capsys):
    code, out, _ = run(["integral", "--matrix", "1,1;1,1", "--n", "2", "--method", "oracle",
                        "--singular", "project", "--json"], capsys)
    assert code == 0 and from_json(json.loads(out)["value"]) == Fraction(-1, 8)


@pytest.mark.parametrize("matrix", ["2", "2,2", "2,0;0,2", "4,2;0,2", "2,4,0;0,2,2", "6;2"])
@pytest.mark.parametrize("n", [5, 7])
def test_oracle_and_closed_agree(matrix, n, capsys):
    values = []
    for method in ("closed", "oracle"):
        code, out, _ = run(["integral", "--matrix", matrix, "--n", str(n), "--method", method, "--json"], capsys)
        assert code == 0
        values.append(json.loads(out)["value"])
    assert values[0] == values[1]


def test_parse_matrix_examples():
    assert parse_matrix("2,0;0,2") == [[2, 0], [0, 2]]
    assert parse_matrix("4") == [[4]]
    assert parse_matrix(" 1 , 2 ; 3,4 ") == [[1, 2], [3, 4]]


@pytest.mark.parametrize("text, position", [("2,0;0", 4), ("", 0), ("1,a", 2), ("1,,2", 2), ("1;-2", 2)])
def test_parse_matrix_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_matrix(text)
    assert info.value.position == position


@given(st.integers(1, 4).flatmap(lambda q: st.lists(st.lists(st.integers(0, 99), min_size=q, max_size=q),
                                                      min_size=1, max_size=4)))
def test_render_parse_round_trip(a):
    assert parse_matrix(render_matrix(a)) == a


def test_n_ranges():
    assert parse_n_range("4:8") == [4, 5, 6, 7, 8]
    assert parse_n_range("3") == [3]
    for bad in ("1:4", "5:4", "a:b"):
        with pytest.raises(ParseError):
            parse_n_range(bad)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ortho_moments", "moments", "--alpha", "2", "--beta", "2",
                           "--n", "3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip().endswith("2/15")
