import json

import numpy as np
import pytest

from perronorders import cli
from perronorders import example as golden
from perronorders.constructor import EpsilonSchedule, TargetOrders, construct
from perronorders.errors import ScheduleExhausted
from perronorders.matrix_core import random_reciprocal
from perronorders.matrix_io import MatrixParseError, dumps_json, loads_matrix, parse_text
from perronorders.ordering import OrderSpec

GOLDEN = 5e-4


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "A.txt"
    rows = "\n".join(" ".join(f"{x:.4f}" for x in row) for row in golden.SEED_PRINTED)
    p.write_text(f"4\n{rows}\n")
    return p


@pytest.fixture
def consistent3_file(tmp_path):
    p = tmp_path / "c3.json"
    p.write_text(json.dumps({"n": 3, "rows": [[1, 0.5, 0.25], [2, 1, 0.5], [4, 2, 1]]}))
    return p


# solve

def test_solve_example(capsys, example_file):
    code, out, _ = run(capsys, "solve", example_file, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["lambda"] == pytest.approx(4.2426, abs=1e-4)
    assert report["ci"] == pytest.approx(0.0809, abs=5e-5)
    np.testing.assert_allclose(report["right"], golden.RIGHT_SEED, atol=GOLDEN)


def test_solve_example_reports_tie_in_right_vector(capsys, example_file):
    # The printed matrix is rounded, so v_2 and v_4 differ by 2e-5 relatively;
    # at a tie tolerance above that the tie in v = (0.5, 1, 3, 1) is reported.
    code, out, _ = run(capsys, "solve", example_file, "--tie-tol", "1e-4")
    assert code == 0
    assert "right order            unavailable, tie at (2,4)" in out
    assert "relation               unavailable (tie)" in out


def test_solve_consistent_vectors_coincide(capsys, consistent3_file):
    code, out, _ = run(capsys, "solve", consistent3_file, "--json")
    assert code == 0
    report = json.loads(out)
    assert abs(report["ci"]) <= 1e-12
    assert report["relation"] == "vectors coincide"


def test_solve_malformed(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("3\n1 2 0.5\n0.5 1 x\n2 1 1\n")
    code, _, err = run(capsys, "solve", p)
    assert code == 2
    assert "line 3, column 7" in err


def test_solve_not_reciprocal(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2\n1 2\n1 1\n")
    code, _, err = run(capsys, "solve", p)
    assert code == 2
    assert "(1,2)" in err


def test_solve_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "solve", tmp_path / "nope.txt")
    assert code == 2


def test_solver_failure_exit_code(capsys, example_file):
    code, _, err = run(capsys, "solve", example_file, "--max-iter", "1")
    assert code == 3
    assert "did not converge" in err


# construct

def test_construct_example_reverse(capsys, example_file, tmp_path):
    out_path = tmp_path / "B.json"
    code, out, _ = run(
        capsys, "construct", example_file, "--right-order", "1,2,3,4",
        "--inv-left-order", "4,3,2,1", "--json", "--format", "json", "--out", out_path,
    )
    assert code == 0
    report = json.loads(out)
    np.testing.assert_allclose(report["left"], golden.LEFT_B_INCREASING, atol=GOLDEN)
    np.testing.assert_allclose(report["w"], golden.W_INCREASING, atol=1e-15)
    assert report["relation"] == "reverse"
    assert all(report["verification"].values())
    B = loads_matrix(out_path.read_text())
    np.testing.assert_allclose(B.dense, report["B"], rtol=1e-15)


def test_construct_example_same(capsys, example_file):
    code, out, _ = run(
        capsys, "construct", example_file, "--right-order", "4,3,2,1", "--inv-left-order", "4,3,2,1",
    )
    assert code == 0
    assert "relation               Same" in out
    assert "PASS  right_vector_is_w" in out
    left = [float(t) for t in out.split("left Perron of B")[1].split("\n")[0].strip(" ()").split(",")]
    np.testing.assert_allclose(left, golden.LEFT_B_DECREASING, atol=GOLDEN)


def test_construct_consistent_seed(capsys, consistent3_file):
    code, _, err = run(capsys, "construct", consistent3_file, "--right-order", "1,2,3", "--inv-left-order", "3,2,1")
    assert code == 4
    assert "consistent" in err


def test_construct_tie(capsys, tmp_path):
    p = tmp_path / "sym.txt"
    # Swapping alternatives 1 and 2 maps this matrix to itself.
    p.write_text("4\n1 1 2 0.7\n1 1 2 0.7\n0.5 0.5 1 1.5\n" + f"{1/0.7!r} {1/0.7!r} {1/1.5!r} 1\n")
    code, _, err = run(capsys, "construct", p, "--right-order", "1,2,3,4", "--inv-left-order", "4,3,2,1")
    assert code == 5
    assert "(1,2)" in err


def test_construct_schedule_exhausted(capsys, tmp_path):
    A = random_reciprocal(5, 0.3, 2)
    rng = np.random.default_rng(0)
    sched = EpsilonSchedule(eps0=0.24, max_halvings=0)
    for _ in range(50):
        t = TargetOrders(OrderSpec(tuple(rng.permutation(5))), OrderSpec(tuple(rng.permutation(5))))
        try:
            construct(A, t, sched)
        except ScheduleExhausted:
            break
    else:
        pytest.fail("no target pair needs eps < 0.24")
    p = tmp_path / "A.json"
    p.write_text(dumps_json(A))
    code, _, _ = run(
        capsys, "construct", p, "--right-order", str(t.right_order), "--inv-left-order",
        str(t.inv_left_order), "--eps0", "0.24", "--max-halvings", "0",
    )
    assert code == 6


@pytest.mark.parametrize("order", ["1,2,3", "1,1,2,3", "a,b,c,d"])
def test_construct_bad_order(capsys, example_file, order):
    code, _, _ = run(capsys, "construct", example_file, "--right-order", order, "--inv-left-order", "4,3,2,1")
    assert code == 2


# example

def test_example_passes(capsys):
    code, out, _ = run(capsys, "example")
    assert code == 0
    assert "FAIL" not in out
    assert "27/27 checks passed" in out


def test_example_loose_solver_tolerance_still_passes_at_1e4(capsys):
    code, _, _ = run(capsys, "example", "--tol", "1e-4")
    assert code == 0


@pytest.mark.xfail(
    strict=True,
    reason="power iteration stopped at a 1e-2 step size is ~2e-3 from the "
    "Perron vector for this matrix, above the 5e-4 print tolerance",
)
def test_example_solver_tolerance_1e2(capsys):
    code, _, _ = run(capsys, "example", "--tol", "1e-2")
    assert code == 0


def test_example_tampered_constant(capsys, monkeypatch):
    monkeypatch.setattr(golden, "LEFT_ROW_SUM_FORM", (0.9062, 0.9475, 0.9950, 1.0))
    code, out, err = run(capsys, "example")
    assert code == 1
    assert "FAIL  left Perron vector of A'" in out
    assert "diff in left Perron vector of A'" in err


# gen

def test_gen_consistent(capsys, tmp_path):
    p = tmp_path / "g.txt"
    code, _, _ = run(capsys, "gen", "--n", 4, "--delta", 0, "--seed", 1, "--out", p)
    assert code == 0
    code, out, _ = run(capsys, "solve", p, "--json")
    assert abs(json.loads(out)["ci"]) <= 1e-10


def test_gen_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "--n", 4, "--delta", 0.3, "--seed", 7)
    _, b, _ = run(capsys, "gen", "--n", 4, "--delta", 0.3, "--seed", 7)
    assert a == b and a.startswith("4\n")


def test_gen_json_round_trip(capsys):
    _, text, _ = run(capsys, "gen", "--n", 5, "--delta", 0.4, "--seed", 2, "--format", "json")
    assert dumps_json(loads_matrix(text)) == text


def test_gen_text_round_trip(capsys):
    _, text, _ = run(capsys, "gen", "--n", 5, "--delta", 0.4, "--seed", 2)
    assert np.array_equal(parse_text(text), loads_matrix(text).dense)


@pytest.mark.parametrize("args", [("--n", 1), ("--n", 3, "--delta", -1)])
def test_gen_bad_parameters(capsys, args):
    code, _, _ = run(capsys, "gen", *args)
    assert code == 2


def test_gen_into_construct(capsys, tmp_path):
    p = tmp_path / "g6.json"
    run(capsys, "gen", "--n", 6, "--delta", 0.2, "--seed", 3, "--format", "json", "--out", p)
    rng = np.random.default_rng(3)
    for _ in range(5):
        right = ",".join(str(i + 1) for i in rng.permutation(6))
        inv_left = ",".join(str(i + 1) for i in rng.permutation(6))
        code, _, _ = run(capsys, "construct", p, "--right-order", right, "--inv-left-order", inv_left)
        assert code == 0


# sweep

def test_sweep_n3_rejected(capsys):
    code, _, err = run(capsys, "sweep", "--n", 3)
    assert code == 2
    assert "coincide" in err


def test_sweep_small(capsys):
    code, out, _ = run(capsys, "sweep", "--n", 4, "--count", 20, "--delta", 0.3, "--json")
    assert code == 0
    report = json.loads(out)
    assert report["successes"] == report["trials"] == 20
    assert report["max_ci_drift"] < 1e-8


def test_sweep_failure_exit_code(capsys):
    code, out, _ = run(capsys, "sweep", "--n", 5, "--count", 30, "--eps0", "0.24", "--max-halvings", "0")
    assert code == 1
    assert "FAIL seed=" in out


# matrix_io

def test_parse_errors_have_positions():
    with pytest.raises(MatrixParseError) as info:
        parse_text("2\n1 2\n0.5\n")
    assert info.value.line == 3
    with pytest.raises(MatrixParseError) as info:
        parse_text("two\n")
    assert (info.value.line, info.value.column) == (1, 1)
    with pytest.raises(MatrixParseError):
        loads_matrix('{"n": 2, "rows": [[1, 2]]}')
    with pytest.raises(MatrixParseError) as info:
        loads_matrix('{"n": 2,\n "rows": [[1, 2], [0.5 1]]}')
    assert info.value.line == 2


def test_text_comments_and_blank_lines():
    A = loads_matrix("# seed\n2\n\n1 4  # row 1\n0.25 1\n")
    assert A.upper.tolist() == [4.0]
