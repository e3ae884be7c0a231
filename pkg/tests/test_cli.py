import io
import json
import subprocess
import sys

import pytest

from charpoly_census.cli import main
from charpoly_census.errors import REASON_CODES, SpecError
from charpoly_census.problem import parse_problem

ORDER = [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["1/2", "1/2", "1/2", "1/2"]]
GOLDEN = {"polynomial": [-1, -1, 1], "algebra": {"type": "matrix"}, "census": {"T_max": 80, "grid_points": 4}}
QUAT = {
    "polynomial": [-1, -1, 1],
    "algebra": {"type": "quaternion", "a": -1, "b": 3, "order_basis": ORDER},
    "census": {"T_max": 60, "grid_points": 3},
}
CUBIC = {
    "polynomial": [-2, 0, 0, 1],
    "field_invariants": {"r1": 1, "r2": 1, "w": 2, "d": -108, "h": 1, "R": "0.796664218821"},
    "census": {"T_max": 3, "grid_points": 2},
}


@pytest.fixture
def write_spec(tmp_path):
    def write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(path)

    return write


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_local_lines(write_spec):
    code, out, _ = run(["local", "--spec", write_spec(QUAT)])
    assert code == 0
    assert out.splitlines() == [
        "q=2 division (e=1,f=2) feasible=yes orbits=2 correction=4",
        "q=3 division (e=1,f=2) feasible=yes orbits=2 correction=3",
        "q=5 split (e=2,f=1) feasible=yes density=0.96",
    ]


def test_invariants_and_constant(write_spec):
    code, out, _ = run(["invariants", "--spec", write_spec(GOLDEN)])
    assert code == 0 and "h = 1" in out and "R = 0.481212" in out
    code, out, _ = run(["constant", "--spec", write_spec(QUAT)])
    assert code == 0
    assert "C = 19.7285" in out and "correction[q=2] = 4" in out and "C_covolume = 3.28808" in out


def test_cubic_pipeline(write_spec):
    code, out, _ = run(["invariants", "--spec", write_spec(CUBIC)])
    assert code == 0 and "provenance = fixture" in out
    code, out, _ = run(["census", "--spec", write_spec(CUBIC)])
    assert code == 0
    assert out.splitlines()[0] == "T,count,count_over_Tm,predicted_C,ratio"


def test_census_csv_format(write_spec, tmp_path):
    target = tmp_path / "out.csv"
    code, _, _ = run(["census", "--spec", write_spec(GOLDEN), "--out", str(target)])
    assert code == 0
    raw = target.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    lines = raw.decode().splitlines()
    assert lines[0] == "T,count,count_over_Tm,predicted_C,ratio"
    assert [line.split(",")[0] for line in lines[1:]] == ["10", "20", "40", "80"]
    assert all(line.split(",")[3] == "1.64404105213" for line in lines[1:])


def test_flags_override_spec(write_spec):
    code, out, _ = run(["census", "--spec", write_spec(GOLDEN), "--t-max", "20", "--grid", "2", "--threads", "2"])
    assert code == 0
    assert [line.split(",")[0] for line in out.splitlines()[1:]] == ["10", "20"]


def test_verify_table(write_spec):
    code, out, _ = run(["verify", "--spec", write_spec(GOLDEN)])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("C = 1.64404")
    assert len(lines) == 2 + 4


@pytest.mark.parametrize(
    "data, reason, status",
    [
        ("{not json", "spec_unreadable", 2),
        ({"polynomial": [-1, -1, 1], "algebra": {"type": "quaternion", "a": -1, "b": 3}}, "order_basis_required", 2),
        ({"polynomial": [-2, 0, 0, 1]}, "field_invariants_required", 2),
        ({"polynomial": [-1, -1, 2]}, "spec_invalid", 2),
        ({**CUBIC, "field_invariants": {**CUBIC["field_invariants"], "r1": 3}}, "fixture_mismatch", 2),
        ({"polynomial": [-4, 0, 1]}, "reducible_polynomial", 3),
        ({"polynomial": [-12, 0, 1]}, "not_integrally_closed", 3),
        ({"polynomial": [-1, -1, 1], "algebra": {"type": "quaternion", "a": -1, "b": -1, "order_basis": ORDER}}, "definite_algebra", 3),
        (
            {"polynomial": [-1, -1, 1], "algebra": {"type": "quaternion", "a": -1, "b": 3, "order_basis": [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]]}},
            "invalid_order",
            3,
        ),
        ({**QUAT, "polynomial": [-4, -1, 1]}, "infeasible_division_prime", 4),
    ],
)
def test_failures_give_one_reason_line(write_spec, data, reason, status):
    code, _, err = run(["constant", "--spec", write_spec(data)])
    assert code == status == REASON_CODES[reason]
    lines = err.splitlines()
    assert len(lines) == 1 and lines[0].startswith(f"error: {reason}: ")


def test_infeasible_census_writes_zeros(write_spec):
    code, out, err = run(["census", "--spec", write_spec({**QUAT, "polynomial": [-4, -1, 1]})])
    assert code == 4
    assert all(line.split(",")[1:] == ["0", "0", "0", "0"] for line in out.splitlines()[1:])
    assert err.startswith("error: infeasible_division_prime")


def test_missing_spec_file():
    code, _, err = run(["local", "--spec", "/nonexistent/spec.json"])
    assert code == 2 and "spec_unreadable" in err


def test_rationals_are_exact():
    spec = parse_problem({**QUAT, "census": {"T_max": "7/2"}})
    assert spec.T_max.denominator == 2
    assert spec.algebra.order_basis[3][0].denominator == 2
    with pytest.raises(SpecError):
        parse_problem({**QUAT, "census": {"T_max": 3.5}})


def test_console_script(write_spec):
    proc = subprocess.run(
        [sys.executable, "-m", "charpoly_census.cli", "local", "--spec", write_spec(GOLDEN)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "q=5 split (e=2,f=1) feasible=yes density=0.96"
