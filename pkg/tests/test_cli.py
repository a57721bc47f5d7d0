"""CLI behavior: schemas, exit codes, determinism, artifacts."""

import json
import os

import pytest

from polyrec.algebra import LaurentPoly
from polyrec.cli import main
from polyrec.recurrence import Recurrence, generate_terms


def const1(c):
    return LaurentPoly.const(1, c)


def P1(d):
    return LaurentPoly(1, {(e,): c for e, c in d.items()})


def chebyshev_job() -> str:
    rec = Recurrence([const1(1), P1({1: 1}), const1(-1)])
    return json.dumps(
        {
            "recurrence": rec.to_json(),
            "init": [const1(1).to_json(), P1({1: 1}).to_json()],
        }
    )


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


# ----------------------------------------------------------------------

def test_gen_chebyshev_last_term(capsys):
    code, out = run_cli(capsys, "gen", "--input", chebyshev_job(), "--n-max", "10")
    assert code == 0
    data = json.loads(out)
    assert len(data["terms"]) == 11
    last = LaurentPoly.from_json(data["terms"][-1])
    expected = P1({10: 1, 8: 9, 6: 28, 4: 35, 2: 15, 0: 1})
    assert last == expected
    # spot check: value at x=1 is the Fibonacci number 89
    assert last.evaluate([1]) == 89


def test_count_segment(capsys):
    code, out = run_cli(
        capsys, "count", "--input", json.dumps({"dim": 1, "vertices": [[2], [7]]})
    )
    assert code == 0
    assert json.loads(out) == {"count": 6, "area": "0"}


def test_fit_constant_polygons(capsys):
    polys = [{"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]} for _ in range(40)]
    code, out = run_cli(
        capsys, "fit", "--input", json.dumps({"polytopes": polys}), "--deg-max", "1"
    )
    assert code == 0
    data = json.loads(out)
    assert data["period"] == 1 and data["prefix"] == 0


def test_fit_sequence(capsys):
    seq = {"sequence": [str(n + (n % 2)) for n in range(40)]}
    code, out = run_cli(capsys, "fit", "--input", json.dumps(seq), "--m-max", "3")
    assert code == 0
    data = json.loads(out)
    assert data["period"] == 2


def test_zeros_command(capsys):
    seq = {"sequence": [0 if n % 2 == 0 else 1 for n in range(41)]}
    code, out = run_cli(capsys, "zeros", "--input", json.dumps(seq))
    assert code == 0
    data = json.loads(out)
    assert data["period"] == 2 and data["fullResidues"] == [0]


def test_guess_roundtrip_through_gen(capsys):
    code, out = run_cli(capsys, "gen", "--input", chebyshev_job(), "--n-max", "6")
    assert code == 0
    code, out = run_cli(capsys, "guess", "--input", out, "--d-max", "2")
    assert code == 0
    data = json.loads(out)
    assert len(data["coeffs"]) == 3


def test_eliminate_command(capsys):
    inst = {
        "P": {"vars": 3, "terms": [["1", "1", [0, 0, 1]], ["-1", "1", [1, 0, 0]]]},
        "Q": {"vars": 3, "terms": [["1", "1", [0, 0, 1]], ["-1", "1", [0, 1, 0]]]},
    }
    code, out = run_cli(
        capsys, "eliminate", "--input", json.dumps(inst), "--n-max", "12", "--d-max", "2"
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["terms"]) == 12
    assert data["recurrence"] is not None
    assert data["model"] is not None


def test_trace_command(capsys):
    one = {"vars": 1, "terms": [["1", "1", [0]]]}
    zero = {"vars": 1, "terms": []}
    q = {"vars": 1, "terms": [["1", "1", [1]]]}
    ident = [[[one, one], [zero, one]], [[zero, one], [one, one]]]
    B = [[[zero, one], [one, one]], [[one, one], [q, one]]]
    code, out = run_cli(
        capsys,
        "trace",
        "--input",
        json.dumps({"A": ident, "B": B}),
        "--n-max",
        "6",
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["traces"]) == 7
    assert len(data["recurrence"]["coeffs"]) == 3


def test_fan_command(capsys):
    poly = {
        "vars": 3,
        "terms": [
            ["1", "1", [2, 0, 0]],
            ["-1", "1", [1, 1, 0]],
            ["-1", "1", [0, 0, 1]],
        ],
    }
    code, out = run_cli(capsys, "fan", "--input", json.dumps(poly))
    assert code == 0
    assert len(json.loads(out)["rays"]) > 0


def test_shear_command(capsys):
    polys = {"polytopes": [{"dim": 2, "vertices": [[0, 1], [2, 0]]}] * 4}
    code, out = run_cli(capsys, "shear", "--input", json.dumps(polys), "--f", "1")
    assert code == 0
    data = json.loads(out)
    assert data["polytopes"][3]["vertices"] == [[-3, 1], [2, 0]]


def test_newton_command(capsys):
    poly = {"vars": 1, "terms": [["1", "1", [2]], ["1", "1", [7]]]}
    code, out = run_cli(capsys, "newton", "--input", json.dumps(poly))
    assert code == 0
    assert json.loads(out) == {"dim": 1, "vertices": [[2], [7]]}


# ----------------------------------------------------------------------
# exit codes
# ----------------------------------------------------------------------

def test_exit_2_on_schema_violation(capsys):
    code, _ = run_cli(capsys, "gen", "--input", "{not json", "--n-max", "4")
    assert code == 2
    code, _ = run_cli(capsys, "gen", "--input", json.dumps({"recurrence": {}}), "--n-max", "4")
    assert code == 2


def test_exit_3_on_precondition_failure(capsys):
    # n_max below order - 1
    job = chebyshev_job()
    code, _ = run_cli(capsys, "gen", "--input", job, "--n-max", "0")
    assert code == 3
    # fit with too little data
    seq = {"sequence": ["1", "2", "3"]}
    code, _ = run_cli(capsys, "fit", "--input", json.dumps(seq), "--m-max", "6")
    assert code == 3


def test_exit_4_on_notfound_with_strict(capsys):
    seq = {"sequence": [str(n * n) for n in range(40)]}
    code, _ = run_cli(capsys, "fit", "--input", json.dumps(seq), "--strict")
    assert code == 4
    code, out = run_cli(capsys, "fit", "--input", json.dumps(seq))
    assert code == 0
    assert json.loads(out) == {"found": False}


# ----------------------------------------------------------------------
# determinism and round trips
# ----------------------------------------------------------------------

def test_byte_identical_output(capsys):
    _, out1 = run_cli(capsys, "gen", "--input", chebyshev_job(), "--n-max", "12")
    _, out2 = run_cli(capsys, "gen", "--input", chebyshev_job(), "--n-max", "12")
    assert out1 == out2


def test_emitted_json_reparses_to_originals(capsys):
    rec = Recurrence([const1(1), P1({1: 1}), const1(-1)])
    init = [const1(1), P1({1: 1})]
    _, out = run_cli(capsys, "gen", "--input", chebyshev_job(), "--n-max", "8")
    emitted = [LaurentPoly.from_json(t) for t in json.loads(out)["terms"]]
    assert emitted == generate_terms(rec, init, 8).polys


# ----------------------------------------------------------------------
# the report path
# ----------------------------------------------------------------------

def test_report_writes_bundle_csv_figures_svg(tmp_path, capsys):
    out_json = tmp_path / "report.json"
    svg = tmp_path / "frames.svg"
    code = main(
        [
            "report",
            "--input",
            chebyshev_job(),
            "--n-max",
            "40",
            "--fit-upto",
            "36",
            "--output",
            str(out_json),
            "--svg",
            str(svg),
        ]
    )
    assert code == 0
    bundle = json.loads(out_json.read_text())
    assert bundle["fits"]["polygonModel"]["period"] == 2
    assert bundle["fits"]["count"]["period"] == 2
    assert bundle["empirical"]["holdoutExact"] is True
    assert bundle["artifacts"]["csv"] == "report.csv"
    csv_text = (tmp_path / "report.csv").read_text().splitlines()
    assert csv_text[0] == "n,vstar,v,count,area"
    assert len(csv_text) == 42
    for name in bundle["artifacts"]["figures"]:
        assert (tmp_path / name).exists()
    assert svg.exists()
    assert svg.read_text().startswith("<svg")


def test_report_json_deterministic(tmp_path):
    paths = []
    for i in (1, 2):
        out_json = tmp_path / f"r{i}.json"
        code = main(
            ["report", "--input", chebyshev_job(), "--n-max", "38", "--output", str(out_json)]
        )
        assert code == 0
        paths.append(out_json)
    b1 = paths[0].read_text()
    b2 = paths[1].read_text()
    assert b1 == b2
    csv1 = (tmp_path / "r1.csv").read_text()
    csv2 = (tmp_path / "r2.csv").read_text()
    assert csv1 == csv2
