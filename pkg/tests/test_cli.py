import csv
import io
import json

import pytest

from qpoincare.cli import main
from qpoincare.invariants import gram_matrix
from qpoincare.numeric import exact_to_float
from qpoincare.reduced import render_a_key
from qpoincare.representations import universal_T_rep
from qpoincare.scalars import PARAMETERS

# symbolic-then-embed agreement of the numeric dmatrix export
EXPORT_TOL = 1e-10


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_run_hopf_passes(capsys):
    code, out, err = run(capsys, "run", "--p", "3", "--suite", "hopf")
    assert code == 0
    rows = json.loads(out)
    assert rows and all(r["status"] == "pass" for r in rows)
    assert set(rows[0]) == {"assertion_id", "paper_anchor", "status", "detail"}
    assert [r["assertion_id"] for r in rows] == sorted(r["assertion_id"] for r in rows)
    assert "assertions passed" in err


def test_bare_invocation_is_run(capsys):
    code, out, _ = run(capsys, "--p", "3", "--suite", "hopf")
    assert code == 0
    assert json.loads(out)


@pytest.mark.parametrize("p", ("4", "1", "x"))
def test_bad_p_is_a_usage_error(capsys, p):
    code, _, err = run(capsys, "run", "--p", p, "--suite", "all")
    assert code == 2
    assert "p must be" in err


def test_no_arguments_is_a_usage_error(capsys):
    assert run(capsys)[0] == 2


def test_reports_are_byte_identical(capsys, tmp_path):
    outputs = []
    for fmt in ("json", "csv"):
        for k in range(2):
            path = tmp_path / f"report{k}.{fmt}"
            assert main(["run", "--p", "3", "--suite", "duality", "--seed", "5", "--format", fmt,
                         "--output", str(path)]) == 0
            outputs.append(path.read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1]
    assert outputs[2] == outputs[3]
    header = outputs[2].decode().splitlines()[0]
    assert header == "assertion_id,paper_anchor,status,detail"


def test_gram_export_csv(capsys):
    code, out, _ = run(capsys, "export", "gram", "--p", "3", "--space", "M", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert len(rows) == 10 and all(len(r) == 10 for r in rows)
    _, g = gram_matrix(3, "M")
    assert [r[1:] for r in rows[1:]] == [[v.render() for v in r] for r in g]
    code, again, _ = run(capsys, "export", "gram", "--p", "3", "--space", "M", "--format", "csv")
    assert again == out


def test_dmatrix_symbolic_json(capsys):
    code, out, _ = run(capsys, "export", "dmatrix", "--p", "3", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)
    d = universal_T_rep(3)
    assert rows[0][0] == d[0, 0].render()
    assert all(isinstance(e, str) and "lambda+" in e for r in rows for e in r)


def test_dmatrix_numeric_csv_matches_exact(capsys):
    p = 5
    code, out, _ = run(capsys, "export", "dmatrix", "--p", str(p), "--format", "csv",
                       "--lambda-plus", "1", "--lambda-minus", "1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assignment = {name: 0.0 for name in PARAMETERS}
    assignment.update({"lambda+": 1.0, "lambda-": 1.0})
    coeffs, _ = exact_to_float(universal_T_rep(p), assignment)
    seen = {}
    for r in rows:
        seen[(int(r["m"]), int(r["n"]), r["monomial"])] = complex(float(r["re"]), float(r["im"]))
    worst = 0.0
    for m in range(p):
        for n in range(p):
            for a in range(p):
                for b in range(p):
                    for k in range(p):
                        want = coeffs[m, n, (a * p + b) * p + k]
                        got = seen.get((m, n, render_a_key((a, b, k))), 0j)
                        worst = max(worst, abs(got - want))
    assert worst <= EXPORT_TOL
    assert len(seen) == len(rows)


def test_dmatrix_numeric_needs_lambda(capsys):
    code, _, err = run(capsys, "export", "dmatrix", "--p", "5", "--format", "csv")
    assert code == 2
    assert "lambda" in err
    assert run(capsys, "export", "dmatrix", "--p", "5", "--lambda-plus", "1")[0] == 2
    assert run(capsys, "export", "dmatrix", "--p", "5", "--lambda-plus", "0", "--lambda-minus", "0")[0] == 2
    assert run(capsys, "export", "dmatrix", "--p", "5", "--lambda-plus", "abc", "--lambda-minus", "1")[0] == 2


def test_pairing_export(capsys):
    code, out, _ = run(capsys, "export", "pairing", "--p", "3", "--format", "json")
    assert code == 0
    table = json.loads(out)
    assert len(table["rows"]) == 27 and len(table["columns"]) == 27
    code, out_csv, _ = run(capsys, "export", "pairing", "--p", "3", "--format", "csv")
    assert len(out_csv.splitlines()) == 28


def test_parse_subcommand(capsys):
    code, out, _ = run(capsys, "parse", "eta-*eta+", "--p", "3", "--side", "A")
    assert code == 0
    # q^2 = w^8 = -w^2 when w has order 12
    assert out.strip() == "-w^2*eta+ eta-"


def test_parse_error_shows_caret(capsys):
    code, _, err = run(capsys, "parse", "eta+ * kappa", "--p", "3")
    assert code == 2
    lines = err.splitlines()
    assert lines[0] == "eta+ * kappa"
    assert lines[1] == " " * 7 + "^"
    assert lines[2].startswith("error: position 7:")


def test_output_to_unwritable_path(capsys, tmp_path):
    target = tmp_path / "missing" / "out.json"
    assert run(capsys, "export", "gram", "--p", "3", "--output", str(target))[0] == 2
