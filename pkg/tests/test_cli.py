import csv
import io
import json
import os
import subprocess
import sys
from fractions import Fraction

import pytest

from minorclass.cli import main, run
from minorclass.graphs import LabelledGraph


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_coeffs_examples():
    assert run(["coeffs", "--class", "max-degree-2", "--connected", "--max-n", "5"]) == (0, "0,1,1,4,15,72\n")
    assert run(["coeffs", "--class", "forests", "--max-n", "3"]) == (0, "1,1,2,7\n")
    assert run(["coeffs", "--class", "bowtie-free", "--max-n", "4"]) == (0, "1,1,2,8,64\n")


def test_coeffs_formats():
    code, out = run(["coeffs", "--class", "forests", "--max-n", "3", "--format", "json"])
    data = json.loads(out)
    assert code == 0 and data["counts"] == ["1", "1", "2", "7"]
    assert json.loads(json.dumps(data)) == data
    code, out = run(["coeffs", "--class", "forests", "--max-n", "3", "--format", "csv"])
    assert [r["a_n"] for r in rows(out)] == ["1", "1", "2", "7"]


def test_coeffs_errors():
    assert run(["coeffs", "--class", "nope", "--max-n", "3"])[0] == 2
    assert run(["coeffs", "--class", "forests", "--max-n", "2001"])[0] == 2
    assert run(["coeffs", "--class", "spoon-dbf", "--max-n", "3"])[0] == 2


def test_dist_examples():
    code, out = run(["dist", "--class", "path-forests", "--n", "2", "--stat", "N"])
    data = json.loads(out)
    assert code == 0 and dict(zip(data["support"], data["probs"])) == {1: "1/2", 2: "1/2"}
    code, out = run(["dist", "--class", "bowtie-free", "--n", "1", "--stat", "S"])
    assert [Fraction(p) for p in json.loads(out)["probs"]] == [1]
    code, out = run(["dist", "--class", "forests", "--n", "3", "--stat", "S", "--format", "csv"])
    law = {int(r["k"]): Fraction(r["prob"]) for r in rows(out)}
    assert law[3] == Fraction(3, 7) and sum(law.values()) == 1


def test_dist_decimals_have_fifteen_digits():
    code, out = run(["dist", "--class", "forests", "--n", "7", "--stat", "L"])
    data = json.loads(out)
    for p, d in zip(data["probs"], data["decimals"]):
        assert abs(float(Fraction(p)) - float(d)) <= 1e-15 * max(1.0, float(d))


def test_dist_refusal_and_float():
    assert run(["dist", "--class", "forests", "--n", "5000", "--stat", "L"])[0] == 4
    code, out = run(["dist", "--class", "path-forests", "--n", "200", "--stat", "L", "--float"])
    assert code == 0
    assert abs(sum(float(d) for d in json.loads(out)["decimals"]) - 1) < 1e-12


def test_sample_zero_and_determinism():
    assert run(["sample", "--class", "forests", "--x", "0.3", "--samples", "0"]) == (0, "")
    args = ["sample", "--class", "bowtie-free", "--x", "0.3", "--seed", "12", "--samples", "40"]
    first = run(args)
    assert first[0] == 0 and first == run(args)
    assert first != run(args[:-3] + ["13", "--samples", "40"])


def test_sample_max_degree_two_piped_validator():
    code, out = run(["sample", "--class", "max-degree-2", "--x", "0.8", "--seed", "3", "--samples", "200"])
    assert code == 0
    for line in out.splitlines():
        g = LabelledGraph.from_json(line)
        assert max(g.degrees(), default=0) <= 2


def test_sample_formats_and_window():
    code, out = run(["sample", "--class", "path-forests", "--x", "0.9", "--seed", "2", "--samples", "20",
                     "--size-window", "5:9", "--format", "g6"])
    assert code == 0
    graphs = [LabelledGraph.from_graph6(line) for line in out.splitlines()]
    assert len(graphs) == 20 and all(5 <= g.n <= 9 for g in graphs)
    code, out = run(["sample", "--class", "path-forests", "--x", "0.9", "--seed", "2", "--samples", "20",
                     "--size-window", "5:9"])
    assert [LabelledGraph.from_json(line) for line in out.splitlines()] == graphs


def test_sample_errors():
    assert run(["sample", "--class", "two-spoon-free", "--t", "0.5"])[0] == 2
    assert run(["sample", "--class", "path-forests", "--x", "1.5"])[0] == 2
    assert run(["sample", "--class", "forests", "--t", "1"])[0] == 2
    assert run(["sample", "--class", "path-forests", "--x", "0.5", "--size-window", "9:3"])[0] == 2
    assert run(["sample", "--class", "path-forests", "--x", "0.1", "--size-window", "400:400", "--samples", "1"])[0] == 1
    assert run(["sample", "--class", "forests", "--t", "1", "--max-size", "20", "--samples", "3"])[0] == 0


def test_asympt_forests_ratio_column():
    code, out = run(["asympt", "--class", "forests", "--n-list", "10,100,400"])
    assert code == 0
    vals = [float(r["a_n/c_n"]) for r in rows(out)]
    errs = [abs(v - 1.6487212707) for v in vals]
    assert errs[0] > errs[1] > errs[2]
    assert run(["asympt", "--class", "forests", "--n-list", "10", "--compare", "hayman"])[0] == 2


def test_asympt_dbf_column():
    code, out = run(["asympt", "--class", "diamond-bowtie-free", "--n-list", "50,400", "--connected"])
    vals = [float(r["c_n*4n/(n!e^n)"]) for r in rows(out)]
    assert code == 0 and abs(vals[1] - 1) < abs(vals[0] - 1)


def test_asympt_paths_hayman():
    code, out = run(["asympt", "--class", "path-forests", "--n-list", "50,400", "--compare", "hayman"])
    r = rows(out)
    assert code == 0
    assert abs(float(r[1]["hayman_rel_err"])) < abs(float(r[0]["hayman_rel_err"]))
    assert float(r[0]["exact"]) == pytest.approx(330.30362570505354, rel=1e-12)


def test_validate_default_passes():
    code, out = run(["validate"])
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "ALL PASS"
    assert "SL identity, path-forests, n=30: PASS" in lines
    assert not any(line.endswith("FAIL") for line in lines)


def test_validate_usage():
    assert run(["validate", "--max-n", "7"])[0] == 2
    assert run(["validate", "--max-n", "0"])[0] == 2


def test_diag():
    code, out = run(["diag", "--class", "path-forests", "--grid", "12"])
    data = json.loads(out)
    assert code == 0 and data["verdicts"]["V"] == "diverges"
    assert json.loads(json.dumps(data)) == data
    code, out = run(["diag", "--class", "bowtie-free"])
    assert json.loads(out)["verdicts"]["C_over_V^(3/2)"] == "vanishes"
    assert run(["diag", "--class", "bounded:3"])[0] == 2
    assert run(["diag", "--class", "forests"])[0] == 2


def test_usage_errors():
    assert run([])[0] == 2
    assert run(["frobnicate"])[0] == 2
    assert run(["--prec", "20", "coeffs", "--class", "forests", "--max-n", "3"])[0] == 2


def test_precision_environment(monkeypatch):
    monkeypatch.setenv("MINORCLASS_PRECISION", "80")
    low = run(["asympt", "--class", "path-forests", "--n-list", "60", "--compare", "hayman"])
    monkeypatch.setenv("MINORCLASS_PRECISION", "300")
    high = run(["asympt", "--class", "path-forests", "--n-list", "60", "--compare", "hayman"])
    assert low[0] == high[0] == 0
    assert float(rows(low[1])[0]["hayman"]) == pytest.approx(float(rows(high[1])[0]["hayman"]), rel=1e-15)
    monkeypatch.setenv("MINORCLASS_PRECISION", "lots")
    assert run(["coeffs", "--class", "forests", "--max-n", "3"])[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "minorclass", "coeffs", "--class", "forests", "--max-n", "3"],
        capture_output=True, text=True, env={**os.environ},
    )
    assert proc.returncode == 0 and proc.stdout == "1,1,2,7\n"


def test_main_writes_to_stream():
    buf = io.StringIO()
    assert main(["coeffs", "--class", "path-forests", "--max-n", "4"], buf) == 0
    assert buf.getvalue() == "1,1,2,7,34\n"
