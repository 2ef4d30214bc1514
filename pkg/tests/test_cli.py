import csv
import io
import subprocess
import sys

import pytest

from cyclix.cli import EXIT_AXIOM, EXIT_INVARIANT, EXIT_OK, EXIT_PARSE, EXIT_TRUNCATION, run
from cyclix.document import save
from cyclix.modelzoo import fixture


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def parse_table(text):
    lines = [l for l in text.splitlines() if l.strip()]
    head = lines[0].split()
    return [dict(zip(head, l.split())) for l in lines[2:]]


def test_directed_cyclic_is_copies_of_k():
    code, text = call("ch", "--input", "directed3", "--max-len", "8")
    assert code == EXIT_OK
    _, k_text = call("ch", "--input", "k", "--max-len", "8")
    rows = {r["degree"]: r for r in parse_table(text)}
    k_rows = {r["degree"]: r for r in parse_table(k_text)}
    for d, r in rows.items():
        if r["reliable"] == "yes":
            assert int(r["dim"]) == 3 * int(k_rows[d]["dim"])
    assert [d for d, r in rows.items() if r["reliable"] == "yes" and r["dim"] != "0"] == ["0", "2", "4", "6"]


def test_csv_matches_table():
    _, table = call("hh", "--input", "directed3", "--max-len", "6")
    _, text = call("hh", "--input", "directed3", "--max-len", "6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows == parse_table(table)


def test_cochain_convention_flips_degrees():
    _, chain = call("ch", "--input", "k", "--max-len", "6", "--format", "csv")
    _, cochain = call("ch", "--input", "k", "--max-len", "6", "--format", "csv", "--convention", "cochain")
    a = {int(r["degree"]): r["dim"] for r in csv.DictReader(io.StringIO(chain))}
    b = {int(r["degree"]): r["dim"] for r in csv.DictReader(io.StringIO(cochain))}
    assert {-d: v for d, v in a.items()} == b


def test_degree_window():
    code, text = call("ch", "--input", "k", "--max-len", "8", "--degree-min", "2", "--degree-max", "4")
    assert code == EXIT_OK
    assert [r["degree"] for r in parse_table(text)] == ["2", "3", "4"]
    code, _ = call("ch", "--input", "k", "--max-len", "4", "--degree-min", "0", "--degree-max", "9")
    assert code == EXIT_TRUNCATION


def test_field_flag():
    _, q = call("hh", "--input", "directed3", "--max-len", "5", "--format", "csv")
    _, p = call("hh", "--input", "directed3", "--max-len", "5", "--format", "csv", "--field", "fp:32003")
    assert q == p
    assert call("hh", "--input", "k", "--field", "fp:9")[0] == EXIT_PARSE


def test_verify_exit_codes():
    assert call("verify", "--input", "s2")[0] == EXIT_OK
    code, text = call("verify", "--input", "s2-perturbed")
    assert code == EXIT_INVARIANT
    assert "FAIL" in text.upper()


def test_axioms_on_sphere():
    code, text = call("axioms", "--input", "s2", "--max-len", "5")
    assert code == EXIT_OK, text


def test_bracket_and_cobracket():
    code, text = call("bracket", "--input", "s2", "--max-len", "2")
    assert code == EXIT_OK
    rows = parse_table(text)
    assert {"left": "1[1|v]", "right": "1[1]", "term": "[1]", "coefficient": "-1"} in rows
    code, text = call("bracket", "--input", "s2", "--left", "1|v", "--right", "1")
    assert code == EXIT_OK and "[1]" in text
    assert call("bracket", "--input", "s2", "--left", "1")[0] == EXIT_PARSE
    assert call("bracket", "--input", "s2", "--left", "q", "--right", "1")[0] == EXIT_PARSE
    assert call("cobracket", "--input", "s2", "--class", "v|v")[0] == EXIT_OK
    assert call("cobracket", "--input", "directed3")[0] == EXIT_INVARIANT


def test_ncsymp_compare():
    assert call("ncsymp-compare", "--input", "lambda1")[0] == EXIT_OK
    assert call("ncsymp-compare", "--input", "directed3")[0] == EXIT_INVARIANT


def test_input_errors(tmp_path):
    assert call("verify", "--input", str(tmp_path / "missing.cat"))[0] == EXIT_PARSE
    bad = tmp_path / "bad.cat"
    bad.write_text("cyclix-category 1\nobject A\n")
    assert call("verify", "--input", str(bad))[0] == EXIT_PARSE
    good = tmp_path / "s2.cat"
    good.write_text(save(fixture("s2")))
    assert call("verify", "--input", str(good)) == call("verify", "--input", "s2")
    degenerate = tmp_path / "deg.cat"
    degenerate.write_text(save(fixture("s2")).replace("pair 1 v 1", "pair 1 v 0").replace("pair v 1 1", "pair v 1 0"))
    assert call("axioms", "--input", str(degenerate))[0] == EXIT_INVARIANT


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        run(["frobnicate"])
    assert e.value.code == EXIT_PARSE
    assert call("hh", "--input", "k", "--max-len", "0")[0] == EXIT_PARSE


@pytest.mark.parametrize("argv", [["ch", "--input", "cp2", "--max-len", "4"], ["cobracket", "--input", "lambda1", "--max-len", "3"]])
def test_deterministic(argv):
    assert call(*argv) == call(*argv)


def test_console_script():
    proc = subprocess.run(
        [sys.executable, "-m", "cyclix.cli", "ch", "--input", "k", "--max-len", "4", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == EXIT_OK
    assert proc.stdout.startswith("degree,dim,reliable,chains")
