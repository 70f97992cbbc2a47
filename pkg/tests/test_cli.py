import json
import subprocess
import sys

import pytest

from spinfano.cli import main
from spinfano.suites import STATUSES


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def tsv_rows(text):
    lines = text.strip("\n").split("\n")
    assert lines[0] == "case\tcheck\texpected\tcomputed\tstatus"
    rows = [ln.split("\t") for ln in lines[1:]]
    assert all(len(r) == 5 for r in rows)
    return rows


def test_cases_list(capsys):
    code, out, _ = run(capsys, "cases", "list")
    assert code == 0
    assert "OG3-13:S" in out and out.rstrip().endswith("cases")


def test_cases_list_tsv(capsys):
    code, out, _ = run(capsys, "cases", "list", "--tsv")
    assert code == 0
    assert out.startswith("id\tkind\tspace")


def test_bott_command(capsys):
    code, out, _ = run(capsys, "bott", "3", "9", "w2")
    assert code == 0 and "dim 36" in out
    code, out, _ = run(capsys, "bott", "3", "9", "w2-w3")
    assert code == 0 and "acyclic" in out
    code, out, _ = run(capsys, "bott", "3", "9", "2,2,0,0", "--tsv")
    assert code == 0 and tsv_rows(out)[0][3] == "H^0 = V[2, 2, 0, 0] (dim 36)"


def test_bott_usage_errors(capsys):
    assert run(capsys, "bott", "3", "9", "w1-w2")[0] == 2
    assert run(capsys, "bott", "3", "9", "w9")[0] == 2
    assert run(capsys, "bott", "5", "10", "w5")[0] == 2


def test_degree_and_segre(capsys):
    code, out, _ = run(capsys, "degree", "--n", "4", "--tsv")
    assert code == 0 and tsv_rows(out) == [["OG(4,9)", "degree", "24", "24", "pass"]]
    code, out, _ = run(capsys, "segre-check", "--n", "3", "--seed", "7", "--count", "10", "--tsv")
    assert code == 0 and tsv_rows(out)[0][3] == "10/10"
    assert run(capsys, "segre-check", "--n", "3")[0] == 2


def test_unknown_case_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--suite", "geometry", "--case", "OG9-99:S")
    assert code == 2 and "OG9-99:S" in err


def test_bad_suite_and_missing_command(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys)[0] == 2


def test_random_witness_needs_seed(capsys):
    assert run(capsys, "stabilizer", "--case", "OG3-9:S", "--random-witness")[0] == 2


def test_stabilizer_og3_13(capsys):
    code, out, _ = run(capsys, "stabilizer", "--case", "OG3-13:S", "--tsv")
    rows = {r[1]: r for r in tsv_rows(out)}
    assert rows["witness-kills"][4] == "pass"
    assert rows["ambient-stab"][2:] == ["16", "16", "pass"]


def test_stabilizer_random_witness_is_seeded(capsys):
    a = run(capsys, "stabilizer", "--case", "OG3-9:S", "--random-witness", "--seed", "3", "--tsv")
    b = run(capsys, "stabilizer", "--case", "OG3-9:S", "--random-witness", "--seed", "3", "--tsv")
    assert a == b
    rows = {r[1]: r for r in tsv_rows(a[1])}
    assert rows["witness-kills.random"][4] == "pass"
    assert rows["witness-stab.random"][3] == rows["witness-stab"][3]


def test_verify_tsv_statuses_and_exit(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "stabilizers", "--tsv")
    rows = tsv_rows(out)
    assert {r[4] for r in rows} <= set(STATUSES)
    assert code == (1 if any(r[4] == "fail" for r in rows) else 0)
    disc = {r[0] for r in rows if r[4] == "paper-discrepancy"}
    assert disc == {"OG3-10:S+S-"}
    assert [r[:2] for r in rows] == sorted(r[:2] for r in rows)


def test_verify_passing_subset_exits_zero(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "betti", "--case", "OG3-9:S", "--case", "OG3-8:S+", "--tsv")
    assert code == 0
    assert {r[4] for r in tsv_rows(out)} == {"pass"}


def test_verify_failing_subset_exits_one(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "geometry", "--case", "OG3-9:S", "--tsv")
    assert code == 1
    assert tsv_rows(out)[0][4] == "fail"


def test_unknown_expected_is_not_fatal(capsys):
    code, out, _ = run(capsys, "betti", "--case", "OG3-12:S+", "--tsv")
    rows = {r[1]: r for r in tsv_rows(out)}
    assert rows["betti.unknown"][4] == "unknown-expected"
    assert code == 0


def test_json_report(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "betti", "--case", "OG3-9:S", "--json")
    data = json.loads(out)
    assert data["suite"] == "betti" and data["exit_status"] == code == 0
    assert data["summary"]["pass"] == len(data["checks"])
    assert set(data["checks"][0]) >= {"case", "check", "expected", "computed", "status", "source"}


def test_verbose_shows_provenance(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "geometry", "--case", "OG3-13:S", "--verbose")
    assert "source:" in out


def test_reports_are_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "rigidity", "--case", "OG3-9:S", "--case", "OG3-11:S", "--tsv")
    b = run(capsys, "verify", "--suite", "rigidity", "--case", "OG3-11:S", "--case", "OG3-9:S", "--tsv")
    assert a == b


def test_catalog_override(capsys, tmp_path):
    p = tmp_path / "c.txt"
    p.write_text("[X]\nkind = identification\nspace = OG(2,7)\nbundle = S\n"
                 "expect.d = 5 | test\nexpect.betti = 1 1 1 1 1 1 | test\n")
    code, out, _ = run(capsys, "verify", "--suite", "betti", "--catalog", str(p), "--tsv")
    assert code == 0 and {r[0] for r in tsv_rows(out)} == {"X"}
    bad = tmp_path / "bad.txt"
    bad.write_text("[X]\nkind = nonsense\n")
    assert run(capsys, "cases", "list", "--catalog", str(bad))[0] == 2
    assert run(capsys, "cases", "list", "--catalog", str(tmp_path / "missing.txt"))[0] == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "spinfano.cli", "degree", "--n", "3"], capture_output=True, text=True)
    assert r.returncode == 0 and "6" in r.stdout
