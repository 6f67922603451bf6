import itertools
import json
import subprocess
import sys

import pytest

from semimatroids.cli import main
from semimatroids.identities import IDENTITIES
from semimatroids.ingest import to_explicit
from semimatroids.corpus import plt
from semimatroids.invariants import INVARIANTS

PLT_ARRANGEMENT = {"dimension": 2, "hyperplanes": [
    {"label": "a", "normal": [1, 0], "offset": 0},
    {"label": "b", "normal": [{"num": 1, "den": 1}, 0], "offset": 1},
    {"label": "c", "normal": [0, 1], "offset": 0},
]}


@pytest.fixture
def plt_file(write_doc):
    return write_doc(to_explicit(plt()), "plt.json")


@pytest.fixture
def broken_file(write_doc):
    doc = to_explicit(plt())
    doc["rank"] = [[k, 0 if k == ["a"] else r] for k, r in doc["rank"]]
    return write_doc(doc, "broken.json")


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_invariant_tutte_all_routes(capsys, plt_file):
    code, out = run(capsys, "invariant", plt_file, "--poly", "tutte", "--route", "all")
    assert (code, out) == (0, "l^2 + l\n")


def test_verify_all(capsys, plt_file):
    code, out = run(capsys, "verify", plt_file, "--all")
    assert code == 0
    assert f"{len(IDENTITIES)}/{len(IDENTITIES)} identities pass" in out
    assert "FAIL" not in out


def test_verify_single_identity(capsys, plt_file):
    code, out = run(capsys, "verify", plt_file, "--identity", "rg-semi-cyclic", "--verbose")
    assert code == 0 and "PASS rg-semi-cyclic" in out and "T={}" in out


def test_check_broken(capsys, broken_file):
    code, out = run(capsys, "check", broken_file)
    assert code == 1
    assert "SR3" in out and "INVALID" in out


def test_check_machine_format(capsys, broken_file, plt_file):
    code, out = run(capsys, "check", plt_file, broken_file, "--format", "machine")
    assert code == 1
    docs = [json.loads(line) for line in out.splitlines()]
    assert docs[0]["valid"] is True and docs[1]["valid"] is False
    assert any(v["axiom"] == "SR3" for v in docs[1]["violations"])


def test_other_commands_fail_on_broken_input(capsys, broken_file):
    code, out = run(capsys, "invariant", broken_file, "--poly", "tutte")
    assert code == 1 and "error" in out


def test_order_never_changes_invariants(capsys, plt_file):
    for poly in INVARIANTS:
        outputs = set()
        for order in itertools.permutations("abc"):
            code, out = run(capsys, "invariant", plt_file, "--poly", poly, "--route", "all",
                            "--order", ",".join(order))
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1, poly


def test_activities(capsys, plt_file):
    code, out = run(capsys, "activities", plt_file)
    assert code == 0
    assert "B={a,c} IA={a,c} EA={}" in out
    assert "B={b,c} IA={c} EA={}" in out
    assert "4 + 2 = 6" in out
    code, out = run(capsys, "activities", plt_file, "--order", "c,b,a")
    assert "order: c < b < a" in out


def test_random_and_emit(capsys):
    code, out1 = run(capsys, "random", "--seed", "1", "--n", "5", "--d", "3", "--bound", "3", "--emit")
    code2, out2 = run(capsys, "random", "--seed", "1", "--n", "5", "--d", "3", "--bound", "3", "--emit")
    assert code == code2 == 0 and out1 == out2
    doc = json.loads(out1)
    assert doc["ground"] == ["h1", "h2", "h3", "h4", "h5"]


def test_from_arrangement_emit(capsys, write_doc):
    path = write_doc(PLT_ARRANGEMENT, "arr.json")
    code, out = run(capsys, "from-arrangement", path, "--emit")
    assert code == 0 and json.loads(out) == to_explicit(plt())


def test_jobs_keeps_input_order(capsys, plt_file, broken_file, write_doc):
    arr = write_doc(PLT_ARRANGEMENT, "arr.json")
    files = [broken_file, plt_file, arr, plt_file]
    code1, serial = run(capsys, "check", *files)
    code2, parallel = run(capsys, "check", *files, "--jobs", "3")
    assert code1 == code2 == 1 and serial == parallel


@pytest.mark.parametrize("argv", [
    ["bogus"], ["invariant", "x.json"], ["invariant", "x.json", "--poly", "nope"],
    ["check", "x.json", "--format", "xml"], ["verify", "x.json", "--identity", "nope"], [],
])
def test_usage_errors_exit_2(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_missing_file_exit_1(capsys, tmp_path):
    code, out = run(capsys, "check", str(tmp_path / "nope.json"))
    assert code == 1


def test_module_entry_point(plt_file):
    proc = subprocess.run([sys.executable, "-m", "semimatroids", "invariant", plt_file, "--poly", "characteristic"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "l^2 - 3*l + 2\n"
