import json

import pytest

from umpspan.cli import EXIT_CAP, EXIT_CHECK, EXIT_OK, EXIT_USAGE, main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--n", "2", "--d", "8")
    assert code == EXIT_OK
    assert out.splitlines() == ["n,d,necklaces,bracelets,enumeration_check", "2,8,36,30,pass"]
    code, out, _ = run(capsys, "count", "--n", "2", "--d", "1")
    assert out.splitlines()[1] == "2,1,2,2,pass"
    code, out, _ = run(capsys, "count", "--n", "2", "--d", "8", "--w", "4", "--format", "json")
    assert json.loads(out)["result"]["bracelets"] == 8


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--d", "4")
    assert json.loads(out)["words"] == ["0000", "0001", "0011", "0101", "0111", "1111"]


def test_character_row_and_text(capsys):
    code, out, _ = run(capsys, "character", "--d", "8")
    assert code == EXIT_OK
    assert out.splitlines() == ["d,D_0,D_1,D_2,D_3,D_4,total,ambient", "8,1,1,4,5,7,29,30"]
    code, out, _ = run(capsys, "character", "--d", "8", "--format", "text")
    assert out.strip() == "1,1,4,5,7 | total 29 | ambient 30"
    code, out, _ = run(capsys, "character", "--d", "4", "--format", "text")
    assert out.strip() == "1,1,2 | total 6 | ambient 6"


def test_character_json_has_parameters_mode_timing(capsys):
    code, out, _ = run(capsys, "character", "--d", "8..9", "--format", "json", "--check")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["parameters"]["d"] == [8, 9]
    assert doc["mode"] == "modular"
    assert doc["timing_seconds"] >= 0
    assert [r["total"] for r in doc["rows"]] == [29, 40]
    assert all(r["check"] == "pass" for r in doc["rows"])


def test_character_all_weights(capsys):
    code, out, _ = run(capsys, "character", "--d", "8", "--all-weights")
    assert out.splitlines()[1] == "8,1,1,4,5,7,5,4,1,1,29,30"


def test_ideal(capsys):
    code, out, _ = run(capsys, "ideal", "--d", "8", "--k", "2", "--check")
    assert code == EXIT_OK
    assert out.splitlines()[1] == "8,0,5,10,25,32,42"


def test_verify_ch(capsys):
    code, out, _ = run(capsys, "verify-ch", "--m", "2", "--ell", "2")
    assert code == EXIT_OK
    assert out.startswith("identically zero: yes (symbolic)")
    code, out, _ = run(capsys, "verify-ch", "--preset", "example")
    assert "exponents checked: [0, 1, 2, 3]" in out
    code, out, _ = run(capsys, "verify-ch", "--m", "3", "--ell", "0", "--trials", "10")
    assert out.startswith("identically zero: yes (randomized-numeric)")


def test_substitute_and_certify(capsys):
    code, out, _ = run(capsys, "substitute", "--preset", "example-d8")
    rel = json.loads(out)["relation"]
    assert len(rel["words"]) == 6 and rel["ambient"] == "dihedral"
    code, out, _ = run(capsys, "certify", "--d", "8")
    assert code == EXIT_OK
    assert "nontrivial (dihedral): yes" in out
    assert "dimension 1 of 8 bracelets, spanned: yes" in out
    code, out, _ = run(capsys, "certify", "--preset", "ternary")
    assert code == EXIT_OK and "nontrivial (cyclic): yes" in out


def test_certify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "certify", "--preset", "binary-tail", "--ambient", "dihedral")
    assert code == EXIT_CHECK


def test_conjecture(capsys):
    code, out, _ = run(capsys, "conjecture", "--d", "8..10")
    assert code == EXIT_OK
    rows = out.splitlines()[1:]
    assert rows and all(r.endswith(("MATCH", "OK")) and "MISMATCH" not in r for r in rows)


def test_dump_trace_param(capsys, tmp_path):
    target = tmp_path / "p.csv"
    code, out, _ = run(capsys, "dump-trace-param", "--d", "5", "--format", "csv", "--out", str(target))
    assert code == EXIT_OK and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "bracelet,polynomial" and len(lines) == 1 + 8


def test_deterministic_output(capsys):
    outs = []
    for threads in ("1", "3"):
        code, out, _ = run(capsys, "ideal", "--d", "6..7", "--k", "2", "--format", "json", "--no-timing",
                           "--threads", threads)
        doc = json.loads(out)
        doc.pop("threads")
        outs.append(json.dumps(doc))
    assert outs[0] == outs[1]
    a = run(capsys, "character", "--d", "10")[1]
    b = run(capsys, "character", "--d", "10")[1]
    assert a == b


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("UMPSPAN_THREADS", "2")
    code, out, _ = run(capsys, "count", "--n", "2", "--d", "3", "--format", "json")
    assert json.loads(out)["threads"] == 2
    code, out, _ = run(capsys, "count", "--n", "2", "--d", "3", "--format", "json", "--threads", "1")
    assert json.loads(out)["threads"] == 1
    monkeypatch.setenv("UMPSPAN_THREADS", "zero")
    assert run(capsys, "count", "--n", "2", "--d", "3")[0] == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        ["count", "--n", "2"],
        ["count", "--n", "3", "--d", "4", "--w", "1"],
        ["count", "--n", "2", "--d", "4", "--w", "9"],
        ["character", "--d", "9..8"],
        ["character", "--d", "4", "--m", "3", "--source", "trace-param"],
        ["frobnicate"],
        ["certify", "--d", "9"],
        ["ideal", "--d", "12", "--k", "2", "--check"],
        ["character", "--d", "30", "--check"],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_resource_cap(capsys):
    code, _, err = run(capsys, "character", "--d", "40")
    assert code == EXIT_CAP and "resource cap" in err


def test_parse_range():
    assert parse_range("8..10") == [8, 9, 10]
    assert parse_range("6,8") == [6, 8]
