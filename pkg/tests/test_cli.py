import json
import subprocess
import sys

import pytest

from cycpres.cli import main, parse_corpus

W41 = "x1^-1 x0^-1 x2 x0 x1 x2^-2"
W43 = "x2^-1 x0^-1 x1 x0 x2 x1^-2"
HIGMAN = "x0^-1 x1 x0 x1^-2"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", W41)
    assert code == 0
    assert "t_min       1" in out
    assert "({0,2}, {1,2})  FormMatch" in out


def test_analyze_explain_and_json(capsys):
    code, out, _ = run(capsys, "analyze", HIGMAN, "--explain")
    assert code == 0 and "matches target" in out
    code, out, _ = run(capsys, "--format", "json", "analyze", "x3 x4 x3 x5")
    data = json.loads(out)
    assert data["offset"] == 3 and data["k"] == 2


def test_certify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", HIGMAN)
    assert code == 2
    assert json.loads(out)["theorem"] is None

    path = tmp_path / "c.json"
    code, _, _ = run(capsys, "certify", W41, "--assume-nonexceptional", "0,1|1,2",
                     "--source", "hand computation", "-o", str(path))
    assert code == 0
    cert = json.loads(path.read_text())
    assert (cert["theorem"], cert["n_min"]) == ("Cor1_4", 6)
    assert cert["assumptions"][0]["source"] == "hand computation"

    code, out, _ = run(capsys, "certify", "--check", str(path))
    assert code == 0 and "byte for byte" in out

    path.write_text(path.read_text().replace('"n_min": 6', '"n_min": 5', 1))
    code, _, err = run(capsys, "certify", "--check", str(path))
    assert code == 1 and "does not reproduce" in err


def test_certify_triple(capsys):
    code, out, _ = run(capsys, "certify", W43, "--assume-triple-trivial")
    assert code == 0
    assert json.loads(out)["theorem"] == "Thm1_1_manual"


@pytest.mark.parametrize("argv", [
    ["certify", "x0 y1"],
    ["certify", "1"],
    ["certify", W41, "--assume-nonexceptional", "0|2"],
    ["certify", W41, "--assume-nonexceptional", "nonsense"],
    ["analyze"],
    ["frobnicate"],
    ["oracle", HIGMAN],
])
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 1


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", HIGMAN, "--n", "3", "--max-cosets", "10000")
    assert code == 0
    assert "Completed(1)" in out and "abelian order      1" in out


def test_oracle_flags_contradiction(capsys, tmp_path):
    # a certificate claiming infiniteness for n >= 3 contradicts the Higman enumeration
    cert = {
        "word": HIGMAN, "k": 1, "theorem": "Cor1_4", "n_min": 3, "checks": [],
        "assumptions": [], "notes": [], "conclusion": {},
    }
    path = tmp_path / "bogus.json"
    path.write_text(json.dumps(cert))
    code, out, _ = run(capsys, "oracle", HIGMAN, "--n", "3", "--certificate", str(path))
    assert code == 3 and "CONTRADICTION" in out


def test_parse_corpus():
    text = "# header\n\nw = x0 x1 ; n = 4\nw = x0 x2 ; assume-nonexceptional = 0,1|1,2 ; assume-triple-trivial\n"
    entries, errors = parse_corpus(text)
    assert errors == []
    assert [e.line for e in entries] == [3, 4]
    assert entries[1].assume_pairs == ["0,1|1,2"] and entries[1].assume_triple


@pytest.mark.parametrize("line,why", [
    ("w = x0 y", "expected term"),
    ("n = 4", "missing"),
    ("w = x0 x1 ; n = four", "invalid literal"),
    ("w = x0 x1 ; colour = red", "unknown field"),
    ("w = 1", "empty"),
    ("w = x0 x1 x2 ; assume-nonexceptional = 0|2", "not among"),
])
def test_corpus_errors_have_line_numbers(line, why):
    _, errors = parse_corpus("# ok\n" + line + "\n")
    assert len(errors) == 1
    assert errors[0][0] == 2 and why in errors[0][1]


def test_corpus_run(capsys, tmp_path):
    path = tmp_path / "corpus.txt"
    path.write_text(
        f"w = {HIGMAN} ; n = 3\n"
        f"w = {W41} ; n = 6 ; assume-nonexceptional = 0,1|1,2\n"
        "w = x0 x2 x0 x1 x0 x2\n"
    )
    code, out, _ = run(capsys, "--max-cosets", "20000", "--format", "json", "corpus", str(path), "--jobs", "1")
    assert code == 0
    data = json.loads(out)
    assert [r["line"] for r in data["rows"]] == [1, 2, 3]
    assert [r["theorem"] for r in data["rows"]] == [None, "Cor1_4", "Cor1_4"]
    assert data["rows"][0]["enumeration"] == "Completed(1)"
    assert data["summary"]["contradictions"] == 0


def test_corpus_malformed(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("w = x0 x1\nw = x0 x1 ;; n\n")
    code, _, err = run(capsys, "corpus", str(path))
    assert code == 1 and ":2:" in err


def test_crosscheck(capsys):
    code, out, _ = run(capsys, "--seed", "3", "crosscheck", "--count", "10", "--max-len", "6")
    assert code == 0 and "disagreements 0" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cycpres", "certify", HIGMAN],
                          capture_output=True, text=True)
    assert proc.returncode == 2
