import json
import subprocess
import sys

import pytest

from operad_forge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_canon_mirror(capsys, files):
    a = files("a.sexp", "(_ (_ #2 #1) #3)\n")
    b = files("b.sexp", "(_ #3 (_ #1 #2))\n")
    assert run(capsys, "canon", a)[1] == run(capsys, "canon", b)[1]


def test_parse_round_trip(capsys, files):
    f = files("w.sexp", "(fr g=1 m=2 (ann 1/2 @1/2 #2) #1)")
    code, out, _ = run(capsys, "parse", f, "--instance", "fr", "--lengths")
    assert code == 0
    again = files("again.sexp", out)
    assert run(capsys, "parse", again, "--instance", "fr", "--lengths")[1] == out


def test_pushout_eq(capsys, files):
    x = files("nN-a-nN.sexp", "(nod (ann 1/2 (nod #1)))")
    y = files("nN.sexp", "(nod #1)")
    z = files("a.sexp", "(ann 1/3 #1)")
    assert run(capsys, "pushout", "eq", x, y)[0] == 0
    assert run(capsys, "pushout", "eq", x, z)[0] == 1
    assert run(capsys, "pushout", "eq", x, z, "--budget", "1")[0] == 2


def test_pushout_nf_and_confluence(capsys, files):
    x = files("x.sexp", "(nod (ann 1/2 (nod #1)))")
    code, out, _ = run(capsys, "pushout", "nf", x)
    assert code == 0 and out == "(nod #1)\n"
    code, out, _ = run(capsys, "pushout", "confluence", x, "--trials", "20", "--seed", "4", "--format", "json")
    assert code == 0 and json.loads(out)["outcomes"] == {"(P:nod #1)": 20}


def test_usage_errors(capsys, files):
    bad = files("bad.sexp", "(_ #1\n  (_ #x))")
    code, _, err = run(capsys, "canon", bad)
    assert code == 64 and "bad.sexp:2:" in err
    assert run(capsys, "canon", bad, "--nope")[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "verify", "hd", "--grid", "a,b")[0] == 64
    assert run(capsys, "canon", files("v.sexp", "(fr g=1 m=2 #1)"), "--instance", "fr")[0] == 64


def test_enum_and_compose(capsys, files):
    code, out, _ = run(capsys, "enum-trees", "--arity", "2", "--max-vertices", "2", "--format", "json")
    assert code == 0 and json.loads(out)["count"] == 5 and "\n" not in out.rstrip("\n")
    code, out, _ = run(capsys, "enum-graphs", "--arity", "1", "--max-genus", "1", "--max-vertices", "2", "--format", "json", "--stream")
    assert code == 0 and len(out.splitlines()) == 4
    u = files("u.sexp", "(_ #1 #2)")
    assert run(capsys, "compose", u, "2", u)[1] == "(_ #1 (_ #2 #3))\n"
    assert run(capsys, "compose", u, "3", u)[0] == 64


def test_w_commands(capsys, files):
    f = files("w.sexp", "(fr g=1 m=2 (fr g=1 m=1 @0 #1) #2)")
    assert run(capsys, "w", "contract", f)[1] == "(fr g=2 m=2 #1 #2)\n"
    assert run(capsys, "w", "hd", f)[1] == "(fr g=2 m=2 #1 #2)\n"
    assert run(capsys, "w", "counit", f)[1] == "fr g=2 m=2\n"


def test_verify_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, text, _ = run(capsys, "verify", "fr-cap", "--max-arity", "2", "--max-genus", "1", "--out", str(out))
    assert code == 0
    assert out.read_text() == text
    doc = json.loads(text)
    assert doc["check"] == "fr-cap" and doc["status"] == "PASS"


def test_console_script_is_byte_deterministic(tmp_path):
    f = tmp_path / "x.sexp"
    f.write_text("(nod (ann 1/2 (fr g=1 m=1 (nod #1))))")
    cmd = [sys.executable, "-m", "operad_forge.cli", "pushout", "confluence", str(f), "--trials", "30", "--seed", "9"]
    a = subprocess.run(cmd, capture_output=True)
    b = subprocess.run(cmd, capture_output=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
