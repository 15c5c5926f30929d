import io
import json
import subprocess
import sys

import pytest

from acrkit.cli import run

from conftest import network_path


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def strip_timings(obj):
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k not in ("timings_ms", "elapsed_ms")}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


def test_gb_pretty_lex():
    code, out, _ = call("gb", network_path("zd_four_species"), "--order", "lex:B,C,D,A", "--pretty")
    assert code == 0
    assert out.splitlines() == ["A^2*D - 4*A*D + 3*D", "A^2*C - 3*A*C + 2*C", "A*C*D - C*D", "B - C"]


def test_acr_exit_codes():
    assert call("acr", network_path("shinar_feinberg"))[0] == 0
    assert call("acr", network_path("phospho"))[0] == 2


def test_acr_pretty_lists_verdicts():
    code, out, _ = call("acr", network_path("zd_four_species"), "--pretty")
    assert code == 0
    assert "A: ZERO_DIVISOR_ACR value 1" in out
    assert out.splitlines()[-1] == "candidates: (A, 1), (A, 2), (A, 3)"


def test_json_manifest_and_determinism():
    a = call("acr", network_path("joshi_nguyen"))
    b = call("acr", network_path("joshi_nguyen"))
    ja, jb = json.loads(a[1]), json.loads(b[1])
    m = ja["manifest"]
    assert {"input_sha256", "seed", "version", "verb", "timings_ms"} <= set(m)
    assert m["verb"] == "acr" and len(m["input_sha256"]) == 64
    assert strip_timings(ja) == strip_timings(jb)
    # key order and layout are fixed, so the text matches once timings are dropped
    dump = lambda j: json.dumps(strip_timings(j), sort_keys=True, indent=1)
    assert dump(ja) == dump(jb)


def test_numeric_verbs_reproducible():
    args = ("witness", network_path("gen_shinar_feinberg"), "--dim", "1", "--seed", "3")
    a, b = call(*args), call(*args)
    assert a[0] == 0
    assert strip_timings(json.loads(a[1])) == strip_timings(json.loads(b[1]))


def test_saturate_and_eliminate():
    code, out, _ = call("saturate", network_path("shinar_feinberg"))
    assert code == 0 and "Yp - 2" in json.loads(out)["basis"]
    code, out, _ = call("eliminate", network_path("elim_quadratic"), "--keep", "A")
    assert code == 0 and json.loads(out)["generators"] == ["A^2 - 4*A + 3"]


def test_odes_and_parse():
    code, out, _ = call("odes", network_path("gen_shinar_feinberg"), "--pretty")
    assert code == 0
    # variables print in species order (B before A)
    assert out.splitlines() == ["dB/dt = B*A^2 - B", "dA/dt = -B*A^2 + B"]
    code, out, _ = call("parse", network_path("gen_shinar_feinberg"))
    assert json.loads(out)["network"]["species"] == ["B", "A"]


def test_candidates_and_cacr():
    code, out, _ = call("candidates", network_path("elim_quadratic"))
    assert code == 0
    vals = {(c["species"], c["value"]["num"]) for c in json.loads(out)["candidates"]}
    assert vals == {("A", "1"), ("A", "3")}
    code, out, _ = call("cacr", network_path("cycle_cacr"))
    d = json.loads(out)["cacr"]
    assert d["A"]["status"] == "CACR" and d["A"]["value"] == {"num": "2", "den": "1"}


def test_jideal_component():
    comp = "A^2-2*A+B^2-4*B+5; A*z_A^2-1; B*z_B^2-1"
    code, out, _ = call("jideal", network_path("acr_not_zero_divisor"), "--component", comp)
    assert code == 0
    c = json.loads(out)["components"][0]
    assert c["forced_values"] == {"A": "1", "B": "2"}
    assert len(c["minors"]) == 4


def test_preclude_needs_box():
    code, _, err = call("preclude", network_path("phospho"))
    assert code == 1 and "--box" in err


def test_sample_small():
    code, out, _ = call("sample", network_path("gen_shinar_feinberg"), "--box", "0.5,1.5", "--max-rounds", "3")
    assert code == 0
    pts = json.loads(out)["points"]
    assert pts and all(abs(p["coords"][1] - 1) < 1e-8 for p in pts)


@pytest.mark.parametrize("argv", [
    ("acr", "/nonexistent/net.crn"),
    ("eliminate", "NET", "--keep", "Q"),
    ("gb", "NET", "--order", "lex:Q"),
    ("sample", "NET", "--box", "1,2;3"),
    ("nosuchverb", "NET"),
])
def test_errors_exit_1(argv):
    argv = [a if a != "NET" else network_path("shinar_feinberg") for a in argv]
    code, _, _ = call(*argv)
    assert code == 1


def test_syntax_error_reports_position(tmp_path):
    f = tmp_path / "bad.crn"
    f.write_text("A -> B ; 1\nA -> ; 1\n")
    code, _, err = call("acr", str(f))
    assert code == 1
    assert "line 2, column 5" in err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "acrkit.cli", "gb", network_path("gen_shinar_feinberg"), "--pretty"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip()
