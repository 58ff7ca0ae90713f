import json
import subprocess
import sys

import pytest

from psi_ortho.cli import angle, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_coeffs_carlitz_row3(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "1", "--b", "0", "--c", "1", "--n", "3")
    assert code == 0
    assert json.loads(out)["rows"][3] == ["0", "-2", "0", "1"]


def test_coeffs_row0(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "1", "--b", "0", "--c", "1", "--n", "0")
    assert code == 0 and json.loads(out)["rows"] == [["1"]]


def test_coeffs_methods_agree(capsys):
    args = ["coeffs", "--a", "2", "--b", "5/2", "--c", "2", "--n", "8"]
    _, rec, _ = run(capsys, *args)
    _, gen, _ = run(capsys, *args, "--method", "genfunc")
    assert json.loads(rec)["rows"] == json.loads(gen)["rows"]


def test_coeffs_csv(capsys):
    code, out, _ = run(capsys, "coeffs", "--a", "1/2", "--b", "0", "--c", "1", "--n", "3",
                       "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "n,c0,c1,c2,c3"
    assert lines[4] == "3,0,-1,0,1/8"


@pytest.mark.parametrize("argv,needle", [
    (["--a", "0", "--b", "1", "--c", "1"], "a != 0"),
    (["--a", "1", "--b", "1", "--c", "0"], "c > 0"),
])
def test_domain_errors_exit_2(capsys, argv, needle):
    code, out, err = run(capsys, "coeffs", *argv)
    assert code == 2 and out == "" and needle in err


def test_bad_rational_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["coeffs", "--a", "x", "--b", "0", "--c", "1"])
    assert info.value.code == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--a", "1", "--b", "1", "--c", "1")
    d = json.loads(out)
    assert code == 0 and d["case"] == "OscillatoryRoots" and d["family"] == "mp0"
    assert d["phi"] == pytest.approx(1.0471975511965976)
    _, out, _ = run(capsys, "classify", "--a", "1", "--b", "5/2", "--c", "1")
    assert json.loads(out)["roots"] == ["1/2", "2"]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--a", "1", "--b", "0", "--c", "1", "--n", "4", "--x", "1")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["values"][0] for r in rows] == ["1", "1", "1", "-1", "-7"]


def test_gram_laguerre_m1(capsys):
    code, out, _ = run(capsys, "gram", "--family", "laguerre_m1", "--ip", "lag_weight", "--N", "3")
    d = json.loads(out)
    assert code == 0
    assert [d["entries"][i][i] for i in range(3)] == ["1", "1/2", "1/3"]
    assert d["entries"][0][1] == "0" and d["max_deviation"] == "0"


def test_gram_mp_sobolev(capsys):
    code, out, _ = run(capsys, "gram", "--family", "mp0", "--phi", "pi/2", "--ip", "mp_sobolev",
                       "--N", "4")
    d = json.loads(out)
    assert code == 0 and d["status"] == "pass" and d["max_deviation"] < 1e-6


def test_gram_meixner_sobolev(capsys):
    code, out, _ = run(capsys, "gram", "--family", "meixner0", "--gamma", "1/2", "--ip",
                       "meix_sobolev", "--N", "2", "--start", "1")
    d = json.loads(out)
    assert code == 0 and [d["entries"][i][i] for i in range(2)] == ["4", "32"]


def test_gram_psi(capsys):
    code, out, err = run(capsys, "gram", "--family", "psi", "--a", "2", "--b", "1", "--c", "2",
                         "--N", "4")
    assert code == 0 and "pass" in err
    assert json.loads(out)["inner_product"].startswith("mp_weight")


def test_gram_incompatible_exit_2(capsys):
    code, _, err = run(capsys, "gram", "--family", "meixner0", "--gamma", "1/2", "--ip",
                       "mp_weight")
    assert code == 2 and "incompatible" in err
    code, _, err = run(capsys, "gram", "--family", "mp0", "--ip", "mp_weight")
    assert code == 2 and "--phi" in err


def test_gram_tolerance_env_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("PSI_ORTHO_TOL", "1e-15")
    code, out, _ = run(capsys, "gram", "--family", "mp0", "--phi", "pi/3", "--ip", "mp_weight",
                       "--N", "5")
    assert code == 3 and json.loads(out)["status"] == "fail"


def test_gram_csv(capsys):
    code, out, _ = run(capsys, "gram", "--family", "laguerre_m1", "--ip", "lag_sobolev", "--N", "2",
                       "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["n,m,value,predicted", "0,0,1,1", "0,1,0,0", "1,0,0,0", "1,1,1,1"]


@pytest.mark.parametrize("suite", ["genfunc", "errata", "limits"])
def test_verify_suites(capsys, suite):
    code, out, err = run(capsys, "verify", "--suite", suite)
    d = json.loads(out)
    assert code == 0 and d["status"] == "pass" and f"verify {suite}: pass" in err


def test_verify_errata_entries(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "errata")
    errata = json.loads(out)["errata"]
    assert len(errata) == 4 and all(e["confirmed"] for e in errata)


def test_verify_failure_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("PSI_ORTHO_TOL", "1e-300")
    code, _, err = run(capsys, "verify", "--suite", "orthogonality")
    assert code == 3 and "FAIL" in err


def test_output_is_byte_deterministic(capsys):
    argv = ["gram", "--family", "mp0", "--phi", "pi/3", "--ip", "mp_weight", "--N", "3"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_angle_parser():
    import math
    assert angle("pi/2") == math.pi / 2
    assert angle("2pi/3") == pytest.approx(2 * math.pi / 3)
    assert angle("2*pi/3") == pytest.approx(2 * math.pi / 3)
    assert angle("1.25") == 1.25


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "psi_ortho", "coeffs", "--a", "1", "--b", "0",
                           "--c", "1", "--n", "2", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "2,0,0,1"
