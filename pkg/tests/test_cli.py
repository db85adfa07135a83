import json
import subprocess
import sys

CLI = [sys.executable, "-m", "quadplanes.cli"]


def run(*args):
    return subprocess.run(CLI + list(args), capture_output=True, text=True)


def test_verify_pass_and_digest_stability(tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = ("verify", "--field", "2", "--kind", "extension",
            "--checks", "algebra,plane,vaxioms")
    r1 = run(*args, "--out", str(out1))
    r2 = run(*args, "--out", str(out2))
    assert r1.returncode == 0 and r2.returncode == 0
    rep1, rep2 = json.loads(out1.read_text()), json.loads(out2.read_text())
    assert rep1["holds"] and rep1["digest"] == rep2["digest"]
    rep1.pop("timings"), rep2.pop("timings")
    assert rep1 == rep2
    for res in rep1["checks"].values():
        assert res["anchor"].startswith("check:")


def test_verify_text_format():
    r = run("verify", "--field", "2", "--kind", "split",
            "--checks", "algebra,plane", "--format", "text")
    assert r.returncode == 0
    assert "PASS" in r.stdout and "digest" in r.stdout


def test_verify_failing_check_exits_1():
    # the dual plane over F_2 genuinely contains quadric configurations in
    # 3-spaces outside the line family, so this check reports a failure
    r = run("verify", "--field", "2", "--kind", "dual",
            "--checks", "uniqueness")
    assert r.returncode == 1


def test_config_errors_exit_2():
    cases = [
        ("verify", "--field", "4", "--kind", "dual", "--checks", "algebra"),
        ("verify", "--field", "2", "--kind", "dual", "--checks", "saxioms"),
        ("verify", "--field", "2", "--kind", "split", "--checks", "haxioms"),
        ("verify", "--field", "2", "--kind", "nonsense", "--checks", "algebra"),
        ("verify", "--field", "2", "--kind", "dual", "--checks", "bogus"),
        ("verify", "--field", "5", "--kind", "dual", "--checks", "uniqueness"),
        ("verify", "--field", "2", "--kind", "dual", "--t", "1",
         "--checks", "algebra"),  # kind and t/n are mutually exclusive
        ("verify", "--field", "2", "--checks", "algebra"),  # neither given
        ("verify", "--field", "101", "--kind", "dual", "--checks", "algebra"),
    ]
    for args in cases:
        r = run(*args)
        assert r.returncode == 2, (args, r.stderr)
        assert r.stderr.strip()


def test_verify_explicit_params_and_modulus():
    r = run("verify", "--field", "2^2", "--modulus", "1,1,1",
            "--t", "0", "--n", "0", "--checks", "algebra,plane")
    assert r.returncode == 0


def test_export_dual_f2(tmp_path):
    out = tmp_path / "exp"
    r = run("export", "--field", "2", "--kind", "dual",
            "--construction", "matrices,parametrization", "--out", str(out))
    assert r.returncode == 0
    plane = json.loads((out / "plane.json").read_text())
    assert len(plane["points"]) == 28
    vset = json.loads((out / "vset_matrices.json").read_text())
    assert len(vset["X"]) == 28 and vset["ambient_dim"] == 8
    par = json.loads((out / "vset_parametrization.json").read_text())
    assert par["span_dim"] == 2 and par["squares_plane"]
    rows = (out / "incidence.txt").read_text().split()
    assert len(rows) == 28 and all(len(r) == 28 for r in rows)
    assert all(r.count("1") == 6 for r in rows)
    cols = ["".join(r[i] for r in rows) for i in range(28)]
    assert all(c.count("1") == 6 for c in cols)


def test_export_extension_f4(tmp_path):
    out = tmp_path / "exp"
    r = run("export", "--field", "2", "--kind", "extension",
            "--construction", "matrices", "--out", str(out))
    assert r.returncode == 0
    rows = (out / "incidence.txt").read_text().split()
    assert len(rows) == 21 and all(r.count("1") == 5 for r in rows)
