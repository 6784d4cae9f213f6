import json
import math
import subprocess
import sys

from spingeo import cli


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "spingeo.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def run_inproc(*args, capsys=None):
    return cli.main(list(args))


def test_chessboard_md_matches_golden(capsys):
    import importlib.resources as res
    assert cli.main(["chessboard", "table", "--format", "md"]) == 0
    out = capsys.readouterr().out
    assert out == (res.files("spingeo.golden") / "chessboard.md").read_text()


def test_tenfold_csv_shape(capsys):
    assert cli.main(["tenfold", "table", "--format", "csv"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert len(rows) == 11
    assert rows[0].split(",")[:4] == ["label", "T", "C", "S"]
    assert len(rows[1].split(",")) == 12


def test_complex_table_json(capsys):
    assert cli.main(["chessboard", "complex", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["rows"]) == 2
    assert data["rows"][0]["cells"][1]["double"] is True


def test_haldane_chern_cases(capsys):
    assert cli.main(["haldane", "chern", "--t1", "1", "--t2", "0.1",
                     "--phi", "1.5708", "--M", "0", "--grid", "24"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == 1 and data["method"] == "fhs_link"
    assert cli.main(["haldane", "chern", "--M", "100", "--t2", "0.1",
                     "--phi", "1.5708"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == 0


def test_kanemele_z2(capsys):
    assert cli.main(["kanemele", "z2", "--lso", "0.1", "--M", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == -1
    assert cli.main(["kanemele", "z2", "--lso", "0.05", "--M", "2",
                     "--method", "both"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["agree"] and data["spin_chern"]["value"] == 1
    assert cli.main(["kanemele", "chern", "--lso", "0.1", "--M", "0",
                     "--sector", "down"]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == -1


def test_gapless_exit_code():
    m = 3 * math.sqrt(3) * 0.1 * math.sin(0.5)
    code = cli.main(["haldane", "chern", "--t2", "0.1", "--phi", "0.5",
                     "--M", str(m)])
    assert code == cli.EXIT_GAPLESS


def test_bad_flags_exit_64():
    code, out, err = run_cli("haldane", "chern", "--bogus", "1")
    assert code == 64
    code, out, err = run_cli("nonsense")
    assert code == 64


def test_sweep_csv_columns(capsys):
    assert cli.main(["haldane", "sweep", "--points", "5", "--grid", "12"]) == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[0] == "phi,M_over_t2,gap_min,chern,phase_label"
    assert len(rows) == 1 + 5 * 5
    labels = {r.split(",")[-1] for r in rows[1:]}
    assert labels <= {"trivial", "chern(+1)", "chern(-1)", "gapless", "excluded"}


def test_solve_space_json(capsys):
    assert cli.main(["solve-space", "cky", "--dim", "3", "--p", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dimension"] == 10
    assert cli.main(["solve-space", "twistor", "--dim", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["dimension"] == 4


def test_verify_exit_codes(capsys):
    assert cli.main(["verify", "algebra"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pass"] and not data["failures"]


def test_verify_negative_control():
    """A broken Hodge sign must fail the suite naming the ** law."""
    from spingeo import verify

    def bad_hodge(m):
        out = m.hodge()
        flipped = sum((out.grade(p).scale(-1.0 if p % 2 else 1.0)
                       for p in range(m.sig.dim + 1)),
                      start=type(out).zero(m.sig))
        return flipped

    checks = verify.algebra_suite(hodge_fn=bad_hodge)
    failures = [c["name"] for c in checks if not c["pass"]]
    assert any("**" in name for name in failures)


def test_determinism(capsys):
    outs = []
    for _ in range(2):
        cli.main(["haldane", "sweep", "--points", "3", "--grid", "12",
                  "--format", "csv"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    outs = []
    for _ in range(2):
        cli.main(["verify", "algebra", "--seed", "7"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "table.md"
    assert cli.main(["tenfold", "table", "--format", "md", "--out", str(path)]) == 0
    assert capsys.readouterr().out == ""
    assert path.read_text().startswith("| label |")


def test_json_float_format(capsys):
    cli.main(["haldane", "chern", "--t2", "0.1", "--phi", "0.7", "--M", "0.05"])
    out = capsys.readouterr().out
    gap_line = next(l for l in out.splitlines() if "gap_min" in l)
    digits = gap_line.split(":")[1].strip().rstrip(",")
    assert len(digits.replace(".", "").replace("-", "").lstrip("0")) >= 10


def test_haldane_dvector_method(capsys):
    assert cli.main(["haldane", "chern", "--t2", "0.1", "--phi", "-1.5708",
                     "--M", "0", "--method", "dvector"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == -1 and data["method"] == "dvector"


def test_haldane_phase_cli(capsys):
    assert cli.main(["haldane", "phase", "--t2", "0.1", "--phi", "1.5708",
                     "--M", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["phase"] == "chern(+1)"


def test_verify_all_emits_valid_json(capsys):
    assert cli.main(["verify", "all", "--seed", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pass"] and len(data["checks"]) > 60


def test_verify_failure_names_identity(capsys):
    code = cli.main(["verify", "algebra", "--tol-scale", "1e-30"])
    assert code == cli.EXIT_VERIFY_FAIL
    data = json.loads(capsys.readouterr().out)
    assert data["failures"] and not data["pass"]
