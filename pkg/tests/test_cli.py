import io
import subprocess
import sys


from mixbound.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def table(text):
    lines = text.strip().splitlines()
    head = lines[0].split(",")
    return [dict(zip(head, line.split(","))) for line in lines[1:]]


def test_analyze_pure_birth_golden():
    code, text = run("analyze", "--example", "pure-birth", "--n", "4", "--beta", "0.5")
    assert code == 0
    assert text == (
        "N: 4\n"
        "pi: 0,0,0,1\n"
        "pi_min: 0\n"
        "reversible: true\n"
        "lazy: true\n"
        "eigenvalues: 0.5,0.5,0.5,1\n"
        "real_spectrum: true\n"
        "beta_star: 0.5\n"
        "gap: 0.5\n"
        "t_rel: 2\n"
        "non_ergodic: false\n"
    )


def test_analyze_hypercube_gap():
    _, text = run("analyze", "--example", "hypercube", "--n", "3")
    assert "gap: 0.333333333333\n" in text


def test_analyze_bad_row_sum(tmp_path, capsys):
    f = tmp_path / "bad.csv"
    f.write_text("0.5,0.6\n0.5,0.5\n")
    code, _ = run("analyze", str(f))
    assert code == 2
    assert "RowSumViolation" in capsys.readouterr().err


def test_parse_error_reports_position(tmp_path, capsys):
    f = tmp_path / "bad.csv"
    f.write_text("0.5,0.5\n0.5,x\n")
    assert run("analyze", str(f))[0] == 2
    assert "line 2, column 5" in capsys.readouterr().err


def test_missing_input(capsys):
    assert run("analyze")[0] == 2


def test_bounds_pure_birth():
    code, text = run("bounds", "--example", "pure-birth", "--n", "10", "--beta", "0.5", "--epsilon", "0.25")
    assert code == 0
    rows = {r["name"]: r for r in table(text)}
    assert list(table(text)[0]) == ["name", "epsilon", "value", "applicable", "exact_tmix", "ratio"]
    assert rows["l2_upper"]["applicable"] == "false"
    assert rows["rev_sharpen"]["applicable"] == "true"
    assert float(rows["rev_sharpen"]["value"]) < float("inf")
    assert rows["sst_tail_crossing"]["exact_tmix"] == "21"


def test_bounds_sticky_ratios():
    _, text = run("bounds", "--example", "sticky-walk", "--n", "8", "--epsilon", "0.25", "0.1")
    for r in table(text):
        assert r["exact_tmix"] in ("60", "108")
        if r["applicable"] == "true":
            ratio = float(r["ratio"])
            assert ratio >= 1 if r["name"] != "l2_lower" else ratio <= 1


def test_bounds_large_epsilon_keeps_rows(capsys):
    code, text = run("bounds", "--example", "sticky-walk", "--n", "5", "--epsilon", "0.75", "--verbose")
    assert code == 0
    rows = {r["name"]: r for r in table(text)}
    assert len(rows) == 8
    assert rows["l2_lower"]["applicable"] == "false"
    assert rows["main"]["applicable"] == "true"
    assert "EpsilonOutOfRange" in capsys.readouterr().err


def test_bounds_output_file(tmp_path):
    out = tmp_path / "t.csv"
    code, text = run("bounds", "--example", "hypercube", "--n", "2", "--out", str(out))
    assert code == 0 and text == ""
    assert out.read_text().startswith("name,epsilon,value,applicable,exact_tmix,ratio\n")


def test_output_is_deterministic():
    a = run("bounds", "--example", "random-lazy", "--n", "6", "--seed", "3", "--epsilon", "0.25", "0.01")
    b = run("bounds", "--example", "random-lazy", "--n", "6", "--seed", "3", "--epsilon", "0.25", "0.01")
    assert a == b


def test_dual_skip_free(capsys):
    code, text = run("dual", "--example", "skip-free", "--n", "5", "--mu", "delta:1", "--t-max", "6")
    assert code == 0
    link, prof = text.split("\n\n")
    lines = link.splitlines()
    assert lines[0] == "dual_state,1,2,3,4,5"
    assert lines[3] == "3,0.333333333333,0.333333333333,0.333333333333,0,0"
    assert prof.splitlines()[0] == "t,sep,sst_tail"
    assert "intertwining_residual" in capsys.readouterr().err


def test_dual_complex_spectrum_fails(capsys):
    code, _ = run("dual", "--example", "cyclic")
    assert code == 1
    assert "NegativeSpectrum" in capsys.readouterr().err


def test_dual_lazy_random_residual(capsys):
    code, _ = run("dual", "--example", "random-lazy", "--n", "7", "--seed", "11", "--mu", "uniform")
    assert code == 0
    err = capsys.readouterr().err
    assert float(err.split("intertwining_residual:")[1]) < 1e-8


def test_dual_bad_mu(capsys):
    assert run("dual", "--example", "sticky-walk", "--mu", "0.5,0.5")[0] == 2


def test_schur_count():
    assert run("schur", "--shape", "2", "1", "--m", "3", "--count") == (0, "count: 8\n")


def test_schur_companion_identity():
    assert run("schur", "--companion", "0.5,0.25", "--t", "0") == (0, "c1,c2\n1,0\n0,1\n")


def test_schur_enumeration():
    code, text = run("schur", "--partition", "2", "2", "1", "--m", "3", "--enumerate")
    assert code == 0
    assert text.splitlines()[-1] == "count: 3"
    assert len(text.splitlines()) == 4


def test_schur_point():
    _, text = run("schur", "--shape", "2", "1", "--m", "3", "--point", "1,1,1")
    assert "value: 8\n" in text


def test_schur_needs_something():
    assert run("schur")[0] == 2


def test_example_round_trips(tmp_path):
    code, text = run("example", "biased-walk", "--n", "4", "--format", "json")
    f = tmp_path / "m.json"
    f.write_text(text)
    code2, report = run("analyze", str(f))
    assert code == code2 == 0
    assert "reversible: true" in report


def test_profile():
    code, text = run("profile", "--example", "hypercube", "--n", "2", "--t-max", "3")
    assert code == 0
    assert text == "t,tv,sep\n0,0.75,1\n1,0.25,1\n2,0.125,0.5\n3,0.0625,0.25\n"


def test_module_entry_point_exit_code(tmp_path):
    f = tmp_path / "bad.csv"
    f.write_text("0.5,0.5\n-0.1,1.1\n")
    proc = subprocess.run([sys.executable, "-m", "mixbound", "analyze", str(f)], capture_output=True, text=True)
    assert proc.returncode == 2
    assert "NegativeEntry" in proc.stderr


def test_budget_env_override(monkeypatch, capsys):
    monkeypatch.setenv("MIXBOUND_BUDGET", "512,10")
    code, _ = run("profile", "--example", "sticky-walk", "--n", "4", "--t-max", "50")
    assert code == 2
    assert "BudgetExceeded" in capsys.readouterr().err
