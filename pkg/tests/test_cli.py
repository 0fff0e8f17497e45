import json

from rfa.cli.main import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def linear_config(tmp_path, **overrides):
    cfg = {
        "system": "linear",
        "basis": "tri(-0.5;0;0.51)",
        "params": {"lambda": "-0.5 + 0.8*A"},
        "initial": {"w": "2 + 2*A"},
        "t_span": [0.0, 1.0],
        "dt": 0.01,
        "name": "quick",
    }
    cfg.update(overrides)
    target = tmp_path / "config.json"
    target.write_text(json.dumps(cfg))
    return target


def test_eval_command(capsys):
    code, out, _ = run(capsys, "eval", "(1+2*A)*(2+3*A)")
    assert code == 0
    assert out.strip() == "-4.0 + 7.0*A"


def test_eval_with_bindings_and_basis(capsys):
    code, out, _ = run(
        capsys, "eval", "psi_mul(z, z)", "--bind", "z=1 + 1*A", "--basis", "tri(-1;1;2)"
    )
    assert code == 0
    assert out.strip() == "0.0 + 4.0*A"


def test_derive_command(capsys):
    code, out, _ = run(capsys, "derive", "z^2", "--at", "1 + 1*A")
    assert code == 0
    assert "derivative = " in out
    assert "cr_residual1" in out


def test_integrate_command(capsys):
    code, out, _ = run(
        capsys, "integrate", "z^2", "--path", "0, 1 + 1*A", "--samples", "2001"
    )
    assert code == 0
    value = out.strip()
    assert value.endswith("*A")


def test_solve_command_writes_outputs(capsys, tmp_path):
    cfg = linear_config(tmp_path)
    out_dir = tmp_path / "out"
    code, out, _ = run(capsys, "solve", "linear", "--config", str(cfg), "--out-dir", str(out_dir))
    assert code == 0
    assert (out_dir / "quick.csv").exists()
    assert (out_dir / "quick.json").exists()
    assert (out_dir / "quick.svg").exists()


def test_solve_system_mismatch_is_config_error(capsys, tmp_path):
    cfg = linear_config(tmp_path)
    code, _, err = run(capsys, "solve", "lv", "--config", str(cfg))
    assert code == 2
    assert "error" in err


def test_solve_rejects_symmetric_basis(capsys, tmp_path):
    cfg = linear_config(tmp_path, basis="tri(-1;0;1)")
    code, _, err = run(capsys, "solve", "linear", "--config", str(cfg))
    assert code == 2
    assert "symmetric" in err


def test_solve_rejects_empty_time_span(capsys, tmp_path):
    cfg = linear_config(tmp_path, t_span=[1.0, 1.0])
    code, _, err = run(capsys, "solve", "linear", "--config", str(cfg))
    assert code == 2


def test_preset_runs(capsys, tmp_path):
    code, out, _ = run(capsys, "preset", "fig2", "--out-dir", str(tmp_path), "--formats", "csv")
    assert code == 0
    assert (tmp_path / "fig2.csv").exists()


def test_preset_unknown_id(capsys):
    code, _, err = run(capsys, "preset", "fig99")
    assert code == 2
    assert "unknown preset" in err


def test_phase_command(capsys, tmp_path):
    cfg = linear_config(
        tmp_path,
        system="oscillator",
        params={},
        initial={"x": "1 + 0.5*A", "y": "0"},
        t_span=[0.0, 1.0],
        dt=0.01,
        name="osc",
    )
    code, out, _ = run(
        capsys,
        "phase",
        "--config",
        str(cfg),
        "--projection",
        "x-vs-s",
        "--out-dir",
        str(tmp_path),
        "--formats",
        "svg",
    )
    assert code == 0
    assert (tmp_path / "osc-phase.svg").exists()


def test_phase_requires_exactly_one_source(capsys):
    code, _, err = run(capsys, "phase", "--projection", "x-vs-s")
    assert code == 2


def test_numeric_errors_exit_3(capsys):
    assert run(capsys, "eval", "1/(0+0*A)")[0] == 3
    assert run(capsys, "eval", "log(0)")[0] == 3


def test_integrator_abort_exits_3(capsys, tmp_path):
    cfg = linear_config(
        tmp_path,
        system="oscillator",
        params={"c1": "1e4", "c2": "1e4"},
        initial={"x": "1", "y": "0"},
        t_span=[0.0, 100.0],
        dt=1.0,
        name="diverges",
    )
    code, _, err = run(capsys, "solve", "oscillator", "--config", str(cfg), "--out-dir", str(tmp_path))
    assert code == 3
    assert "aborted" in err


def test_parse_errors_exit_2(capsys):
    assert run(capsys, "eval", "1 + * 2")[0] == 2
    assert run(capsys, "eval", "ghost + 1")[0] == 2
    assert run(capsys, "eval", "1", "--bind", "broken")[0] == 2


def test_io_errors_exit_4(capsys, tmp_path):
    blocker = tmp_path / "not_a_dir"
    blocker.write_text("occupied")
    code, _, err = run(capsys, "preset", "fig2", "--out-dir", str(blocker), "--formats", "csv")
    assert code == 4


def test_out_dir_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("RFA_OUT_DIR", str(tmp_path / "from_env"))
    code, _, _ = run(capsys, "preset", "fig2", "--formats", "csv")
    assert code == 0
    assert (tmp_path / "from_env" / "fig2.csv").exists()
