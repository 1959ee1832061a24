import json

import pytest

from willsim.cli import main


def run_cli(*argv):
    return main(list(argv))


def test_simulate_writes_summary_and_trace(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "grid_height": 8, "grid_width": 8, "n_agents": 3, "n_stags": 1,
                "n_hares": 2, "threshold": 2, "horizon": 5, "master_seed": 9,
            }
        )
    )
    trace = tmp_path / "trace.jsonl"
    out = tmp_path / "episode.csv"
    code = run_cli(
        "simulate", "--config", str(config), "--seed", "4",
        "--trace", str(trace), "--out", str(out),
    )
    assert code == 0
    assert "seed=4" in capsys.readouterr().out
    lines = trace.read_text().strip().split("\n")
    assert len(lines) == 5
    assert set(json.loads(lines[0])) >= {"t", "joint_action", "rewards", "hunt_events"}
    header, row = out.read_text().strip().split("\n")
    assert header == "seed,total_reward,normalized_payoff,stags_captured,hares_captured"


def test_exit_code_2_on_config_error(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"n_agents": 2, "threshold": 5}))
    code = run_cli("simulate", "--config", str(config))
    assert code == 2
    assert "ThresholdExceedsAgents" in capsys.readouterr().err


def test_exit_code_2_on_unknown_field(tmp_path, capsys):
    config = tmp_path / "bad.json"
    config.write_text(json.dumps({"wolves": 1}))
    code = run_cli("simulate", "--config", str(config))
    assert code == 2


def test_sweep_strength_csv_bytes_stable(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "grid_height": 8, "grid_width": 8, "n_agents": 3, "n_stags": 1,
                "n_hares": 2, "threshold": 2, "horizon": 5, "master_seed": 6,
            }
        )
    )
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    for out in (out_a, out_b):
        code = run_cli(
            "sweep-strength", "--config", str(config), "--thetas", "2",
            "--alphas", "0,1", "--episodes", "3", "--out", str(out),
        )
        assert code == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    assert out_a.read_text().splitlines()[0] == "theta,alpha,mean,ci95"


def test_composition_and_ternary(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "grid_height": 8, "grid_width": 8, "n_agents": 4, "n_stags": 1,
                "n_hares": 3, "threshold": 2, "horizon": 4, "master_seed": 2,
            }
        )
    )
    out = tmp_path / "comp.csv"
    assert (
        run_cli(
            "sweep-composition", "--config", str(config), "--thetas", "2",
            "--counts", "0,4", "--episodes", "2", "--out", str(out),
        )
        == 0
    )
    assert len(out.read_text().splitlines()) == 3
    assert (
        run_cli(
            "sweep-composition", "--config", str(config), "--ternary",
            "--ternary-theta", "2", "--ternary-step", "2", "--episodes", "2",
            "--out", str(out),
        )
        == 0
    )
    assert len(out.read_text().splitlines()) == 7


def test_endogenous_cli(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "grid_height": 8, "grid_width": 8, "n_agents": 3, "n_stags": 1,
                "n_hares": 2, "threshold": 2, "horizon": 4, "master_seed": 2,
            }
        )
    )
    out = tmp_path / "endo.csv"
    code = run_cli(
        "endogenous", "--config", str(config), "--rs-bars", "2",
        "--ks", "0.5", "--episodes", "2", "--out", str(out),
    )
    assert code == 0
    assert out.read_text().splitlines()[0] == "strategy,k,rs_bar,mean,ci95"


def test_evolve_cli_writes_three_tables(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "grid_height": 8, "grid_width": 8, "n_agents": 3, "n_stags": 1,
                "n_hares": 2, "threshold": 2, "horizon": 4, "master_seed": 2,
            }
        )
    )
    out = tmp_path / "evolve.csv"
    code = run_cli(
        "evolve", "--config", str(config), "--pop-size", "4",
        "--generations", "2", "--episodes-per-eval", "2", "--out", str(out),
    )
    assert code == 0
    assert "best_fitness=" in capsys.readouterr().out
    assert out.exists()
    assert (tmp_path / "evolve_dist.csv").exists()
    assert (tmp_path / "evolve_payoff.csv").exists()


def test_dynamics_cli_modes(tmp_path):
    out = tmp_path / "eq.csv"
    assert run_cli("dynamics", "--mode", "equilibria", "--out", str(out)) == 0
    assert out.read_text().splitlines()[0] == "game,n1,n2,x_star,classification"
    out2 = tmp_path / "escape.csv"
    assert (
        run_cli(
            "dynamics", "--mode", "escape", "--n1", "0.6,0.7", "--sigma", "0.5",
            "--trials", "20", "--t-max", "50", "--out", str(out2),
        )
        == 0
    )
    assert out2.read_text().splitlines()[0] == "n1,sigma,mean_tau,ci95,censored_fraction,barrier"


def test_homogeneous_alpha_flag(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(
        json.dumps(
            {
                "grid_height": 8, "grid_width": 8, "n_agents": 3, "n_stags": 1,
                "n_hares": 2, "threshold": 2, "horizon": 4, "master_seed": 2,
            }
        )
    )
    assert run_cli("simulate", "--config", str(config), "--alpha", "1.0") == 0
    assert run_cli("simulate", "--config", str(config), "--willed-stag", "2") == 0
    assert run_cli("simulate", "--config", str(config), "--strategy", "instant") == 0
