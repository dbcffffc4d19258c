from __future__ import annotations

import json
from pathlib import Path

import pytest

from subshift.cli import exit_code, main

CONFIGS = Path(__file__).resolve().parents[1] / "scripts" / "configs"

STEP = {"kind": "bilateral-forward", "weights": {"type": "step", "pos": 0.5, "neg": 2.0}}
EVENS = {"modulus": 2, "residues": [0]}


def run(tmp_path, command, cfg, *extra):
    path = tmp_path / "cfg.json"
    path.write_text(cfg if isinstance(cfg, str) else json.dumps(cfg))
    return main([command, "--config", str(path), "--json", *extra])


def report(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_eq65_satisfied(capsys):
    assert main(["check", "--config", str(CONFIGS / "eq65_step.json")]) == 0
    assert "satisfied_at_horizon" in capsys.readouterr().out


def test_unilateral_unit_weights_violated():
    assert main(["check", "--config", str(CONFIGS / "unilateral_constant1.json")]) == 2


def test_malformed_json(tmp_path):
    assert run(tmp_path, "check", "{not json") == 1


def test_missing_file(tmp_path):
    assert main(["check", "--config", str(tmp_path / "absent.json")]) == 1


@pytest.mark.parametrize(
    "check, extra, code",
    [
        ("thm19", {"delta": 0.1, "q": 1, "n": 4}, 0),
        ("thm19", {"delta": 0.1, "q": 1, "n": 2}, 2),
        ("thm84", {"schedule": {"stride": 2, "count": 10}}, 0),
        ("lemma35", {"schedule": {"stride": 2, "count": 10}, "others": [2, -2], "tol": 1e-3}, 0),
        ("thm28", {"schedule": {"stride": 2, "count": 10}, "right_operator": STEP, "right_subspace": EVENS}, 0),
        ("eq65", {"schedule": {"stride": 2, "count": 3}}, 3),
    ],
)
def test_check_exit_codes(tmp_path, capsys, check, extra, code):
    cfg = {"schema_version": 1, "check": check, "operator": STEP, "subspace": EVENS, "witness": 0, **extra}
    assert run(tmp_path, "check", cfg) == code
    assert exit_code(report(capsys)) == code


def test_thm84_not_applicable(tmp_path, capsys):
    cfg = {
        "schema_version": 1,
        "check": "thm84",
        "operator": STEP,
        "subspace": {"modulus": 1, "residues": [], "includes": [-2, -4]},
        "schedule": {"stride": 2, "count": 10},
        "probe_window": 50,
    }
    assert run(tmp_path, "check", cfg) == 3
    assert report(capsys)["status"] == "not_applicable"


def test_corollary_and_prop85(tmp_path):
    two = {"kind": "unilateral-backward", "weights": {"type": "constant", "value": 2.0}}
    full = {"modulus": 1, "residues": [0]}
    cfg = {"schema_version": 1, "check": "corollary", "operator": two, "subspace": full, "N": 20, "right_operator": two, "right_subspace": full}
    assert run(tmp_path, "check", cfg) == 0
    back = {"kind": "bilateral-backward", "weights": {"type": "reindexed", "base": STEP["weights"], "sign": -1, "offset": 0}}
    cfg = {"schema_version": 1, "check": "prop85", "operator": back, "subspace": EVENS, "schedule": {"stride": 2, "count": 10}}
    assert run(tmp_path, "check", cfg) == 0
    cfg["check"] = "thm84"
    assert run(tmp_path, "check", cfg) == 1  # wrong operator kind


def test_trace_csv_written(tmp_path):
    out = tmp_path / "traces.csv"
    assert main(["check", "--config", str(CONFIGS / "eq65_step.json"), "--trace-csv", str(out)]) == 0
    rows = out.read_text().splitlines()
    assert rows[0] == "k,n_k,trace_plus,trace_minus" and len(rows) == 33


def test_simulate_rolewicz(capsys):
    assert main(["simulate", "--config", str(CONFIGS / "simulate_2b.json"), "--json"]) == 0
    assert report(capsys)["hit_rate"] == 1.0


def test_simulate_unilateral_forward(capsys):
    assert main(["simulate", "--config", str(CONFIGS / "simulate_unilateral_forward.json"), "--json"]) == 2
    rep = report(capsys)
    assert rep["hit_rate"] == 0.0 and rep["targets"] and not any(t["hit"] for t in rep["targets"])


def test_simulate_refusal_embeds_verdict(tmp_path, capsys):
    cfg = {
        "schema_version": 1,
        "operator": {"kind": "bilateral-forward", "weights": {"type": "constant", "value": 1.0}},
        "subspace": EVENS,
        "schedule": {"stride": 2, "count": 10},
    }
    assert run(tmp_path, "simulate", cfg) == 2
    assert report(capsys)["verdict"]["status"] == "violated_at_horizon"


def test_simulate_window_too_small(tmp_path):
    cfg = {"schema_version": 1, "operator": STEP, "subspace": EVENS, "x": [[-40, 1.0]], "window": {"lo": -8, "hi": 8}}
    assert run(tmp_path, "simulate", cfg) == 1


def test_construct_and_recheck_round_trip(tmp_path, capsys):
    assert main(["construct", "--config", str(CONFIGS / "herrero.json"), "--json"]) == 0
    bundle = report(capsys)
    assert [v["status"] for v in bundle["verdicts"]] == ["satisfied_at_horizon"] * 2
    assert run(tmp_path, "check", bundle) == 0
    rechecked = report(capsys)
    assert [r["verdict"] for r in rechecked["reports"]] == bundle["verdicts"]


def test_construct_degenerate_herrero():
    assert main(["construct", "--config", str(CONFIGS / "herrero_degenerate.json")]) == 2


def test_construct_families(tmp_path, capsys):
    assert run(tmp_path, "construct", {"schema_version": 1, "family": "constant", "params": {"lam": 2}}) == 0
    assert report(capsys)["operator"]["weights"] == {"type": "constant", "value": 2.0}
    assert run(tmp_path, "construct", {"schema_version": 1, "family": "constant", "params": {"lam": -2}}) == 1
    assert run(tmp_path, "construct", {"schema_version": 1, "family": "example_2B"}) == 0
    bundle = report(capsys)
    assert run(tmp_path, "check", bundle) == 0
    assert report(capsys)["reports"][0]["verdict"] == bundle["verdicts"][0]


def test_exit_code_is_a_function_of_the_report():
    assert exit_code({"status": "pass"}) == 0
    assert exit_code({"reports": [{"status": "pass"}, {"status": "inconclusive"}]}) == 3
    assert exit_code({"reports": [{"status": "inconclusive"}, {"status": "violated_at_horizon"}]}) == 2
