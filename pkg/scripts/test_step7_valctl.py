#!/usr/bin/env python3
"""
Test script for Step 7: valctl

Drives the command-line tool in-process:
1. Config errors and their codes
2. simulate then validate (self-validation)
3. LTI bound series and plot data
4. Reachability check exit code
5. Calculators
6. plotdata on a report without series
7. Report digest determinism
8. Stationary gap warnings
"""

import json
import math
import os
import sys
import tempfile
from pathlib import Path

import pandas as pd
from rich.console import Console
from scipy.optimize import brentq
from typer.testing import CliRunner

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from cli.valctl import EXIT_ERROR, EXIT_INVALIDATED, EXIT_OK, app
from src.wassval.config import reload_settings
from src.wassval.errors import ConfigError
from src.wassval.models import ValidationConfig, report_digest
from src.wassval.services import read_report, run_validate

console = Console()
runner = CliRunner()
CONFIGS = project_root / "configs"


def _write_config(directory: Path, name: str, config: dict) -> Path:
    path = directory / name
    path.write_text(json.dumps(config))
    return path


def _self_validation_config(tmp: Path) -> Path:
    config = json.loads((CONFIGS / "self_validation.json").read_text())
    config["data"] = str(tmp / "data.csv")
    config["output"] = {"dir": str(tmp / "out")}
    config["nu"] = 200
    return _write_config(tmp, "self.json", config)


def _calc(*args: str) -> dict:
    result = runner.invoke(app, ["calc", *args])
    assert result.exit_code == EXIT_OK, result.output
    line = next(line for line in result.stdout.splitlines() if line.startswith("{"))
    return json.loads(line)


def test_config_errors():
    console.print("🧪 Test 1: Config Errors")
    console.print("-" * 50)

    base = {
        "model": {"id": "scalar_linear"},
        "truth": {"id": "scalar_linear", "params": {"a": -2.0}},
        "data_source": "model",
        "initial_law": {"members": [{"kind": "gaussian", "mean": [0.0], "sigma": 1.0}]},
        "times": [1.0, 2.0],
        "certificates": ["PRVC"],
    }
    cases = {
        "TOL_LEN": base,
        "TIMES": {**base, "times": [2.0, 1.0], "tolerance": {"gammas": [0.1, 0.1]}},
        "SCHEMA": {**base, "times": "soon"},
    }
    with tempfile.TemporaryDirectory() as tmp:
        for code, config in cases.items():
            path = _write_config(Path(tmp), f"{code}.json", config)
            result = runner.invoke(app, ["validate", "--config", str(path)])
            assert result.exit_code == EXIT_ERROR, f"{code}: exit {result.exit_code}"
            assert code in result.output, result.output
            console.print(f"✅ {code} reported with exit code {EXIT_ERROR}")


def test_simulate_then_validate():
    console.print("\n🧪 Test 2: Self-Validation")
    console.print("-" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        config = _self_validation_config(tmp)
        result = runner.invoke(app, ["simulate", "--config", str(config), "--out", str(tmp / "data.csv")])
        assert result.exit_code == EXIT_OK, result.output
        assert (tmp / "data.csv").exists()
        console.print("✅ data simulated from the truth model")

        result = runner.invoke(app, ["validate", "--config", str(config)])
        assert result.exit_code == EXIT_OK, result.output
        report = read_report(tmp / "out" / "report.json")
        assert report.certificate("PRVC").values == [1.0] * 5
        assert max(report.certificate("PWVC").values) <= 1e-6
        assert [w.code for w in report.warnings] == ["LAW_INTERPRETATION"]
        console.print("✅ PRVC all ones, PWVC ~ 0")

        for name in ["w2_vs_t_reference.csv", "prvc_vs_k.csv", "pwvc_vs_k.csv"]:
            assert (tmp / "out" / name).exists(), name
        prvc = pd.read_csv(tmp / "out" / "prvc_vs_k.csv")
        assert list(prvc.columns) == ["k", "t", "prvc"]
        console.print("✅ plot data written next to the report")


def test_lti_demo():
    console.print("\n🧪 Test 3: LTI Bound Series")
    console.print("-" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        result = runner.invoke(app, ["validate", "--config", str(CONFIGS / "lti_demo.json"), "--out", tmp])
        assert result.exit_code == EXIT_OK, result.output
        frame = pd.read_csv(Path(tmp) / "w2_and_bound_vs_k.csv")
        assert list(frame["k"]) == list(range(21))
        assert (frame["sharper"] >= frame["w2"] - 1e-9).all()
        console.print(f"✅ sharper bound above W2 on all {len(frame)} steps")


def test_prajna_exit_code():
    console.print("\n🧪 Test 4: Reachability Check")
    console.print("-" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        result = runner.invoke(app, ["validate", "--config", str(CONFIGS / "cubic_interval.json"), "--out", tmp])
        assert result.exit_code == EXIT_INVALIDATED, result.output
        report = read_report(Path(tmp) / "report.json")
        assert report.prajna.verdict == "invalidated"
        assert report.prajna.witness == 1.21
        console.print(f"✅ model invalidated, exit code {EXIT_INVALIDATED}")

        result = runner.invoke(app, ["plotdata", "--report", str(Path(tmp) / "report.json"), "--out", tmp])
        assert result.exit_code == EXIT_OK
        assert "NOSERIES" in result.output
        assert not list(Path(tmp).glob("*.csv"))
        console.print("✅ plotdata on a report without series writes nothing")


def test_calculators():
    console.print("\n🧪 Test 5: Calculators")
    console.print("-" * 50)

    assert _calc("n-chernoff", "--eps", "0.1", "--delta", "0.05")["n"] == 185
    assert _calc("n-worstcase", "--eps", "0.1", "--delta", "0.05")["n"] == 29
    assert _calc("n-wass", "--eps", "0.1", "--delta", "0.05")["n"] == 11805
    console.print("✅ sample sizes 185, 29 and 11805")

    assert _calc("beta-w2", "--alpha", "2", "--beta", "2")["w2"] == 0.0
    gap = _calc("scalar-gap", "--a1", "-1", "--c1", "1", "--a2", "-1", "--c2", "2", "--t", "0", "--m20", "4")
    assert abs(gap["w2"] - 2.0) < 1e-12
    assert gap["kind"] == "linear" and gap["m20"] == 4.0
    console.print("✅ closed-form gaps with inputs echoed")

    prajna = _calc("prajna", "--x0", "0.85", "0.95", "--xT", "0.55", "0.65", "--p", "0.5", "2.0", "--T", "4")
    assert prajna["witness"] == 1.21
    assert prajna["verdict"] == "invalidated"
    console.print(f"✅ prajna witness {prajna['witness']}")

    result = runner.invoke(app, ["calc", "n-chernoff", "--eps", "1.5", "--delta", "0.05"])
    assert result.exit_code == EXIT_ERROR
    console.print("✅ invalid calculator input exits with an error")


def test_digest_determinism():
    console.print("\n🧪 Test 6: Report Digest")
    console.print("-" * 50)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        config = _self_validation_config(tmp)
        assert runner.invoke(app, ["simulate", "--config", str(config), "--out", str(tmp / "data.csv")]).exit_code == 0

        first = run_validate(config)
        second = run_validate(config, write=False)
        assert first.digest == second.digest
        assert report_digest(read_report(first.report_path)) == first.digest
        console.print(f"✅ identical digests: {first.digest[:12]}")

        other = run_validate(config, seed=8, write=False)
        assert other.report.seed == 8
        assert other.digest != first.digest
        console.print("✅ seed override changes the digest")


def test_stationary_gap():
    console.print("\n🧪 Test 7: Stationary Gap")
    console.print("-" * 50)

    base = {
        "model": {"id": "scalar_linear"},
        "times": [1.0],
        "certificates": [],
        "stationary": {"laws": [
            {"kind": "arcsine", "lower": -1.0, "upper": 1.0},
            {"kind": "arcsine", "lower": 0.0, "upper": 1.0},
        ]},
    }
    run = run_validate(ValidationConfig.model_validate(base).check(), write=False)
    assert abs(run.report.stationary.w2 - math.sqrt(3.0 / 8.0)) < 1e-4
    assert run.report.warnings == []
    console.print(f"✅ arcsine pair gap {run.report.stationary.w2:.6f}")

    os.environ["WASSVAL_QUAD_MAX_DOUBLINGS"] = "0"
    try:
        reload_settings()
        run = run_validate(ValidationConfig.model_validate(base).check(), write=False)
    finally:
        del os.environ["WASSVAL_QUAD_MAX_DOUBLINGS"]
        reload_settings()
    assert run.report.stationary.w2 is None
    assert [w.code for w in run.report.warnings] == ["QUADRATURE"]
    console.print("✅ failed quadrature is reported, not raised")

    saddle = brentq(lambda x: 0.1 * x + 0.5 * math.sin(2.0 * x), 1.0, 2.5, xtol=1e-15)
    oscillator = {"a": 0.1, "b": 0.5, "c": 1.0}
    config = {
        "model": {"id": "example1_linear", "params": oscillator},
        "truth": {"id": "example1_truth", "params": oscillator},
        "times": [1.0],
        "certificates": [],
        "nu": 50,
        "stationary": {
            "attractors": [[0.0, 0.0], [2.8396, 0.0], [-2.8396, 0.0]],
            "initial": {"kind": "dirac", "locations": [[0.0, 0.0], [saddle, 0.0]], "masses": [0.5, 0.5]},
            "horizon": 40.0,
            "radius": 1e-2,
        },
    }
    run = run_validate(ValidationConfig.model_validate(config).check(), write=False)
    record = run.report.stationary
    assert [w.code for w in run.report.warnings] == ["UNCONVERGED"]
    assert 0 < record.unconverged < 50
    assert record.masses[0] == 1.0
    assert record.w2 < 1e-6
    console.print(f"✅ {record.unconverged} trajectories parked on the saddle are flagged")

    bad = {**config, "stationary": {**config["stationary"], "laws": base["stationary"]["laws"]}}
    try:
        ValidationConfig.model_validate(bad).check()
        raise AssertionError("attractors with laws accepted")
    except ConfigError as e:
        assert e.code == "SCHEMA"
    console.print("✅ attractors and laws together are rejected")


TESTS = [
    test_config_errors,
    test_simulate_then_validate,
    test_lti_demo,
    test_prajna_exit_code,
    test_calculators,
    test_digest_determinism,
    test_stationary_gap,
]


def main():
    """Run all tests"""
    console.print("[bold blue]" + "=" * 50)
    console.print("[bold blue]Step 7 valctl Test Suite[/bold blue]")
    console.print("[bold blue]" + "=" * 50)

    passed = 0
    for test in TESTS:
        try:
            test()
            passed += 1
        except AssertionError as e:
            console.print(f"[red]❌ {test.__name__} failed: {e}[/red]")

    console.print("\n" + "=" * 50)
    console.print("Test Summary")
    console.print("=" * 50)
    if passed == len(TESTS):
        console.print(f"[green]✅ All tests passed ({passed}/{len(TESTS)})[/green]")
        return 0
    console.print(f"[red]❌ Some tests failed ({passed}/{len(TESTS)} passed)[/red]")
    return 1


if __name__ == "__main__":
    sys.exit(main())
