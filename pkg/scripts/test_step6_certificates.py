#!/usr/bin/env python3
"""
Test script for Step 6: Certificates
Checks sample sizes, PRVC/PWVC reduction, self-validation through the snapshot CSV,
enumerate mode, seeding, error provenance, JSON I/O and initial density laws.
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.wassval.certificates import (
    FiniteLaw,
    ParametricLaw,
    certificate_from_gaps,
    construct_certificates,
    construct_pwvc,
    density_seeds,
    law_from_config,
    n_chernoff,
    n_worstcase,
    read_certificate,
    read_tolerance,
    sample_gap_trajectories,
    write_certificate,
    write_tolerance,
)
from src.wassval.densities import Gaussian, read_snapshots_csv, write_snapshots_csv
from src.wassval.dynamics import Simulator, build_model, simulator_for
from src.wassval.errors import ConfigError, DataError, PropagationError
from src.wassval.models import LawConfig, ToleranceSchedule

TIMES = [0.5, 1.0, 2.0]


def _truth_and_model():
    truth = simulator_for(build_model("scalar_linear", {"a": -1.0, "c": 1.0}))
    model = simulator_for(build_model("scalar_linear", {"a": -0.6, "c": 1.2}))
    return truth, model


def _sigma_law():
    return ParametricLaw(lambda s: Gaussian([0.4], [[s * s]]), 0.2, 1.0, name="sigma")


class FailingSimulator(Simulator):
    """Raises on every prediction"""

    def predict(self, initial, times, nu, seed=0, ensemble=None):
        raise PropagationError("non-finite state", location="t=0.5")


def test_sample_sizes():
    print("🧪 Test 1: Sample Sizes")
    print("-" * 50)

    assert n_chernoff(0.1, 0.05) == 185
    assert n_worstcase(0.1, 0.05) == 29
    print("✅ n_chernoff(0.1, 0.05) = 185, n_worstcase(0.1, 0.05) = 29")

    for epsilon, delta in [(0.0, 0.05), (1.0, 0.05), (0.1, 0.0), (0.1, 1.0)]:
        try:
            n_chernoff(epsilon, delta)
            raise AssertionError(f"accepted epsilon={epsilon}, delta={delta}")
        except ValueError:
            pass
    print("✅ parameters outside (0, 1) rejected")


def test_prvc_values():
    print("\n🧪 Test 2: PRVC Reduction")
    print("-" * 50)

    truth, model = _truth_and_model()
    gaps = sample_gap_trajectories(truth, model, _sigma_law(), TIMES, count=20, nu=200, seed=3)
    assert gaps.gaps.shape == (20, len(TIMES))
    assert np.all(gaps.gaps >= 0)

    median = np.median(gaps.gaps, axis=0)
    tight = certificate_from_gaps("PRVC", gaps, 0.1, 0.05, 200, 3, "m", ToleranceSchedule(gammas=list(median)))
    loose = certificate_from_gaps("PRVC", gaps, 0.1, 0.05, 200, 3, "m", ToleranceSchedule(gammas=list(2 * median)))
    for snapshot in tight.snapshots:
        assert snapshot.value == snapshot.count / 20
    print(f"✅ values are counts over N: {tight.values}")

    assert all(b >= a for a, b in zip(tight.values, loose.values))
    print("✅ larger tolerances never lower the validation probability")

    for k in range(len(TIMES)):
        for delta in (0.0, 1e-3, 0.5 * median[k], float(gaps.gaps[:, k].max())):
            raised = list(median)
            raised[k] += delta
            bumped = certificate_from_gaps("PRVC", gaps, 0.1, 0.05, 200, 3, "m", ToleranceSchedule(gammas=raised))
            assert bumped.values[k] >= tight.values[k]
            others = [i for i in range(len(TIMES)) if i != k]
            assert all(bumped.values[i] == tight.values[i] for i in others)
        assert bumped.values[k] == 1.0
    print("✅ raising a single gamma_k never lowers its value and leaves the others alone")

    pwvc = certificate_from_gaps("PWVC", gaps, 0.1, 0.05, 200, 3, "m")
    assert np.allclose(pwvc.values, gaps.gaps.max(axis=0))
    print("✅ PWVC is the per-snapshot maximum")

    try:
        certificate_from_gaps("PRVC", gaps, 0.1, 0.05, 200, 3, "m", ToleranceSchedule(gammas=[1.0]))
        raise AssertionError("short tolerance schedule accepted")
    except ValueError:
        print("✅ tolerance schedule length checked")


def test_point_mass_law():
    print("\n🧪 Test 3: Point-Mass Law")
    print("-" * 50)

    truth, model = _truth_and_model()
    family = Gaussian([0.4], [[0.25]])
    certificate = construct_pwvc(truth, model, FiniteLaw.point_mass(family), TIMES, 0.1, 0.05, nu=300, seed=1)
    assert certificate.N == 29

    direct = sample_gap_trajectories(truth, model, FiniteLaw.point_mass(family), TIMES, count=1, nu=300)
    assert np.allclose(certificate.values, direct.gaps[0], atol=1e-12)
    print(f"✅ PWVC equals the single density's gap: {np.round(certificate.values, 5)}")


def test_self_validation():
    print("\n🧪 Test 4: Self-Validation Through the Snapshot CSV")
    print("-" * 50)

    model = simulator_for(build_model("scalar_affine", {"a": -0.5, "b": 0.2, "c": 2.0, "d": 1.0}))
    family = Gaussian([0.5], [[1.0]])
    times = [0.5, 1.0, 2.0, 4.0]
    with tempfile.TemporaryDirectory() as tmp:
        path = write_snapshots_csv(times, model.predict(family, times, 400), Path(tmp) / "data.csv")
        read_times, data = read_snapshots_csv(path)

    certificates, gaps = construct_certificates(
        ["PRVC", "PWVC"], data, model, FiniteLaw.point_mass(family), read_times, 0.1, 0.05,
        tolerance=ToleranceSchedule(gammas=[1e-6] * len(times)), nu=400, mode="enumerate",
    )
    prvc, pwvc = certificates
    assert prvc.values == [1.0] * len(times)
    assert max(pwvc.values) < 1e-6
    assert prvc.N == pwvc.N == 1
    assert any(code == "LAW_INTERPRETATION" for code, _ in gaps.warnings)
    print("✅ the model validates itself: PRVC all ones, PWVC ~ 0")

    try:
        construct_certificates(["PWVC"], data[:2], model, FiniteLaw.point_mass(family), times, 0.1, 0.05, nu=400)
        raise AssertionError("snapshot count mismatch accepted")
    except DataError as e:
        assert e.code == "SNAPSHOT"
        print(f"✅ snapshot count mismatch reported: {e.code}")


def test_enumerate_superset():
    print("\n🧪 Test 5: Enumerate Mode")
    print("-" * 50)

    truth, model = _truth_and_model()
    members = [Gaussian([0.0], [[0.25]]), Gaussian([1.0], [[0.04]]), Gaussian([-0.5], [[1.0]])]
    subset = construct_pwvc(truth, model, FiniteLaw(members[:2]), TIMES, 0.1, 0.05, nu=200, mode="enumerate")
    superset = construct_pwvc(truth, model, FiniteLaw(members), TIMES, 0.1, 0.05, nu=200, mode="enumerate")
    assert subset.N == 2 and superset.N == 3
    assert all(b >= a - 1e-12 for a, b in zip(subset.values, superset.values))
    print("✅ adding members never lowers the worst-case gap")

    try:
        construct_pwvc(truth, model, _sigma_law(), TIMES, 0.1, 0.05, nu=50, mode="enumerate")
        raise AssertionError("parametric law enumerated")
    except ConfigError as e:
        assert e.code == "LAW"
        print("✅ parametric laws cannot be enumerated")


def test_reproducibility():
    print("\n🧪 Test 6: Seeding")
    print("-" * 50)

    assert density_seeds(5, 3) == density_seeds(5, 10)[:3]
    assert density_seeds(5, 3) != density_seeds(6, 3)
    print("✅ per-density seeds are prefix-stable")

    truth = simulator_for(build_model("scalar_sde", {"a": -1.0, "b": 0.5, "c": 1.0, "q": 0.2}))
    model = simulator_for(build_model("scalar_sde", {"a": -0.7, "b": 0.4, "c": 1.0, "q": 0.2}))
    runs = [
        sample_gap_trajectories(truth, model, _sigma_law(), TIMES, count=4, nu=150, seed=seed)
        for seed in (11, 11, 12)
    ]
    assert np.array_equal(runs[0].gaps, runs[1].gaps)
    assert runs[0].labels == runs[1].labels
    assert not np.array_equal(runs[0].gaps, runs[2].gaps)
    print("✅ same seed reproduces the gaps, another seed changes them")


def test_propagation_error_provenance():
    print("\n🧪 Test 7: Propagation Error Provenance")
    print("-" * 50)

    truth, model = _truth_and_model()
    failing = FailingSimulator(model.model)
    law = FiniteLaw([Gaussian([0.0], [[1.0]])], labels=["wide"])
    try:
        sample_gap_trajectories(truth, failing, law, TIMES, count=2, nu=50)
        raise AssertionError("failure swallowed")
    except PropagationError as e:
        assert e.code == "PROPAGATION"
        assert e.location.startswith("density 0 (wide)")
        assert "t=0.5" in e.location
        print(f"✅ {e}")


def test_json_io():
    print("\n🧪 Test 8: Certificate and Tolerance Files")
    print("-" * 50)

    truth, model = _truth_and_model()
    gaps = sample_gap_trajectories(truth, model, _sigma_law(), TIMES, count=5, nu=100)
    schedule = ToleranceSchedule.piecewise([(1, 0.05), (2, 0.1)])
    assert schedule.gammas == [0.05, 0.1, 0.1]
    certificate = certificate_from_gaps("PRVC", gaps, 0.1, 0.05, 100, 0, model.name, schedule)

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        assert read_tolerance(write_tolerance(schedule, tmp / "gammas.json")) == schedule
        assert read_certificate(write_certificate(certificate, tmp / "prvc.json")) == certificate
        print("✅ certificate and schedule survive a write/read")

        bad = tmp / "bad.json"
        bad.write_text('{"gammas": [0.1, -1.0]}')
        try:
            read_tolerance(bad)
            raise AssertionError("negative tolerance accepted")
        except DataError as e:
            assert e.code == "DATA_IO"
            print(f"✅ invalid schedule rejected: {e.code}")


def test_laws():
    print("\n🧪 Test 9: Initial Density Laws")
    print("-" * 50)

    rng = np.random.default_rng(0)
    law = FiniteLaw([Gaussian([0.0], [[1.0]]), Gaussian([1.0], [[1.0]])], probabilities=[1.0, 0.0], labels=["a", "b"])
    assert {label for label, _ in law.draw(50, rng)} == {"a"}
    try:
        FiniteLaw([Gaussian([0.0], [[1.0]])], probabilities=[0.5])
        raise AssertionError("probabilities not summing to 1 accepted")
    except ValueError:
        pass
    print("✅ finite law honors its probabilities")

    draws = _sigma_law().draw(30, rng)
    sigmas = [float(np.sqrt(family.cov[0, 0])) for _, family in draws]
    assert all(0.2 <= s <= 1.0 for s in sigmas)
    print("✅ parametric law stays inside its range")

    parametric = law_from_config(LawConfig.model_validate({
        "parametric": {"template": {"kind": "gaussian", "mean": [0.0]}, "parameter": "sigma", "low": 0.5, "high": 2.0},
    }))
    assert isinstance(parametric, ParametricLaw)
    duplicated = law_from_config(LawConfig.model_validate({
        "members": [{"kind": "uniform", "lower": [0.0], "upper": [1.0]}, {"kind": "uniform", "lower": [0.0], "upper": [2.0]}],
    }))
    assert [label for label, _ in duplicated.enumerate()] == ["uniform_0", "uniform_1"]
    print("✅ config laws built, duplicate labels suffixed")

    try:
        law_from_config(LawConfig.model_validate({"members": [{"kind": "beta", "alpha": -1.0, "beta": 2.0}]}))
        raise AssertionError("invalid beta member accepted")
    except ConfigError as e:
        assert e.code == "LAW"
        print(f"✅ invalid member reported: {e.code}")


TESTS = [
    test_sample_sizes,
    test_prvc_values,
    test_point_mass_law,
    test_self_validation,
    test_enumerate_superset,
    test_reproducibility,
    test_propagation_error_provenance,
    test_json_io,
    test_laws,
]


def main():
    """Run all tests"""
    print("=" * 50)
    print("Step 6 Certificates Test Suite")
    print("=" * 50)

    passed = 0
    for test in TESTS:
        try:
            test()
            passed += 1
        except AssertionError as e:
            print(f"❌ {test.__name__} failed: {e}")

    print("\n" + "=" * 50)
    print("Test Summary")
    print("=" * 50)
    if passed == len(TESTS):
        print(f"✅ All tests passed ({passed}/{len(TESTS)})")
        return 0
    print(f"❌ Some tests failed ({passed}/{len(TESTS)} passed)")
    return 1


if __name__ == "__main__":
    sys.exit(main())
