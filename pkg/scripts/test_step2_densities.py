#!/usr/bin/env python3
"""
Test script for Step 2: Densities

Tests the density layer:
1. Ensemble normalization, pruning and merging
2. Pseudo, Halton and quantile sampling
3. Step and analytic CDFs with their quantiles
4. Raw moments against closed forms
5. Snapshot CSV I/O
6. Beta entropy symmetry
"""

import sys
import tempfile
from pathlib import Path

import numpy as np
from scipy import integrate

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.wassval.densities import (
    Arcsine,
    DiracMixture,
    Gaussian,
    GridCdf,
    ParticleEnsemble,
    ScaledBeta,
    UniformBox,
    beta_entropy,
    cdf,
    quantile,
    raw_moment,
    read_snapshots_csv,
    sample,
    write_snapshots_csv,
)
from src.wassval.errors import DataError


def test_ensemble_basics():
    print("🧪 Test 1: Particle Ensembles")
    print("-" * 50)

    ensemble = ParticleEnsemble([[0.0], [1.0], [1.0], [3.0]], [2.0, 1.0, 1.0, 0.0])
    assert np.isclose(ensemble.weights.sum(), 1.0)
    assert np.allclose(ensemble.weights, [0.5, 0.25, 0.25, 0.0])
    print("✅ weights normalized to unit mass")

    assert ensemble.pruned().size == 3
    merged, index = ensemble.merged()
    assert merged.size == 3
    assert index[1] == index[2]
    assert np.isclose(merged.weights[index[1]], 0.5)
    print("✅ zero weights pruned, colocated points merged")

    for bad in ([[np.nan]], np.empty((0, 1))):
        try:
            ParticleEnsemble(bad)
            raise AssertionError("invalid points accepted")
        except ValueError:
            pass
    try:
        ParticleEnsemble([[0.0], [1.0]], [-1.0, 2.0])
        raise AssertionError("negative weight accepted")
    except ValueError:
        pass
    print("✅ non-finite, empty and negative-weight inputs rejected")


def test_sampling_schemes():
    print("\n🧪 Test 2: Sampling Schemes")
    print("-" * 50)

    gaussian = Gaussian.isotropic(0.8, 2)
    first = sample(gaussian, 500, seed=3, scheme="pseudo")
    again = sample(gaussian, 500, seed=3, scheme="pseudo")
    assert np.array_equal(first.points, again.points)
    print("✅ pseudo sampling reproducible under a fixed seed")

    halton_a = sample(gaussian, 400, seed=1, scheme="halton")
    halton_b = sample(gaussian, 400, seed=99, scheme="halton")
    assert np.array_equal(halton_a.points, halton_b.points)
    assert np.allclose(halton_a.covariance(), 0.64 * np.eye(2), atol=0.05)
    print("✅ Halton points deterministic with the right covariance")

    box = UniformBox([-1.0, 0.0], [1.0, 2.0])
    points = sample(box, 300, scheme="halton").points
    assert np.all(points > box.lower) and np.all(points < box.upper)
    print("✅ uniform box points strictly inside the box")

    grid = sample(UniformBox([0.0], [1.0]), 4, scheme="quantile")
    assert np.allclose(grid.points[:, 0], [0.125, 0.375, 0.625, 0.875])
    print("✅ quantile scheme returns midpoint quantiles")

    try:
        sample(gaussian, 10, scheme="quantile")
        raise AssertionError("quantile scheme accepted a 2-D law")
    except ValueError:
        print("✅ quantile scheme rejects multivariate laws")


def test_cdf_and_quantile():
    print("\n🧪 Test 3: CDFs and Quantiles")
    print("-" * 50)

    steps = cdf(ParticleEnsemble([[2.0], [0.0], [1.0], [1.0]]))
    assert np.allclose(steps([-1.0, 0.0, 0.5, 1.0, 2.0]), [0.0, 0.25, 0.25, 0.75, 1.0])
    assert quantile(steps, 0.25) == 0.0
    assert quantile(steps, 0.26) == 1.0
    assert quantile(steps, 0.0) == 0.0
    assert quantile(steps, 1.0) == 2.0
    print("✅ step CDF is right-continuous with the left generalized inverse")

    arcsine = cdf(Arcsine(-1.0, 1.0))
    u = np.linspace(0.05, 0.95, 7)
    assert np.allclose(arcsine.quantile(u), -np.cos(np.pi * u), atol=1e-10)
    print("✅ arcsine quantile equals -cos(pi u)")

    grid = GridCdf(np.array([0.0, 1.0, 2.0]), np.array([1.0, 3.0]))
    assert np.isclose(grid(1.0), 0.25)
    assert np.isclose(grid.quantile(0.625), 1.5)
    print("✅ grid CDF normalizes masses and interpolates within cells")

    try:
        quantile(steps, 1.5)
        raise AssertionError("level outside [0, 1] accepted")
    except ValueError:
        print("✅ quantile levels outside [0, 1] rejected")


def test_raw_moments():
    print("\n🧪 Test 4: Raw Moments")
    print("-" * 50)

    assert np.isclose(raw_moment(Gaussian([0.5], [[4.0]]), 2), 4.25)
    assert np.isclose(raw_moment(UniformBox([-3.0], [3.0]), 2), 3.0)
    assert np.isclose(raw_moment(Arcsine(-3.0, 3.0), 2), 4.5)
    print("✅ Gaussian, uniform and arcsine m20")

    law = ScaledBeta(2.0, 5.0, -1.0, 2.0)
    numeric, _ = integrate.quad(lambda x: x * x * float(law.pdf(np.array([x]))[0]), -1.0, 2.0)
    assert np.isclose(raw_moment(law, 2), numeric, atol=1e-8)
    print("✅ scaled beta m20 agrees with quadrature")

    dirac = DiracMixture([[-1.0], [2.0]], [0.25, 0.75])
    assert np.isclose(raw_moment(dirac, 1), 1.25)
    assert np.isclose(raw_moment(dirac, 2), 3.25)
    print("✅ Dirac mixture moments")


def test_snapshot_csv():
    print("\n🧪 Test 5: Snapshot CSV")
    print("-" * 50)

    rng = np.random.default_rng(5)
    times = [0.5, 1.0]
    ensembles = [ParticleEnsemble(rng.normal(size=(20, 2))), ParticleEnsemble(rng.normal(size=(20, 2)))]
    with tempfile.TemporaryDirectory() as tmp:
        path = write_snapshots_csv(times, ensembles, Path(tmp) / "data.csv")
        read_times, read_ensembles = read_snapshots_csv(path)
        assert np.allclose(read_times, times)
        assert all(np.array_equal(a.points, b.points) for a, b in zip(ensembles, read_ensembles))
        print("✅ coordinates survive the CSV bit for bit")

        bad = Path(tmp) / "bad.csv"
        bad.write_text("w,x1\n1.0,0.0\n")
        try:
            read_snapshots_csv(bad)
            raise AssertionError("CSV without t column accepted")
        except DataError as e:
            assert e.code == "DATA_IO"
            print(f"✅ missing t column reported: {e.code}")


def test_beta_entropy_symmetry():
    print("\n🧪 Test 6: Beta Entropy")
    print("-" * 50)

    rng = np.random.default_rng(11)
    for alpha, beta in rng.uniform(0.3, 6.0, size=(100, 2)):
        assert abs(beta_entropy(alpha, beta) - beta_entropy(beta, alpha)) <= 1e-10
    print("✅ h(alpha, beta) = h(beta, alpha) on 100 pairs")

    assert abs(beta_entropy(1.0, 1.0)) < 1e-14
    print("✅ uniform law has zero entropy")


TESTS = [
    test_ensemble_basics,
    test_sampling_schemes,
    test_cdf_and_quantile,
    test_raw_moments,
    test_snapshot_csv,
    test_beta_entropy_symmetry,
]


def main():
    """Run all tests."""
    print("\n" + "=" * 70)
    print("Step 2: Densities - Test")
    print("=" * 70)

    results = []
    for test in TESTS:
        try:
            test()
            results.append((test.__name__, True))
        except AssertionError as e:
            print(f"❌ {e}")
            results.append((test.__name__, False))

    print("\n" + "=" * 70)
    print("Test Summary")
    print("=" * 70)
    for name, passed in results:
        print(f"{'✓ PASSED' if passed else '✗ FAILED'}: {name}")
    all_passed = all(passed for _, passed in results)
    print("✅ All tests passed!" if all_passed else "❌ Some tests failed")
    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
