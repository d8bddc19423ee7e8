#!/usr/bin/env python3
"""
Test script for Step 5: Analytic Gaps, Bounds and Diagnostics
Compares the scalar closed forms with the propagation pipeline and checks the LTI
bounds, the beta-beta distance, the cubic reachability check and the diagnostics.
"""

import math
import sys
from pathlib import Path

import numpy as np
from scipy import integrate, stats
from scipy.special import betaincinv

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.wassval.analytic import (
    LtiPair,
    ScalarLinearPair,
    beta_beta_w2,
    beta_second_moment,
    cubic_flow,
    gaussian_kl_diag,
    log_noise_sign,
    lti_bound_series,
    lti_bounds,
    prajna_check,
    prajna_transport_gap,
    s_statistic,
    scalar_affine_asymptote,
    uniform_interval_density,
    w2_scalar_affine,
    w2_scalar_linear,
    w2_scalar_linear_discrete,
    w2_scalar_sde,
    w2_scalar_sde_gaussian,
)
from src.wassval.densities import Arcsine, Gaussian, ScaledBeta, UniformBox, cdf, raw_moment, sample
from src.wassval.dynamics import build_model, simulator_for
from src.wassval.transport import w2_1d, w2_gaussian, wasserstein_1d

TIMES = [0.25, 0.5, 1.0, 2.0, 4.0]


def _pipeline_gaps(true_model, model, ensemble, times):
    """W2 between the two models' outputs from one shared initial ensemble."""
    family = Gaussian([0.0], [[1.0]])
    truth = simulator_for(true_model).predict(family, times, ensemble.size, ensemble=ensemble)
    predicted = simulator_for(model).predict(family, times, ensemble.size, ensemble=ensemble)
    return [wasserstein_1d(cdf(a), cdf(b)) for a, b in zip(truth, predicted)]


def test_scalar_linear_vs_pipeline():
    print("🧪 Test 1: Scalar Linear Gap vs Pipeline")
    print("-" * 50)

    rng = np.random.default_rng(3)
    families = [Gaussian([0.3], [[0.5]]), UniformBox([-1.0], [2.0]), Arcsine(-1.5, 0.5)]
    for _ in range(5):
        a1, a2 = -rng.uniform(0.2, 2.0, size=2)
        c1, c2 = rng.uniform(0.5, 2.0, size=2)
        pair = ScalarLinearPair(a1=a1, c1=c1, a2=a2, c2=c2)
        true_model = build_model("scalar_linear", {"a": a1, "c": c1})
        model = build_model("scalar_linear", {"a": a2, "c": c2})
        for family in families:
            ensemble = sample(family, 1000, scheme="quantile")
            m20 = raw_moment(ensemble, 2)
            pipeline = _pipeline_gaps(true_model, model, ensemble, TIMES)
            closed = [w2_scalar_linear(pair, m20, t) for t in TIMES]
            assert np.allclose(pipeline, closed, atol=1e-4), f"{family.kind}: {pipeline} vs {closed}"
    print("✅ 5 pairs x 3 families agree within 1e-4")

    pair = ScalarLinearPair(a1=-1.0, c1=1.0, a2=-0.5, c2=1.5)
    gaussian = [w2_scalar_linear(pair, raw_moment(Gaussian([0.0], [[3.0]]), 2), t) for t in TIMES]
    uniform = [w2_scalar_linear(pair, raw_moment(UniformBox([-3.0], [3.0]), 2), t) for t in TIMES]
    assert np.allclose(gaussian, uniform, atol=1e-12)

    true_model = build_model("scalar_linear", {"a": -1.0, "c": 1.0})
    model = build_model("scalar_linear", {"a": -0.5, "c": 1.5})
    by_family = [
        _pipeline_gaps(true_model, model, sample(family, 4000, scheme="quantile"), TIMES)
        for family in (Gaussian([0.0], [[3.0]]), UniformBox([-3.0], [3.0]))
    ]
    assert np.allclose(by_family[0], by_family[1], rtol=1e-2)
    print("✅ families with equal m20 give the same trajectory")


def test_arcsine_above_uniform():
    print("\n🧪 Test 2: Arcsine vs Uniform Initial Laws")
    print("-" * 50)

    pair = ScalarLinearPair(a1=-1.0, c1=1.0, a2=-0.5, c2=1.0)
    m20_arcsine = raw_moment(Arcsine(-3.0, 3.0), 2)
    m20_uniform = raw_moment(UniformBox([-3.0], [3.0]), 2)
    assert np.isclose(m20_arcsine, 4.5) and np.isclose(m20_uniform, 3.0)
    for t in TIMES:
        arcsine = w2_scalar_linear(pair, m20_arcsine, t)
        uniform = w2_scalar_linear(pair, m20_uniform, t)
        assert arcsine > uniform
        assert abs(arcsine / uniform - math.sqrt(1.5)) < 1e-6
    print(f"✅ ratio sqrt(1.5) = {math.sqrt(1.5):.6f} at every t")


def test_affine_and_discrete():
    print("\n🧪 Test 3: Affine and Discrete Pairs")
    print("-" * 50)

    pair = ScalarLinearPair(a1=-0.8, c1=1.2, a2=-0.5, c2=1.0, b1=0.3, d1=0.1, b2=-0.2, d2=0.4)
    true_model = build_model("scalar_affine", {"a": -0.8, "b": 0.3, "c": 1.2, "d": 0.1})
    model = build_model("scalar_affine", {"a": -0.5, "b": -0.2, "c": 1.0, "d": 0.4})
    ensemble = sample(Gaussian([0.5], [[0.3]]), 800, scheme="quantile")
    m10, m20 = raw_moment(ensemble, 1), raw_moment(ensemble, 2)
    pipeline = _pipeline_gaps(true_model, model, ensemble, TIMES)
    closed = [w2_scalar_affine(pair, m10, m20, t) for t in TIMES]
    assert np.allclose(pipeline, closed, atol=1e-4)
    print("✅ affine closed form matches the pipeline")

    limit = scalar_affine_asymptote(pair)
    assert abs(w2_scalar_affine(pair, m10, m20, 80.0) - limit) < 1e-9
    print(f"✅ affine gap tends to {limit:.6f}")

    discrete = ScalarLinearPair(a1=0.9, c1=1.0, a2=0.5, c2=1.0, discrete=True)
    truth = build_model("scalar_linear_map", {"a": 0.9, "c": 1.0})
    model = build_model("scalar_linear_map", {"a": 0.5, "c": 1.0})
    ensemble = sample(UniformBox([0.0], [2.0]), 500, scheme="quantile")
    steps = [0, 1, 2, 5, 10]
    pipeline = _pipeline_gaps(truth, model, ensemble, steps)
    closed = [w2_scalar_linear_discrete(discrete, raw_moment(ensemble, 2), k) for k in steps]
    assert np.allclose(pipeline, closed, atol=1e-12)
    print("✅ discrete closed form matches the map simulator")

    for bad in [dict(a1=0.1), dict(c2=-1.0)]:
        kwargs = dict(a1=-1.0, c1=1.0, a2=-1.0, c2=1.0)
        kwargs.update(bad)
        try:
            ScalarLinearPair(**kwargs)
            raise AssertionError(f"accepted {bad}")
        except ValueError:
            pass
    print("✅ unstable or negative-gain pairs rejected")


def test_sde_gap():
    print("\n🧪 Test 4: Scalar SDE Gap")
    print("-" * 50)

    assert abs(s_statistic(cdf(Gaussian([0.3], [[0.25]]))) - 0.5) < 1e-6
    box = UniformBox([-1.0], [1.0])
    by_quantile = s_statistic(cdf(box))
    by_density = s_statistic(cdf(box), box.pdf, (-1.0, 1.0))
    assert abs(by_quantile - 1.0 / math.sqrt(math.pi)) < 1e-6
    assert abs(by_density - by_quantile) < 1e-6
    print(f"✅ s(F0): sigma for Gaussians, 1/sqrt(pi) = {by_quantile:.6f} for U(-1, 1)")

    pair = ScalarLinearPair(a1=-1.0, c1=1.0, a2=-0.4, c2=1.5, g1=0.8, g2=0.5)
    mu0 = 0.7
    for t in TIMES:
        spread = [c * g * math.sqrt(math.expm1(2 * a * t) / (2 * a))
                  for a, c, g in ((-1.0, 1.0, 0.8), (-0.4, 1.5, 0.5))]
        first = Gaussian([mu0 * math.exp(-t)], [[spread[0] ** 2]])
        second = Gaussian([1.5 * mu0 * math.exp(-0.4 * t)], [[spread[1] ** 2]])
        expected = w2_gaussian(first, second)
        assert abs(w2_scalar_sde(pair, mu0 ** 2, 0.0, t) - expected) < 1e-12
        assert abs(w2_scalar_sde_gaussian(pair, mu0, 0.0, t) - expected) < 1e-12
    print("✅ point-mass start matches the Gaussian closed form")

    quiet = ScalarLinearPair(a1=-1.0, c1=1.0, a2=-0.4, c2=1.5)
    assert np.isclose(w2_scalar_sde_gaussian(quiet, 0.2, 0.6, 1.0), w2_scalar_linear(quiet, 0.4, 1.0))
    print("✅ zero diffusion reduces to the linear gap")


def test_lti_bounds():
    print("\n🧪 Test 5: LTI Bounds")
    print("-" * 50)

    rng = np.random.default_rng(8)

    def stable(size=2):
        matrix = rng.normal(size=(size, size))
        return matrix * rng.uniform(0.3, 0.95) / np.max(np.abs(np.linalg.eigvals(matrix)))

    for _ in range(100):
        rows = lti_bound_series(LtiPair(stable(), stable(), np.eye(2)), 20)
        assert len(rows) == 21
        assert all(row.w2 <= row.sharper + 1e-10 for row in rows)
    print("✅ W2 below the square-root bound on 100 random pairs")

    for _ in range(20):
        a = np.diag(rng.uniform(-0.9, 0.9, 2))
        a_hat = np.diag(rng.uniform(-0.9, 0.9, 2))
        p0 = np.diag(rng.uniform(0.5, 2.0, 2))
        for row in lti_bound_series(LtiPair(a, a_hat, p0), 20):
            assert abs(row.w2 - row.sharper) < 1e-10
    print("✅ equality on 20 commuting cases")

    a = [[0.9, 0.2], [0.0, 0.7]]
    same = lti_bounds(LtiPair(a, a, np.eye(2)), 5)
    assert same.w2 == 0.0 and same.sharper < 1e-12
    assert same.omega is not None and same.omega > 0
    print(f"✅ identical systems: W2 = sharper = 0, spectral bound {same.omega:.4f}")

    small = lti_bounds(LtiPair(a, a, 0.1 * np.eye(2)), 0)
    assert math.isnan(small.omega) and small.warnings == ["OMEGA_RADICAND"]
    print("✅ negative radicand reported as OMEGA_RADICAND")

    try:
        LtiPair([[1.1]], [[0.5]], [[1.0]])
        raise AssertionError("unstable A accepted")
    except ValueError:
        print("✅ non-Schur A rejected")


def test_beta_beta():
    print("\n🧪 Test 6: Beta-Beta Distance")
    print("-" * 50)

    rng = np.random.default_rng(9)
    for alpha, beta in rng.uniform(0.5, 5.0, size=(20, 2)):
        oracle = w2_1d(cdf(ScaledBeta(alpha, beta)), cdf(ScaledBeta(beta, alpha)))
        assert abs(beta_beta_w2(alpha, beta) - oracle) < 1e-6, f"({alpha}, {beta})"
    print("✅ 20 random pairs match the quantile formula")

    for alpha, beta in [(0.7, 3.0), (2.0, 2.5), (4.5, 1.2)]:
        numeric, _ = integrate.quad(lambda t: betaincinv(alpha, beta, t) ** 2, 0.0, 1.0, epsabs=1e-12)
        assert abs(beta_second_moment(alpha, beta) - numeric) < 1e-8
    print("✅ second-moment identity")

    assert beta_beta_w2(2.0, 2.0) == 0.0
    print("✅ symmetric parameters give zero")


def test_cubic_reachability():
    print("\n🧪 Test 7: Cubic Model Reachability")
    print("-" * 50)

    verdict = prajna_check([0.85, 0.95], [0.55, 0.65], [0.5, 2.0], 4.0)
    assert round(verdict.witness, 12) == 1.21
    assert verdict.verdict == "invalidated"
    print(f"✅ witness {verdict.witness:.2f}: {verdict.verdict}")

    assert prajna_check([0.85, 0.95], [0.55, 0.65], [0.5, 2.0], 1.0).verdict == "not-invalidated"
    try:
        prajna_check([0.85, 0.95], [-0.1, 0.65], [0.5, 2.0], 4.0)
        raise AssertionError("X_T containing 0 accepted")
    except ValueError:
        print("✅ short horizon not invalidated, X_T around 0 rejected")

    x0 = np.array([0.3, -0.8])
    assert np.allclose(cubic_flow(x0, 0.5, 2.0), x0 / np.sqrt(1.0 + 2.0 * x0 ** 2))

    p, t = 0.1, 1.0
    preimage = [x / math.sqrt(1.0 - 2.0 * x * x * p * t) for x in (0.55, 0.65)]
    xi_t = uniform_interval_density([0.55, 0.65])
    matched = prajna_transport_gap(xi_t, t, p, UniformBox([preimage[0]], [preimage[1]]), preimage)
    shifted = prajna_transport_gap(xi_t, t, p, UniformBox([preimage[0] + 0.1], [preimage[1] + 0.1]), preimage)
    assert abs(matched.recovered_mass - 1.0) < 1e-4
    assert matched.w2 < 0.01 < shifted.w2
    print(f"✅ recovered mass {matched.recovered_mass:.6f}, gaps {matched.w2:.4f} < {shifted.w2:.4f}")


def test_diagnostics():
    print("\n🧪 Test 8: KL and Log-Noise Diagnostics")
    print("-" * 50)

    rng = np.random.default_rng(10)
    for _ in range(100):
        root = rng.normal(size=(3, 3))
        sigma = root @ root.T + 0.1 * np.eye(3)
        result = gaussian_kl_diag(rng.normal(size=3), rng.normal(size=3), sigma)
        low, high = result.bracket
        assert low - 1e-12 <= result.ratio <= high + 1e-12
    print("✅ KL/W2 ratio inside the Rayleigh bracket on 100 instances")

    sigma = np.diag([4.0, 1.0])
    along_max = gaussian_kl_diag([0.0, 0.0], [3.0, 0.0], sigma)
    along_min = gaussian_kl_diag([0.0, 0.0], [0.0, 3.0], sigma)
    assert abs(along_max.ratio - along_max.bracket[0]) < 1e-9
    assert abs(along_min.ratio - along_min.bracket[1]) < 1e-9
    assert gaussian_kl_diag([1.0, 1.0], [1.0, 1.0], sigma).ratio is None
    print("✅ eigenvector-aligned shifts attain the bracket ends")

    result = log_noise_sign(stats.norm(), 0.0, 4.0)
    assert abs(result.expectation + 0.3176) < 1e-3
    assert result.classification == "as-zero"
    print(f"✅ standard normal on [0, 4]: E[log zeta] = {result.expectation:.4f} ({result.classification})")

    assert log_noise_sign(atom=1.0).classification == "ip-zero"
    assert log_noise_sign(atom=math.e).classification == "stationary-exists"
    print("✅ point masses at 1 and e classified")


TESTS = [
    test_scalar_linear_vs_pipeline,
    test_arcsine_above_uniform,
    test_affine_and_discrete,
    test_sde_gap,
    test_lti_bounds,
    test_beta_beta,
    test_cubic_reachability,
    test_diagnostics,
]


def main():
    """Run all tests"""
    print("=" * 50)
    print("Step 5 Analytic Test Suite")
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
