"""
WassVal - Model registry
Built-in models addressable by id from validation configs
"""

import logging
from typing import Any, Callable, Optional

import numpy as np
from scipy import stats

from ..errors import ConfigError
from .models import (
    AdditiveNoiseMap,
    DeterministicMap,
    DynamicsModel,
    MultiplicativeNoiseMap,
    OdeModel,
    OutputBranch,
    SdeModel,
)

logger = logging.getLogger(__name__)

ModelBuilder = Callable[[dict], DynamicsModel]

MODEL_REGISTRY: dict[str, ModelBuilder] = {}

# Damped double-well oscillator x'' = -a x - b sin 2x - c x'
OSCILLATOR_DEFAULTS = {"a": 0.1, "b": 0.5, "c": 1.0}
OSCILLATOR_ATTRACTORS = [[0.0, 0.0], [2.8396, 0.0], [-2.8396, 0.0]]
OSCILLATOR_SADDLES = [[1.7495, 0.0], [-1.7495, 0.0]]


def register_model(model_id: str) -> Callable[[ModelBuilder], ModelBuilder]:
    """Decorator adding a builder to the registry under `model_id`."""
    def decorator(builder: ModelBuilder) -> ModelBuilder:
        if model_id in MODEL_REGISTRY:
            raise ValueError(f"model id {model_id!r} is already registered")
        MODEL_REGISTRY[model_id] = builder
        return builder
    return decorator


def _params(params: Optional[dict], defaults: dict) -> dict:
    merged = dict(defaults)
    for key, value in (params or {}).items():
        if key not in defaults:
            raise ConfigError(f"unknown model parameter {key!r} (expected one of {sorted(defaults)})", code="MODEL")
        merged[key] = value
    return merged


def build_model(model_id: str, params: Optional[dict[str, Any]] = None) -> DynamicsModel:
    """
    Instantiate a registered model.

    Raises:
        ConfigError: unknown model id or parameter (code MODEL)
    """
    if model_id not in MODEL_REGISTRY:
        raise ConfigError(
            f"unknown model id {model_id!r} (registered: {', '.join(sorted(MODEL_REGISTRY))})",
            code="MODEL",
        )
    model = MODEL_REGISTRY[model_id](params or {})
    logger.debug(f"Built model {model_id} with params {params or {}}")
    return model


def oscillator_linearization(a: float, b: float, c: float) -> np.ndarray:
    """Jacobian of the oscillator at the origin."""
    return np.array([[0.0, 1.0], [-(a + 2.0 * b), -c]])


def oscillator_potential(a: float, b: float) -> Callable[[np.ndarray], np.ndarray]:
    """U with U'(x) = a x + b sin 2x."""
    return lambda x: 0.5 * a * np.asarray(x) ** 2 - 0.5 * b * np.cos(2.0 * np.asarray(x))


def _oscillator_drift(a: float, b: float, c: float):
    def drift(x: np.ndarray) -> np.ndarray:
        return np.column_stack([x[:, 1], -a * x[:, 0] - b * np.sin(2.0 * x[:, 0]) - c * x[:, 1]])
    return drift


def _linear_drift(matrix: np.ndarray):
    return lambda x: x @ matrix.T


# === Continuous-time oscillator ===

@register_model("example1_truth")
def _example1_truth(params: dict) -> OdeModel:
    p = _params(params, OSCILLATOR_DEFAULTS)
    c = float(p["c"])
    return OdeModel(
        dim=2,
        drift=_oscillator_drift(p["a"], p["b"], c),
        divergence=lambda x: np.full(x.shape[0], -c),
        name="example1_truth",
    )


@register_model("example1_linear")
def _example1_linear(params: dict) -> OdeModel:
    p = _params(params, OSCILLATOR_DEFAULTS)
    matrix = oscillator_linearization(p["a"], p["b"], p["c"])
    trace = float(np.trace(matrix))
    return OdeModel(
        dim=2,
        drift=_linear_drift(matrix),
        divergence=lambda x: np.full(x.shape[0], trace),
        name="example1_linear",
    )


@register_model("example2_truth")
def _example2_truth(params: dict) -> SdeModel:
    p = _params(params, {**OSCILLATOR_DEFAULTS, "q": 0.2})
    return SdeModel(
        dim=2,
        drift=_oscillator_drift(p["a"], p["b"], p["c"]),
        diffusion=np.array([[0.0], [1.0]]),
        noise_rates=np.array([p["q"]]),
        name="example2_truth",
    )


@register_model("example2_linear")
def _example2_linear(params: dict) -> SdeModel:
    p = _params(params, {**OSCILLATOR_DEFAULTS, "q": 0.2})
    return SdeModel(
        dim=2,
        drift=_linear_drift(oscillator_linearization(p["a"], p["b"], p["c"])),
        diffusion=np.array([[0.0], [1.0]]),
        noise_rates=np.array([p["q"]]),
        name="example2_linear",
    )


# === Maps ===

@register_model("chebyshev")
def _chebyshev(params: dict) -> DeterministicMap:
    _params(params, {})
    return DeterministicMap(
        transform=lambda x: np.cos(2.0 * np.arccos(np.clip(x, -1.0, 1.0))),
        domain=(-1.0, 1.0),
        analytic="chebyshev",
        name="chebyshev",
    )


@register_model("logistic")
def _logistic(params: dict) -> DeterministicMap:
    _params(params, {})
    return DeterministicMap(
        transform=lambda x: 4.0 * x * (1.0 - x),
        domain=(0.0, 1.0),
        analytic="logistic",
        name="logistic",
    )


@register_model("logistic_multiplicative")
def _logistic_multiplicative(params: dict) -> MultiplicativeNoiseMap:
    p = _params(params, {"noise_upper": 4.0})
    return MultiplicativeNoiseMap(
        state_map=lambda x: x * (1.0 - x),
        noise=stats.truncnorm(0.0, p["noise_upper"]),
        domain=(0.0, 1.0),
        name="logistic_multiplicative",
    )


@register_model("identity_additive")
def _identity_additive(params: dict) -> AdditiveNoiseMap:
    p = _params(params, {"noise_scale": 1.0})
    return AdditiveNoiseMap(
        state_map=lambda x: np.asarray(x, dtype=float),
        noise=stats.norm(scale=p["noise_scale"]),
        name="identity_additive",
    )


@register_model("scalar_linear_map")
def _scalar_linear_map(params: dict) -> DeterministicMap:
    p = _params(params, {"a": 0.5, "c": 1.0})
    a, c = float(p["a"]), float(p["c"])
    return DeterministicMap(
        transform=lambda x: a * np.asarray(x, dtype=float),
        output=lambda x: c * x,
        name="scalar_linear_map",
    )


# === Scalar and cubic ODEs ===

@register_model("cubic")
def _cubic(params: dict) -> OdeModel:
    """x' = -p x^3, with p either fixed or carried as a second state component."""
    p = _params(params, {"p": 1.0, "extended": False})
    if p["extended"]:
        return OdeModel(
            dim=2,
            drift=lambda x: np.column_stack([-x[:, 1] * x[:, 0] ** 3, np.zeros(x.shape[0])]),
            divergence=lambda x: -3.0 * x[:, 1] * x[:, 0] ** 2,
            output=lambda x: x[:, :1],
            n_params=1,
            name="cubic",
        )
    rate = float(p["p"])
    return OdeModel(
        dim=1,
        drift=lambda x: -rate * x ** 3,
        divergence=lambda x: -3.0 * rate * x[:, 0] ** 2,
        name="cubic",
    )


def _scalar_output_branch(c: float, d: float = 0.0) -> OutputBranch:
    return OutputBranch(
        inverse=lambda y: (np.asarray(y) - d) / c,
        jacobian_det=lambda x: np.full(np.shape(x)[0], c),
    )


@register_model("scalar_linear")
def _scalar_linear(params: dict) -> OdeModel:
    p = _params(params, {"a": -1.0, "c": 1.0})
    a, c = float(p["a"]), float(p["c"])
    return OdeModel(
        dim=1,
        drift=lambda x: a * x,
        divergence=lambda x: np.full(x.shape[0], a),
        output=lambda x: c * x,
        output_branches=(_scalar_output_branch(c),),
        name="scalar_linear",
    )


@register_model("scalar_affine")
def _scalar_affine(params: dict) -> OdeModel:
    p = _params(params, {"a": -1.0, "b": 0.0, "c": 1.0, "d": 0.0})
    a, b, c, d = (float(p[key]) for key in ("a", "b", "c", "d"))
    return OdeModel(
        dim=1,
        drift=lambda x: a * x + b,
        divergence=lambda x: np.full(x.shape[0], a),
        output=lambda x: c * x + d,
        output_branches=(_scalar_output_branch(c, d),),
        name="scalar_affine",
    )


@register_model("scalar_sde")
def _scalar_sde(params: dict) -> SdeModel:
    p = _params(params, {"a": -1.0, "b": 1.0, "c": 1.0, "q": 1.0})
    a, c = float(p["a"]), float(p["c"])
    return SdeModel(
        dim=1,
        drift=lambda x: a * x,
        diffusion=np.array([[float(p["b"])]]),
        noise_rates=np.array([p["q"]]),
        output=lambda x: c * x,
        name="scalar_sde",
    )
