"""The generalized Baker's transformation, orbits, and attractor sampling.

The map stretches the square vertically by 2 and contracts each half
horizontally: the upper half (y >= 0) by beta1 toward x = +1, the lower half
by beta2 toward x = -1. Attractor points are sampled through the symbolic
coding rather than by forward iteration, so each sample is an attractor
point up to a quantified series-truncation error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .params import Params
from .symbolic import (
    DEFAULT_TRUNCATION,
    BiWord,
    code_x_batch,
    dyadic_value_batch,
    sample_coded_points,
)
from . import rng


class Regime(enum.Enum):
    CONTRACTING = "Contracting"
    COVERING = "Covering"


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class PointSet:
    """Sampled points plus the metadata that reproduces them exactly."""

    points: np.ndarray  # (n,) for 1-D sets, (n, 2) for planar sets
    meta: dict

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return 1 if self.points.ndim == 1 else int(self.points.shape[1])


def regime(params: Params) -> Regime:
    """Covering iff beta1 + beta2 >= 1 (the boundary counts as covering)."""
    return Regime.CONTRACTING if params.contracting else Regime.COVERING


def apply_map(p: Point2 | tuple[float, float], params: Params) -> Point2:
    """One step of the transformation; y = 0 takes the upper branch."""
    x, y = p
    if y >= 0.0:
        return Point2(params.beta1 * x + (1.0 - params.beta1), 2.0 * y - 1.0)
    return Point2(params.beta2 * x - (1.0 - params.beta2), 2.0 * y + 1.0)


def apply_map_batch(xy: np.ndarray, params: Params) -> np.ndarray:
    """Vectorized map step on an (n, 2) array."""
    x, y = xy[:, 0], xy[:, 1]
    upper = y >= 0.0
    nx = np.where(upper, params.beta1 * x + (1.0 - params.beta1),
                  params.beta2 * x - (1.0 - params.beta2))
    ny = np.where(upper, 2.0 * y - 1.0, 2.0 * y + 1.0)
    return np.column_stack([nx, ny])


def iterate(p: Point2 | tuple[float, float], n: int, params: Params) -> list[Point2]:
    """Orbit segment [p, f(p), ..., f^n(p)] of length n + 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    orbit = [Point2(*p)]
    for _ in range(n):
        orbit.append(apply_map(orbit[-1], params))
    return orbit


def branch_x_images(params: Params) -> tuple[tuple[float, float], tuple[float, float]]:
    """x-intervals covered by the two branch images: [1-2b1, 1] and [-1, -1+2b2].

    They overlap exactly when beta1 + beta2 >= 1, which is the covering
    criterion for the attractor.
    """
    return (1.0 - 2.0 * params.beta1, 1.0), (-1.0, -1.0 + 2.0 * params.beta2)


def default_weights(params: Params) -> tuple[float, float]:
    """Sampling weights for the +1/-1 future symbols.

    Contracting regime: (beta1^d, beta2^d) with d the Moran exponent, so the
    empirical measure matches the full-dimension Cantor measure. Covering
    regime: fair coin.
    """
    if params.contracting:
        from .dimension import moran_exponent

        d = moran_exponent(params).d
        return params.beta1**d, params.beta2**d
    return 0.5, 0.5


def attractor_sample(
    params: Params,
    n: int,
    seed: int,
    weights: tuple[float, float] | None = None,
    truncation: int = DEFAULT_TRUNCATION,
    threads: int = 1,
) -> PointSet:
    """n coded points of the attractor; deterministic given (seed, weights).

    Future symbols are drawn i.i.d. +1 with probability weights[0], past
    symbols fair, and each biword is pushed through the coding map.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if weights is None:
        weights = default_weights(params)
    w1, w2 = weights
    if w1 < 0.0 or w2 < 0.0 or abs(w1 + w2 - 1.0) > 1e-12:
        raise ValueError(f"weights must be a probability pair, got {weights!r}")
    pts = sample_coded_points(params, n, seed, w1, truncation, threads)
    meta = {
        "kind": "attractor",
        "seed": int(seed),
        "count": int(n),
        "truncation": int(truncation),
        "beta1": params.beta1,
        "beta2": params.beta2,
        "weights": (float(w1), float(w2)),
    }
    return PointSet(pts, meta)


# ---------------------------------------------------------------------------
# conjugacy between the map and the shift


def conjugacy_defect(w: BiWord, params: Params, truncation: int) -> float:
    """Max-norm gap between map(code(shifted word)) and code(word).

    Both sides agree on infinite words; on truncated words the gap is
    bounded by the combined series tail bounds (plus float rounding).
    """
    if truncation < 2:
        raise ValueError("truncation must be at least 2")
    if len(w.future) < truncation:
        raise ValueError(f"future length {len(w.future)} shorter than truncation {truncation}")
    past = w.past.symbols[None, :]
    future = w.future.symbols[None, :truncation]
    return float(conjugacy_defect_batch(past, future, params)[0])


def conjugacy_defect_batch(past: np.ndarray, future: np.ndarray, params: Params) -> np.ndarray:
    """Row-wise conjugacy defect for (n, Lp) past and (n, Lf) future matrices."""
    past = np.asarray(past, dtype=np.int8)
    future = np.asarray(future, dtype=np.int8)
    if future.shape[1] < 2:
        raise ValueError("future words must have length >= 2")
    x_direct = code_x_batch(future, params)[0]
    y_direct = dyadic_value_batch(past)[0]

    shifted_past = np.concatenate([future[:, :1], past], axis=1)
    x_shifted = code_x_batch(future[:, 1:], params)[0]
    y_shifted = dyadic_value_batch(shifted_past)[0]
    mapped = apply_map_batch(np.column_stack([x_shifted, y_shifted]), params)

    return np.maximum(np.abs(mapped[:, 0] - x_direct), np.abs(mapped[:, 1] - y_direct))


def conjugacy_defects_random(
    params: Params, n_words: int, truncation: int, seed: int
) -> np.ndarray:
    """Defects of n random fair biwords (the measure-one generic case)."""
    future = rng.symbol_block(seed, rng.FUTURE_STREAM, 0, n_words, truncation, 0.5)
    past = rng.symbol_block(seed, rng.PAST_STREAM, 0, n_words, truncation, 0.5)
    return conjugacy_defect_batch(past, future, params)
