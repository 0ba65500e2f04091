"""Bernoulli measures on the symbol space and their pushforwards.

A Bernoulli measure draws symbols i.i.d., +1 with probability p. Its metric
entropy and its average horizontal log-contraction under the coding both
have closed forms; sampling pushes random words through the coding maps.
The density_report histogram is a heuristic probe of absolute continuity:
it cannot certify a density, only flag mass concentration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Params
from .symbolic import DEFAULT_TRUNCATION, SymbolWord, sample_coded_points, sample_coded_x
from .dynamics import PointSet
from . import rng


@dataclass(frozen=True)
class BernoulliSpec:
    """i.i.d. symbol distribution: +1 with probability p, -1 otherwise."""

    p: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p!r}")


def entropy_of(p) -> np.ndarray | float:
    """Closed-form Bernoulli entropy in nats, vectorized; 0*ln(0) = 0."""
    arr = np.asarray(p, dtype=float)
    out = np.zeros_like(arr)
    interior = (arr > 0.0) & (arr < 1.0)
    q = arr[interior]
    out[interior] = -(q * np.log(q) + (1.0 - q) * np.log1p(-q))
    return out if arr.ndim else float(out)


def contraction_of(p, params: Params) -> np.ndarray | float:
    """Average horizontal log-contraction -(p ln b1 + (1-p) ln b2), vectorized."""
    arr = np.asarray(p, dtype=float)
    out = -(arr * np.log(params.beta1) + (1.0 - arr) * np.log(params.beta2))
    return out if arr.ndim else float(out)


def entropy(spec: BernoulliSpec) -> float:
    """Metric entropy of the Bernoulli measure, in nats; max ln 2 at p = 1/2."""
    return float(entropy_of(spec.p))


def contraction_rate(spec: BernoulliSpec, params: Params) -> float:
    """Mean log-contraction rate governing cylinder diameters; always > 0."""
    return float(contraction_of(spec.p, params))


def sample_word(spec: BernoulliSpec, length: int, seed: int, index: int = 0) -> SymbolWord:
    """One random word; deterministic per (seed, index)."""
    if length < 1:
        raise ValueError("length must be >= 1")
    block = rng.symbol_block(seed, rng.FUTURE_STREAM, index, 1, length, spec.p)
    return SymbolWord(block[0])


def sample_word_block(spec: BernoulliSpec, count: int, length: int, seed: int,
                      start: int = 0) -> np.ndarray:
    """(count, length) matrix of independent words, rows keyed by index."""
    return rng.symbol_block(seed, rng.FUTURE_STREAM, start, count, length, spec.p)


def log_word_mass_batch(symbols: np.ndarray, spec: BernoulliSpec) -> np.ndarray:
    """ln of the Bernoulli cylinder mass p^{#+1} (1-p)^{#-1} per row.

    Log space keeps length-10^4 words representable. Degenerate p would put
    -inf masses on the losing symbol, so the open interval is required here.
    """
    if not 0.0 < spec.p < 1.0:
        raise ValueError("log_word_mass_batch requires p in (0, 1)")
    sym = np.asarray(symbols, dtype=np.int8)
    if sym.ndim != 2 or sym.shape[1] == 0:
        raise ValueError("expected a nonempty (n, length) symbol matrix")
    minus = np.count_nonzero(sym == -1, axis=1).astype(float)
    plus = sym.shape[1] - minus
    return plus * np.log(spec.p) + minus * np.log(1.0 - spec.p)


def pushforward_sample(
    spec: BernoulliSpec,
    params: Params,
    n: int,
    word_length: int = DEFAULT_TRUNCATION,
    seed: int = 0,
    threads: int = 1,
) -> PointSet:
    """n samples of the coded x-marginal (the self-similar measure on [-1, 1])."""
    values = sample_coded_x(params, n, seed, spec.p, word_length, threads)
    meta = {
        "kind": "pushforward",
        "seed": int(seed),
        "count": int(n),
        "truncation": int(word_length),
        "beta1": params.beta1,
        "beta2": params.beta2,
        "p": spec.p,
    }
    return PointSet(values, meta)


def product_sample(
    spec: BernoulliSpec,
    params: Params,
    n: int,
    word_length: int = DEFAULT_TRUNCATION,
    seed: int = 0,
    threads: int = 1,
) -> PointSet:
    """n planar samples of (x-pushforward) x (uniform y via fair dyadic pasts)."""
    pts = sample_coded_points(params, n, seed, spec.p, word_length, threads)
    meta = {
        "kind": "product",
        "seed": int(seed),
        "count": int(n),
        "truncation": int(word_length),
        "beta1": params.beta1,
        "beta2": params.beta2,
        "p": spec.p,
    }
    return PointSet(pts, meta)


# ---------------------------------------------------------------------------
# empirical density diagnostics


@dataclass(frozen=True)
class DensityReport:
    """Histogram mass summary over a regular grid on [-1, 1]^dim.

    l2_stat estimates the integral of the squared histogram density; it
    equals 1/(domain measure) exactly for the uniform distribution and grows
    as mass concentrates.
    """

    counts: np.ndarray
    total: int
    bins: int
    dim: int
    l2_stat: float
    max_cell_mass: float

    @property
    def masses(self) -> np.ndarray:
        return self.counts / self.total


def density_report(points: PointSet | np.ndarray, bins: int) -> DensityReport:
    """Bin points on a bins-per-axis grid over [-1, 1]^dim and summarize mass."""
    arr = points.points if isinstance(points, PointSet) else np.asarray(points, dtype=float)
    if arr.shape[0] == 0:
        raise ValueError("density_report requires a nonempty point set")
    if bins < 2:
        raise ValueError("bins must be >= 2")
    if np.abs(arr).max() > 1.0 + 1e-12:
        raise ValueError("points must lie in [-1, 1]^dim")
    if arr.ndim == 1:
        counts, _ = np.histogram(arr, bins=bins, range=(-1.0, 1.0))
        cell_measure = 2.0 / bins
        dim = 1
    else:
        counts, _, _ = np.histogram2d(
            arr[:, 0], arr[:, 1], bins=bins, range=[[-1.0, 1.0], [-1.0, 1.0]]
        )
        cell_measure = (2.0 / bins) ** 2
        dim = 2
    total = int(arr.shape[0])
    masses = counts / total
    l2 = float(np.sum(masses**2) / cell_measure)
    return DensityReport(
        counts=counts,
        total=total,
        bins=int(bins),
        dim=dim,
        l2_stat=l2,
        max_cell_mass=float(masses.max()),
    )
