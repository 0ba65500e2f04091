"""Dimension estimators and entropy-based dimension bounds.

Three families live here: the Moran-equation similarity dimension of the
contracting-regime attractor, statistical estimators over sampled point
sets (box counting, pair-correlation scaling), and the closed-form upper
bounds on the dimension of coded Bernoulli measures whose supremum over p
exhibits the product-1/4 bifurcation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import Params
from .measures import BernoulliSpec, contraction_of, entropy_of
from . import rng

LN2 = float(np.log(2.0))

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


class RegimeError(ValueError):
    """Operation requires the contracting regime (beta1 + beta2 < 1)."""


@dataclass(frozen=True)
class MoranResult:
    d: float
    residual: float


@dataclass(frozen=True)
class DimensionFit:
    """Log-log regression over a window of scales.

    scale_window holds dyadic exponents (k means scale 2^-k); counts are the
    per-scale occupancy or pair counts that entered the fit.
    """

    slope: float
    intercept: float
    r_squared: float
    scale_window: tuple[float, float]
    counts: np.ndarray

    @property
    def flagged(self) -> bool:
        """True when the fit quality is too low to trust the slope."""
        return not self.r_squared > 0.99


@dataclass(frozen=True)
class BoundProfile:
    """Per-p dimension bounds over the Bernoulli family and their supremum."""

    ps: np.ndarray
    entropy: np.ndarray
    contraction: np.ndarray
    bound_vertical: np.ndarray
    bound_horizontal: np.ndarray
    bound_combined: np.ndarray
    sup_p: float
    sup_value: float


def moran_exponent(params: Params, tol: float = 1e-12) -> MoranResult:
    """Bisection root of beta1^d + beta2^d = 1 on [1e-9, 64].

    The left side is strictly decreasing in d (limit 2 at 0+, limit 0 at
    infinity), so the bracket is guaranteed once beta1 + beta2 < 1.
    """
    if not params.contracting:
        raise RegimeError(
            f"Moran exponent needs beta1 + beta2 < 1, got {params.beta1} + {params.beta2}"
        )
    b1, b2 = params.beta1, params.beta2

    def g(t: float) -> float:
        return b1**t + b2**t - 1.0

    lo, hi = 1e-9, 64.0
    while g(hi) > 0.0:  # defensive; unreachable for valid params
        hi *= 2.0
    mid, res = lo, g(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        res = g(mid)
        if abs(res) < tol or mid == lo or mid == hi:
            break
        if res > 0.0:
            lo = mid
        else:
            hi = mid
    return MoranResult(d=mid, residual=res)


def theoretical_attractor_dim(params: Params) -> float:
    """Exact attractor dimension: Moran exponent + 1, or 2 in the covering regime."""
    if params.contracting:
        return moran_exponent(params).d + 1.0
    return 2.0


# ---------------------------------------------------------------------------
# box counting


def _as_array(points) -> np.ndarray:
    arr = getattr(points, "points", points)
    return np.asarray(arr, dtype=float)


def box_count(points, k: int) -> int:
    """Occupied cells of the regular 2^k-per-axis grid over [-1, 1]^dim."""
    if not 1 <= k <= 24:
        raise ValueError("k must lie in [1, 24]")
    arr = _as_array(points)
    if arr.shape[0] == 0:
        raise ValueError("box_count requires a nonempty point set")
    cells = 1 << k
    idx = np.clip(((arr + 1.0) * (cells / 2.0)).astype(np.int64), 0, cells - 1)
    if arr.ndim == 1:
        ids = idx
    else:
        ids = idx[:, 0] * cells + idx[:, 1]
    return int(np.unique(ids).size)


def fit_log_counts(window: tuple[int, int], counts) -> DimensionFit:
    """OLS of ln(count) against k * ln 2 over the window; slope estimates dim."""
    k_min, k_max = window
    if k_max <= k_min or k_min < 1:
        raise ValueError(f"degenerate scale window {window!r}")
    counts = np.asarray(counts, dtype=float)
    ks = np.arange(k_min, k_max + 1)
    if counts.shape != ks.shape:
        raise ValueError("need one count per scale in the window")
    x = ks * LN2
    y = np.log(counts)
    slope, intercept, r2 = _ols(x, y)
    return DimensionFit(slope, intercept, r2, (int(k_min), int(k_max)), counts)


def fit_box_dimension(points, window: tuple[int, int] = (4, 10)) -> DimensionFit:
    """Box-counting dimension estimate of a point set over dyadic scales."""
    k_min, k_max = window
    if k_max <= k_min or k_min < 1:
        raise ValueError(f"degenerate scale window {window!r}")
    counts = [box_count(points, k) for k in range(k_min, k_max + 1)]
    return fit_log_counts(window, counts)


def _ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    sxy = float(np.sum((x - xm) * (y - ym)))
    syy = float(np.sum((y - ym) ** 2))
    slope = sxy / sxx
    intercept = ym - slope * xm
    if syy == 0.0:  # constant data is fit perfectly by the constant line
        return slope, intercept, 1.0
    return slope, intercept, (sxy * sxy) / (sxx * syy)


# ---------------------------------------------------------------------------
# pair-correlation dimension


def correlation_dimension(
    points,
    radii,
    max_pairs: int = 10_000_000,
    pair_seed: int = 0x1D1A,
) -> DimensionFit:
    """Pair-correlation scaling exponent of a point set.

    C(r) is the fraction of point pairs closer than r (Euclidean). When the
    full pair count exceeds max_pairs, pairs are subsampled with the
    counter-based generator, so the estimate is deterministic. The slope of
    ln C against ln r over the given radii estimates the local dimension of
    the sampled measure.
    """
    arr = _as_array(points)
    n = arr.shape[0]
    if n < 1000:
        raise ValueError("correlation_dimension requires at least 1000 points")
    radii = np.asarray(radii, dtype=float)
    if radii.size < 4 or np.any(radii <= 0.0) or np.any(np.diff(radii) >= 0.0):
        raise ValueError("radii must be >= 4 strictly decreasing positive values")
    if arr.ndim == 1:
        arr = arr[:, None]

    total_pairs = n * (n - 1) // 2
    hits = np.zeros(radii.size, dtype=np.int64)
    if total_pairs <= max_pairs:
        n_pairs = total_pairs
        for i in range(n - 1):  # exact pass over all pairs, row block at a time
            d = np.sqrt(np.sum((arr[i + 1 :] - arr[i]) ** 2, axis=1))
            hits += (d[None, :] < radii[:, None]).sum(axis=1)
    else:
        n_pairs = max_pairs
        chunk = 1 << 20
        for start in range(0, max_pairs, chunk):
            m = min(chunk, max_pairs - start)
            u = rng.uniform_block(pair_seed, rng.PAIR_STREAM, start, m, 2)
            i = (u[:, 0] * n).astype(np.int64)
            j = (u[:, 1] * (n - 1)).astype(np.int64)
            j += j >= i  # skew off the diagonal
            d = np.sqrt(np.sum((arr[i] - arr[j]) ** 2, axis=1))
            hits += (d[None, :] < radii[:, None]).sum(axis=1)

    frac = hits / n_pairs
    good = frac > 0.0
    if np.count_nonzero(good) < 2:
        raise ValueError("correlation counts vanish at all but one radius; enlarge radii")
    slope, intercept, r2 = _ols(np.log(radii[good]), np.log(frac[good]))
    window = (float(-np.log2(radii.max())), float(-np.log2(radii.min())))
    return DimensionFit(slope, intercept, r2, window, hits)


# ---------------------------------------------------------------------------
# entropy bounds on coded-measure dimension and the bifurcation supremum


def bound_vertical(spec: BernoulliSpec) -> float:
    """Dimension bound from the dyadic y-factor: entropy / ln 2 + 1."""
    return float(entropy_of(spec.p)) / LN2 + 1.0


def bound_horizontal(spec: BernoulliSpec, params: Params) -> float:
    """Dimension bound from horizontal contraction: entropy / contraction + 1."""
    return float(entropy_of(spec.p)) / float(contraction_of(spec.p, params)) + 1.0


def _combined(p, params: Params):
    h = entropy_of(p)
    return np.minimum(h / LN2, h / contraction_of(p, params)) + 1.0


def sup_bernoulli_bound(
    params: Params, grid: int = 201, refine_tol: float = 1e-9
) -> BoundProfile:
    """Supremum over p of the combined dimension bound, grid scan + refinement.

    The combined bound min(vertical, horizontal) is unimodal in p (minimum
    of a concave function and a quasiconcave ratio); a uniform grid locates
    the mode and golden-section search refines it to refine_tol in p. The
    supremum equals 2 exactly when beta1 * beta2 >= 1/4.
    """
    if grid < 101:
        raise ValueError("grid must be >= 101")
    if refine_tol <= 0.0:
        raise ValueError("refine_tol must be positive")
    ps = np.linspace(0.0, 1.0, grid)
    h = entropy_of(ps)
    xi = contraction_of(ps, params)
    bv = h / LN2 + 1.0
    bh = h / xi + 1.0
    bc = np.minimum(bv, bh)

    best = int(np.argmax(bc))
    lo = ps[max(best - 1, 0)]
    hi = ps[min(best + 1, grid - 1)]
    p_ref, v_ref = _golden_max(lambda p: float(_combined(p, params)), lo, hi, refine_tol)
    if bc[best] >= v_ref:
        sup_p, sup_value = float(ps[best]), float(bc[best])
    else:
        sup_p, sup_value = p_ref, v_ref
    return BoundProfile(
        ps=ps,
        entropy=h,
        contraction=xi,
        bound_vertical=bv,
        bound_horizontal=bh,
        bound_combined=bc,
        sup_p=sup_p,
        sup_value=sup_value,
    )


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    p = c if fc >= fd else d
    return float(p), float(f(p))
