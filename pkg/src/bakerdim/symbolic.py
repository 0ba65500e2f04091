"""Finite symbol words and their coding onto the square.

Words are finite blocks over {-1, +1}. The one-sided coding evaluates the
self-similar series

    sum_k  s_k * beta2^{m_k} * beta1^{k - m_k + 1},

where m_k counts the -1 symbols among s_0..s_k, then rescales the result
affinely onto [-1, 1]. The two-sided coding pairs that x-value with the
signed dyadic expansion of the past word. All series are truncated at
finite length; every value carries an explicit geometric tail bound, so a
result is a certified interval around the ideal infinite-word quantity.

Batch variants operate on (n, length) int8 matrices, one word per row, and
are the workhorses behind the samplers.
"""

from __future__ import annotations

from dataclasses import dataclass
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .params import Params
from . import rng

DEFAULT_TRUNCATION = 64  # max(beta)^64 < 1e-12 for beta <= 0.649

_CHUNK = 1 << 16


@dataclass(frozen=True)
class SymbolWord:
    """Finite word over {-1, +1}; index 0 is the symbol consumed first."""

    symbols: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.symbols, dtype=np.int8)
        if arr.ndim != 1:
            raise ValueError("a word is a one-dimensional symbol sequence")
        if arr.size and not np.all((arr == 1) | (arr == -1)):
            raise ValueError("word symbols must be -1 or +1")
        object.__setattr__(self, "symbols", arr)

    def __len__(self) -> int:
        return int(self.symbols.size)

    @classmethod
    def constant(cls, length: int, symbol: int) -> "SymbolWord":
        return cls(np.full(length, symbol, dtype=np.int8))

    def extended(self, symbol: int) -> "SymbolWord":
        return SymbolWord(np.append(self.symbols, np.int8(symbol)))


@dataclass(frozen=True)
class BiWord:
    """Truncated two-sided sequence: past read as ..s_-2 s_-1, future as s_0 s_1..

    past[0] is s_{-1}, the most significant dyadic digit of the y-coordinate.
    """

    past: SymbolWord
    future: SymbolWord

    def shifted(self) -> "BiWord":
        """Move future[0] to the front of the past (the shift the conjugacy undoes)."""
        if len(self.future) == 0:
            raise ValueError("cannot shift a biword with empty future")
        new_past = np.concatenate(([self.future.symbols[0]], self.past.symbols))
        return BiWord(SymbolWord(new_past), SymbolWord(self.future.symbols[1:]))


@dataclass(frozen=True)
class ValueWithTail:
    """Finite-truncation value plus a bound on the omitted tail.

    The ideal infinite-word quantity lies in [value - tail_bound, value + tail_bound].
    """

    value: float
    tail_bound: float

    def __post_init__(self):
        if self.tail_bound < 0.0:
            raise ValueError("tail_bound must be nonnegative")


def count_minus(word: SymbolWord, k: int) -> int:
    """Number of -1 symbols among word[0..k] inclusive."""
    if not 0 <= k < len(word):
        raise IndexError(f"k={k} out of range for word of length {len(word)}")
    return int(np.count_nonzero(word.symbols[: k + 1] == -1))


# ---------------------------------------------------------------------------
# the self-similar series and its affine rescaling


def coding_series_batch(symbols: np.ndarray, params: Params) -> tuple[np.ndarray, float]:
    """Row-wise truncated series value for a (n, length) +/-1 matrix.

    The k-th term's weight is a running product: multiply by beta1 for +1,
    beta2 for -1. Returns (values, tail_bound) with the shared bound
    2 * m^length / (1 - m), m = max(beta1, beta2).
    """
    sym = np.asarray(symbols, dtype=np.int8)
    if sym.ndim != 2:
        raise ValueError("expected a (n, length) symbol matrix")
    n, length = sym.shape
    if length == 0:
        raise ValueError("words must be nonempty")
    b1, b2 = params.beta1, params.beta2
    weight = np.ones(n)
    total = np.zeros(n)
    for k in range(length):
        col = sym[:, k]
        weight = weight * np.where(col > 0, b1, b2)
        total += col * weight
    m = params.max_rate
    tail = 2.0 * m**length / (1.0 - m)
    return total, tail


def coding_series(word: SymbolWord, params: Params) -> ValueWithTail:
    """Truncated self-similar series of a single word, with tail bound."""
    if len(word) == 0:
        raise ValueError("coding_series requires a nonempty word")
    values, tail = coding_series_batch(word.symbols[None, :], params)
    return ValueWithTail(float(values[0]), tail)


def series_endpoints(params: Params) -> tuple[float, float]:
    """Extremes of the full series: all -1 gives a, all +1 gives b."""
    a = -params.beta2 / (1.0 - params.beta2)
    b = params.beta1 / (1.0 - params.beta1)
    return a, b


def rescale(x: float, params: Params) -> float:
    """Affine map sending the series range [a, b] onto [-1, 1]."""
    a, b = series_endpoints(params)
    return 2.0 * (x - a) / (b - a) - 1.0


def rescale_slope(params: Params) -> float:
    a, b = series_endpoints(params)
    return 2.0 / (b - a)


def code_x_batch(symbols: np.ndarray, params: Params) -> tuple[np.ndarray, float]:
    """Rescaled series values in [-1, 1], row-wise, plus the rescaled tail bound."""
    values, tail = coding_series_batch(symbols, params)
    a, b = series_endpoints(params)
    return 2.0 * (values - a) / (b - a) - 1.0, tail * rescale_slope(params)


def code_x(word: SymbolWord, params: Params) -> ValueWithTail:
    """x-coordinate coding of a future word: rescaled series with tail bound."""
    raw = coding_series(word, params)
    return ValueWithTail(rescale(raw.value, params), raw.tail_bound * rescale_slope(params))


# ---------------------------------------------------------------------------
# dyadic y-coordinate


def dyadic_value_batch(past: np.ndarray) -> tuple[np.ndarray, float]:
    """Row-wise signed dyadic expansion sum_k past[:, k-1] * 2^-k."""
    mat = np.asarray(past, dtype=np.int8)
    if mat.ndim != 2:
        raise ValueError("expected a (n, length) symbol matrix")
    length = mat.shape[1]
    if length == 0:
        return np.zeros(mat.shape[0]), 1.0
    weights = 0.5 ** np.arange(1, length + 1)
    return mat @ weights, 0.5**length


def dyadic_value(past: SymbolWord) -> ValueWithTail:
    """Signed dyadic expansion of a past word; empty words give (0, 1)."""
    values, tail = dyadic_value_batch(past.symbols[None, :])
    return ValueWithTail(float(values[0]), tail)


def code_point(w: BiWord, params: Params) -> tuple[ValueWithTail, ValueWithTail]:
    """Two-sided coding: (x from the future word, y from the past word)."""
    if len(w.future) == 0:
        raise ValueError("code_point requires a nonempty future")
    return code_x(w.future, params), dyadic_value(w.past)


# ---------------------------------------------------------------------------
# cylinder geometry


def word_metric(s: SymbolWord, t: SymbolWord, params: Params) -> float:
    """Cylinder metric: beta1^{w - m} * beta2^{m} at the first disagreement w.

    m counts the -1 symbols strictly before w. Returns 0 for identical words
    and 1 when the words already differ at index 0.
    """
    if len(s) == 0 or len(t) == 0:
        raise ValueError("word_metric requires nonempty words")
    if len(s) != len(t):
        raise ValueError("word_metric requires equal-length words")
    disagree = np.nonzero(s.symbols != t.symbols)[0]
    if disagree.size == 0:
        return 0.0
    w = int(disagree[0])
    m = int(np.count_nonzero(s.symbols[:w] == -1))
    return params.beta1 ** (w - m) * params.beta2**m


def word_metric_batch(s: np.ndarray, t: np.ndarray, params: Params) -> np.ndarray:
    """Row-wise cylinder metric for two (n, length) matrices."""
    s = np.asarray(s, dtype=np.int8)
    t = np.asarray(t, dtype=np.int8)
    if s.shape != t.shape or s.ndim != 2 or s.shape[1] == 0:
        raise ValueError("expected matching nonempty (n, length) matrices")
    neq = s != t
    has_diff = neq.any(axis=1)
    w = np.argmax(neq, axis=1)  # 0 for identical rows; masked below
    minus_cum = np.cumsum(s == -1, axis=1)
    m = np.where(w > 0, np.take_along_axis(minus_cum, np.maximum(w - 1, 0)[:, None], 1)[:, 0], 0)
    dist = params.beta1 ** (w - m).astype(float) * params.beta2 ** m.astype(float)
    return np.where(has_diff, dist, 0.0)


def cylinder_diameter(word: SymbolWord, params: Params) -> float:
    """Geometric diameter of the cylinder fixed by the word: beta1^{#+1} * beta2^{#-1}."""
    n = len(word)
    if n == 0:
        raise ValueError("cylinder_diameter requires a nonempty word")
    m = int(np.count_nonzero(word.symbols == -1))
    return params.beta1 ** (n - m) * params.beta2**m


def cylinder_diameter_batch(symbols: np.ndarray, params: Params) -> np.ndarray:
    sym = np.asarray(symbols, dtype=np.int8)
    if sym.ndim != 2 or sym.shape[1] == 0:
        raise ValueError("expected a nonempty (n, length) symbol matrix")
    m = np.count_nonzero(sym == -1, axis=1).astype(float)
    return params.beta1 ** (sym.shape[1] - m) * params.beta2**m


def log_cylinder_diameter_batch(symbols: np.ndarray, params: Params) -> np.ndarray:
    """ln(cylinder_diameter) per row; linear-space diameters underflow past ~1400 symbols."""
    sym = np.asarray(symbols, dtype=np.int8)
    if sym.ndim != 2 or sym.shape[1] == 0:
        raise ValueError("expected a nonempty (n, length) symbol matrix")
    m = np.count_nonzero(sym == -1, axis=1).astype(float)
    return (sym.shape[1] - m) * np.log(params.beta1) + m * np.log(params.beta2)


def log_cylinder_diameter(word: SymbolWord, params: Params) -> float:
    if len(word) == 0:
        raise ValueError("log_cylinder_diameter requires a nonempty word")
    return float(log_cylinder_diameter_batch(word.symbols[None, :], params)[0])


# ---------------------------------------------------------------------------
# bulk sampling of coded points


def sample_coded_points(
    params: Params,
    n: int,
    seed: int,
    p_plus: float,
    truncation: int = DEFAULT_TRUNCATION,
    threads: int = 1,
) -> np.ndarray:
    """(n, 2) array of coded points from random truncated biwords.

    Future symbols are i.i.d. +1 with probability p_plus, past symbols fair.
    Point i depends only on (seed, i), so the result is identical for any
    thread count or chunking.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p_plus <= 1.0:
        raise ValueError("p_plus must lie in [0, 1]")
    out = np.empty((n, 2))

    def fill(start: int, stop: int) -> None:
        fut = rng.symbol_block(seed, rng.FUTURE_STREAM, start, stop - start, truncation, p_plus)
        past = rng.symbol_block(seed, rng.PAST_STREAM, start, stop - start, truncation, 0.5)
        out[start:stop, 0] = code_x_batch(fut, params)[0]
        out[start:stop, 1] = dyadic_value_batch(past)[0]

    _run_chunks(fill, n, threads)
    return out


def sample_coded_x(
    params: Params,
    n: int,
    seed: int,
    p_plus: float,
    truncation: int = DEFAULT_TRUNCATION,
    threads: int = 1,
) -> np.ndarray:
    """(n,) array of x-coded values of random future words (1-D pushforward)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p_plus <= 1.0:
        raise ValueError("p_plus must lie in [0, 1]")
    out = np.empty(n)

    def fill(start: int, stop: int) -> None:
        fut = rng.symbol_block(seed, rng.FUTURE_STREAM, start, stop - start, truncation, p_plus)
        out[start:stop] = code_x_batch(fut, params)[0]

    _run_chunks(fill, n, threads)
    return out


def _run_chunks(fill, n: int, threads: int) -> None:
    spans = [(s, min(s + _CHUNK, n)) for s in range(0, n, _CHUNK)]
    if threads > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(lambda span: fill(*span), spans))
    else:
        for span in spans:
            fill(*span)
