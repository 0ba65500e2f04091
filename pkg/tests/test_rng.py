"""Counter-based generator: reproducibility, independence, distribution."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bakerdim import rng


def test_uniform_block_deterministic():
    a = rng.uniform_block(42, rng.FUTURE_STREAM, 0, 256, 4)
    b = rng.uniform_block(42, rng.FUTURE_STREAM, 0, 256, 4)
    assert np.array_equal(a, b)


def test_uniform_block_range_and_shape():
    u = rng.uniform_block(1, rng.PAIR_STREAM, 7, 1000, 3)
    assert u.shape == (1000, 3)
    assert np.all(u >= 0.0) and np.all(u < 1.0)
    assert np.isfinite(u).all()


def test_uniform_block_start_offset_concatenation():
    whole = rng.uniform_block(5, rng.PAST_STREAM, 0, 1000, 2)
    parts = np.vstack(
        [
            rng.uniform_block(5, rng.PAST_STREAM, 0, 300, 2),
            rng.uniform_block(5, rng.PAST_STREAM, 300, 700, 2),
        ]
    )
    assert np.array_equal(whole, parts)


@settings(max_examples=50)
@given(
    seed=st.integers(min_value=0, max_value=2**31),
    start=st.integers(min_value=0, max_value=10_000),
    row=st.integers(min_value=0, max_value=63),
)
def test_rows_keyed_by_absolute_index(seed, start, row):
    block = rng.uniform_block(seed, rng.FUTURE_STREAM, start, 64, 2)
    single = rng.uniform_block(seed, rng.FUTURE_STREAM, start + row, 1, 2)
    assert np.array_equal(block[row], single[0])


def test_streams_are_distinct():
    a = rng.uniform_block(9, rng.FUTURE_STREAM, 0, 100, 1)
    b = rng.uniform_block(9, rng.PAST_STREAM, 0, 100, 1)
    c = rng.uniform_block(9, rng.PAIR_STREAM, 0, 100, 1)
    assert not np.array_equal(a, b)
    assert not np.array_equal(b, c)


def test_seeds_are_distinct():
    a = rng.uniform_block(1, rng.FUTURE_STREAM, 0, 100, 1)
    b = rng.uniform_block(2, rng.FUTURE_STREAM, 0, 100, 1)
    assert not np.array_equal(a, b)


def test_uniform_moments():
    u = rng.uniform_block(3, rng.FUTURE_STREAM, 0, 200_000, 1)[:, 0]
    # mean 1/2 +- 5 sigma, sd 1/sqrt(12)
    assert abs(u.mean() - 0.5) < 5 * (1 / np.sqrt(12)) / np.sqrt(u.size)
    assert abs(u.var() - 1 / 12) < 1e-3


def test_symbol_block_values_and_frequency():
    s = rng.symbol_block(11, rng.FUTURE_STREAM, 0, 4000, 32, 0.3)
    assert s.dtype == np.int8
    assert set(np.unique(s)) <= {-1, 1}
    frac = float((s > 0).mean())
    n = s.size
    assert abs(frac - 0.3) < 5 * np.sqrt(0.3 * 0.7 / n)


@pytest.mark.parametrize("p,symbol", [(0.0, -1), (1.0, 1)])
def test_symbol_block_degenerate_p(p, symbol):
    s = rng.symbol_block(2, rng.FUTURE_STREAM, 0, 16, 8, p)
    assert np.all(s == symbol)


def test_symbol_block_deterministic_per_row():
    block = rng.symbol_block(6, rng.PAST_STREAM, 0, 32, 16, 0.5)
    shifted = rng.symbol_block(6, rng.PAST_STREAM, 8, 24, 16, 0.5)
    assert np.array_equal(block[8:], shifted)


def test_stream_key_scalar_matches_python_ints():
    # the key must be a plain int in [0, 2^64)
    k = rng.stream_key(12345, rng.FUTURE_STREAM)
    assert isinstance(k, int)
    assert 0 <= k < 2**64
