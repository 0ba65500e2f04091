"""Bernoulli measures: entropy, contraction average, sampling, densities."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bakerdim.params import Params
from bakerdim.measures import (
    BernoulliSpec,
    DensityReport,
    contraction_of,
    contraction_rate,
    density_report,
    entropy,
    entropy_of,
    log_word_mass_batch,
    product_sample,
    pushforward_sample,
    sample_word,
    sample_word_block,
)

betas = st.floats(min_value=0.05, max_value=0.9)
params_st = st.builds(Params, betas, betas)
probs = st.floats(min_value=0.0, max_value=1.0)

LN2 = float(np.log(2.0))


def test_spec_validation():
    with pytest.raises(ValueError):
        BernoulliSpec(-0.1)
    with pytest.raises(ValueError):
        BernoulliSpec(1.1)
    assert BernoulliSpec(0.0).p == 0.0


def test_entropy_closed_form_values():
    assert entropy(BernoulliSpec(0.5)) == pytest.approx(LN2, abs=1e-15)
    assert entropy(BernoulliSpec(0.0)) == 0.0
    assert entropy(BernoulliSpec(1.0)) == 0.0
    expected = -(0.25 * np.log(0.25) + 0.75 * np.log(0.75))
    assert entropy(BernoulliSpec(0.25)) == pytest.approx(expected, rel=1e-15)
    assert entropy(BernoulliSpec(0.25)) == pytest.approx(0.562335, abs=5e-7)


@given(p=probs)
def test_entropy_symmetric_and_bounded(p):
    h = float(entropy_of(p))
    assert 0.0 <= h <= LN2 + 1e-15
    assert h == pytest.approx(float(entropy_of(1.0 - p)), abs=1e-12)


def test_contraction_closed_form_values():
    assert contraction_rate(BernoulliSpec(0.5), Params(0.5, 0.5)) == pytest.approx(LN2, rel=1e-15)
    assert contraction_rate(BernoulliSpec(1.0), Params(0.6, 0.4)) == pytest.approx(
        -np.log(0.6), rel=1e-15
    )
    assert contraction_rate(BernoulliSpec(0.5), Params(0.6, 0.4)) == pytest.approx(
        0.713558, abs=5e-7
    )
    assert contraction_rate(BernoulliSpec(0.5), Params(0.6, 0.4)) == pytest.approx(
        -(np.log(0.6) + np.log(0.4)) / 2.0, rel=1e-15
    )


@given(params=params_st)
def test_derivatives_by_central_difference(params):
    h = 1e-6
    d_xi = (contraction_of(0.6 + h, params) - contraction_of(0.6 - h, params)) / (2 * h)
    assert d_xi == pytest.approx(np.log(params.beta2 / params.beta1), abs=1e-4)
    d_h = (entropy_of(0.5 + h) - entropy_of(0.5 - h)) / (2 * h)
    assert abs(d_h) < 1e-4


@given(params=params_st)
def test_contraction_positive(params):
    ps = np.linspace(0.0, 1.0, 21)
    assert np.all(contraction_of(ps, params) > 0.0)


def test_entropy_premise_matches_product_condition():
    # h(1/2) < xi(1/2) exactly on sub-quarter products, 100x100 grid
    axis = np.linspace(0.05, 0.95, 100)
    b1, b2 = np.meshgrid(axis, axis, indexing="ij")
    xi_half = -0.5 * (np.log(b1) + np.log(b2))
    assert np.all((LN2 < xi_half) == (b1 * b2 < 0.25))


# ---------------------------------------------------------------------------
# word sampling


def test_sample_word_deterministic_and_degenerate():
    spec = BernoulliSpec(0.5)
    a = sample_word(spec, 32, seed=4, index=2)
    b = sample_word(spec, 32, seed=4, index=2)
    assert np.array_equal(a.symbols, b.symbols)
    assert np.all(sample_word(BernoulliSpec(1.0), 16, seed=0).symbols == 1)
    assert np.all(sample_word(BernoulliSpec(0.0), 16, seed=0).symbols == -1)
    with pytest.raises(ValueError):
        sample_word(spec, 0, seed=0)


def test_sample_word_block_rows_match_single_words():
    spec = BernoulliSpec(0.3)
    block = sample_word_block(spec, 8, 24, seed=6, start=5)
    for i in range(8):
        assert np.array_equal(block[i], sample_word(spec, 24, seed=6, index=5 + i).symbols)


def test_word_frequency_concentration():
    spec = BernoulliSpec(0.5)
    w = sample_word(spec, 10_000, seed=12)
    frac = float((w.symbols == -1).mean())
    assert abs(frac - 0.5) < 0.02


@given(p=st.floats(min_value=0.05, max_value=0.95))
def test_log_word_mass_matches_direct_product(p):
    spec = BernoulliSpec(p)
    sym = np.array([[1, -1, -1, 1, 1], [1, 1, 1, 1, 1]], dtype=np.int8)
    got = log_word_mass_batch(sym, spec)
    assert got[0] == pytest.approx(np.log(p**3 * (1 - p) ** 2), rel=1e-12)
    assert got[1] == pytest.approx(np.log(p**5), rel=1e-12)


def test_log_word_mass_validation():
    with pytest.raises(ValueError):
        log_word_mass_batch(np.array([[1, -1]], dtype=np.int8), BernoulliSpec(0.0))


# ---------------------------------------------------------------------------
# pushforward and product sampling


def test_pushforward_sample_shapes_and_degenerate_p():
    params = Params(0.5, 0.5)
    ps = pushforward_sample(BernoulliSpec(1.0), params, 100, seed=1)
    assert ps.dim == 1 and len(ps) == 100
    assert np.allclose(ps.points, 1.0, atol=1e-12)
    ps0 = pushforward_sample(BernoulliSpec(0.0), params, 100, seed=1)
    assert np.allclose(ps0.points, -1.0, atol=1e-12)
    assert ps.meta["kind"] == "pushforward"


def test_product_sample_shape_meta_determinism():
    params = Params(0.6, 0.4)
    spec = BernoulliSpec(0.5)
    a = product_sample(spec, params, 5000, seed=8)
    b = product_sample(spec, params, 5000, seed=8)
    assert a.points.shape == (5000, 2)
    assert np.array_equal(a.points, b.points)
    assert a.meta["kind"] == "product"
    assert np.all(np.abs(a.points) <= 1.0 + 1e-9)
    empty = product_sample(spec, params, 0, seed=8)
    assert len(empty) == 0


def test_product_sample_degenerate_x_segment():
    # p = 1 collapses x to the right edge while y stays spread out
    params = Params(0.5, 0.5)
    pts = product_sample(BernoulliSpec(1.0), params, 2000, seed=2).points
    assert np.allclose(pts[:, 0], 1.0, atol=1e-12)
    assert pts[:, 1].std() > 0.4


# ---------------------------------------------------------------------------
# density diagnostics


def test_density_report_uniform_2d():
    params = Params(0.5, 0.5)
    pts = product_sample(BernoulliSpec(0.5), params, 1_000_000, seed=9)
    rep = density_report(pts, 16)
    assert rep.total == 1_000_000
    assert rep.masses.sum() == pytest.approx(1.0, abs=1e-9)
    assert np.all(np.abs(rep.masses - 1 / 256) < 0.002)
    # L2 statistic of the exact uniform density on the square is 1/4
    assert rep.l2_stat == pytest.approx(0.25, rel=0.01)
    assert rep.l2_stat >= 0.25 - 1e-9


def test_density_report_uniform_1d():
    params = Params(0.5, 0.5)
    pts = pushforward_sample(BernoulliSpec(0.5), params, 500_000, seed=14)
    rep = density_report(pts, 16)
    assert rep.dim == 1
    # uniform density value on [-1, 1]
    assert rep.l2_stat == pytest.approx(0.5, rel=0.01)


def test_density_report_dirac_and_validation():
    pts = np.zeros((50, 2))
    rep = density_report(pts, 4)
    assert rep.max_cell_mass == pytest.approx(1.0)
    with pytest.raises(ValueError):
        density_report(np.empty((0, 2)), 4)
    with pytest.raises(ValueError):
        density_report(pts, 1)
    with pytest.raises(ValueError):
        density_report(np.array([[3.0, 0.0]]), 4)
