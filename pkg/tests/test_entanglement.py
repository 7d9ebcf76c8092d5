import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from twoslit.entanglement import (EntanglementError, entanglement_report, overlap_theta, schmidt_closed_form,
                                  schmidt_integral, schmidt_sweep, source_normalization)
from twoslit.params import paper_defaults
from twoslit.quadrature import GridSpec, integrate_2d

THETA_PAPER = math.sqrt(12 / 37)


def with_widths(cfg, sigma, sigma_bar):
    return replace(cfg, psi=replace(cfg.psi, width=sigma), phi=replace(cfg.phi, width=sigma),
                   varphi=replace(cfg.varphi, width=sigma_bar), chi=replace(cfg.chi, width=sigma_bar))


def test_overlap_values():
    assert overlap_theta(2.5, 2.5) == 1.0
    assert overlap_theta(1, 6) == pytest.approx(0.5694947974514994, abs=1e-15)
    assert overlap_theta(1, 1e12) < 2e-6


@given(st.floats(0.01, 100), st.floats(0.01, 100))
def test_overlap_symmetric(s, t):
    assert overlap_theta(s, t) == pytest.approx(overlap_theta(t, s), rel=1e-15)
    assert 0 < overlap_theta(s, t) <= 1 + 1e-15
    # the normalization prefactor is the same quantity in another form
    assert 4 * s * t / (s * s + t * t) == pytest.approx(2 * overlap_theta(s, t) ** 2, rel=1e-12)


def test_source_normalization_values():
    assert source_normalization((1.0, 0.0), THETA_PAPER) == 1.0
    assert source_normalization((0.3, math.sqrt(0.91)), THETA_PAPER) == pytest.approx(0.9183857818461335, rel=1e-14)
    assert source_normalization((0.6, 0.8), 0.0) == 1.0
    with pytest.raises(EntanglementError, match="degenerate normalization"):
        source_normalization((1 / math.sqrt(2), -1 / math.sqrt(2)), 1.0)


def test_source_normalization_normalizes_initial_state():
    a, b, s, sb = 0.3, math.sqrt(0.91), 1.0, 6.0
    N = source_normalization((a, b), overlap_theta(s, sb))
    g = lambda w, x, y: w / math.sqrt(math.pi) * np.exp(-w**2 * (x**2 + y**2) / 2)
    grid = GridSpec.symmetric(12, 2401)
    norm = integrate_2d(lambda x, y: np.abs(N * (a * g(s, x, y) + b * g(sb, x, y))) ** 2, grid, grid)
    assert norm == pytest.approx(1.0, abs=1e-10)


def test_closed_form_values():
    for theta in (0.0, 0.3, 0.6, 1.0):
        assert schmidt_closed_form(0.0, 1.0, theta) == 1.0
        assert schmidt_closed_form(1.0, 0.0, theta) == 1.0
    r = 1 / math.sqrt(2)
    assert schmidt_closed_form(r, r, 0.0) == pytest.approx(2.0, abs=1e-14)
    assert schmidt_closed_form(0.3, math.sqrt(0.91), THETA_PAPER) == pytest.approx(1.056, abs=5e-4)
    assert schmidt_closed_form(0.7, math.sqrt(0.51), THETA_PAPER) == pytest.approx(1.150, abs=5e-4)


def test_closed_form_rejects_complex():
    with pytest.raises(EntanglementError):
        schmidt_closed_form(0.6, 0.8j, 0.5)


def test_integral_special_cases():
    assert schmidt_integral(paper_defaults(1.0)) == pytest.approx(1.0, abs=1e-8)
    r = 1 / math.sqrt(2)
    same = with_widths(paper_defaults(r), 1.0, 1.0)
    assert schmidt_integral(same) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("sigma_bar", [2.0, 4.0, 6.0])
@pytest.mark.parametrize("a", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
def test_integral_matches_closed_form(a, sigma_bar):
    cfg = with_widths(paper_defaults(a), 1.0, sigma_bar)
    closed = schmidt_closed_form(a, math.sqrt(1 - a * a), overlap_theta(1.0, sigma_bar))
    assert schmidt_integral(cfg) == pytest.approx(closed, rel=1e-4)


def test_integral_with_complex_coefficients():
    cfg = with_widths(paper_defaults().with_coeffs(0.6, 0.8j), 1.0, 2.0)
    factorized = schmidt_integral(cfg)
    direct = schmidt_integral(cfg, GridSpec.symmetric(6.5, 61), mode="direct")
    assert factorized == pytest.approx(direct, rel=1e-4)
    assert factorized > 1


def test_sweep_maximum_orthogonal():
    a, s = schmidt_sweep("a", 0.0, points=100001)
    assert a[np.argmax(s)] == pytest.approx(1 / math.sqrt(2), abs=1e-5)
    assert s.max() == pytest.approx(2.0, abs=1e-9)


def test_sweep_decreases_with_overlap():
    curves = [schmidt_sweep("a", theta)[1][1:-1] for theta in (0.0, 0.3, 0.6)]
    assert np.all(curves[0] > curves[1]) and np.all(curves[1] > curves[2])


@pytest.mark.parametrize("a", [0.7, 0.5, 0.4])
def test_sweep_over_theta_strictly_decreasing(a):
    theta, s = schmidt_sweep("theta", a, points=1001)
    assert np.all(np.diff(s) < 0)


def test_sweep_rejects_out_of_range():
    with pytest.raises(EntanglementError):
        schmidt_sweep("a", 1.5)
    with pytest.raises(EntanglementError):
        schmidt_sweep("phase", 0.5)


def test_grid_invariants():
    a = np.linspace(0, 1, 101)[:, None]
    theta = np.linspace(0, 1, 101)[None, :]
    b = np.sqrt(1 - a**2)
    S = schmidt_closed_form(a, b, theta)
    assert np.all(S >= 1 - 1e-12)
    ones = np.isclose(S, 1, atol=1e-12, rtol=0)
    expected_ones = (a == 0) | (b == 0) | (theta == 1)
    assert np.all(ones[np.broadcast_to(expected_ones, S.shape)])
    interior = S[1:-1, 1:-1]
    assert np.all(interior > 1 + 1e-12)

    h = 1e-4
    th = np.linspace(0.01, 0.99, 99)[None, :]
    slope = (schmidt_closed_form(a, b, th + h) - schmidt_closed_form(a, b, th - h)) / (2 * h)
    assert np.all(slope <= 1e-12)


@given(st.floats(0, 1))
def test_orthogonal_symmetry_under_swap(a):
    b = math.sqrt(1 - a * a)
    assert schmidt_closed_form(a, b, 0.0) == pytest.approx(schmidt_closed_form(b, a, 0.0), rel=1e-12)


def test_report(paper_cfg):
    rep = entanglement_report(paper_cfg)
    assert rep.theta == pytest.approx(THETA_PAPER, rel=1e-15)
    assert rep.schmidt == pytest.approx(1.0562, abs=1e-4)
    assert rep.purity == pytest.approx(0.8534, abs=1e-4)
    assert rep.source_norm == pytest.approx(0.91839, abs=1e-5)
