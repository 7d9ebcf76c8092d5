import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twoslit.oracle import ApertureModel, propagate_numeric, propagate_two_slit, relative_l2_mod_phase
from twoslit.params import PacketSpec, ParticleTimes, SlitGeometry
from twoslit.slits import slit_amplitude, slit_coefficients, two_slit_amplitude


def test_linear_and_curvature_constants(paper_cfg):
    c = slit_coefficients(paper_cfg.psi, paper_cfg.geometry)
    assert c.G == pytest.approx(40.0, rel=1e-14)
    assert c.H == pytest.approx(5.0, rel=1e-14)


def test_tau_s_to_zero_limit(paper_cfg):
    spec = PacketSpec(1.0, ParticleTimes(1e-300, 0.2))
    c = slit_coefficients(spec, paper_cfg.geometry)
    assert c.mu == 2.0
    assert c.F == pytest.approx(-1 / (2 * 0.2), rel=1e-14)


def test_derived_relations(paper_cfg):
    for spec in (paper_cfg.psi, paper_cfg.varphi, paper_cfg.phi, paper_cfg.chi):
        c = slit_coefficients(spec, paper_cfg.geometry)
        den = c.D**2 + c.F**2
        assert c.alpha == pytest.approx(c.D * c.H**2 / (4 * den), rel=1e-14)
        assert c.delta == pytest.approx(c.G * c.H * c.F / (2 * den), rel=1e-14)
        assert c.D > 0 and c.mu >= 2 and c.alpha > 0


@pytest.mark.parametrize("which", ["psi", "varphi", "phi", "chi"])
def test_coefficients_against_fitted_propagation(paper_cfg, which):
    # log psi_A is exactly quadratic in x: fit it from brute-force propagation
    spec = getattr(paper_cfg, which)
    c = slit_coefficients(spec, paper_cfg.geometry)
    x = np.linspace(-1, 1, 41)
    numeric = propagate_numeric(spec, ApertureModel("gaussian", paper_cfg.geometry), "A", x)
    re2, re1, re0 = np.polyfit(x, np.log(np.abs(numeric)), 2)
    im2, im1, im0 = np.polyfit(x, np.unwrap(np.angle(numeric)), 2)
    fitted = {"alpha": -re2, "delta": -re1, "beta": im2 - c.phase_curvature, "gamma": -im1}
    for name, value in fitted.items():
        assert value == pytest.approx(getattr(c, name), rel=1e-6), name
    assert np.exp(re0) == pytest.approx(abs(c.C), rel=1e-6)


def test_mirror_and_origin(paper_cfg):
    c = slit_coefficients(paper_cfg.psi, paper_cfg.geometry)
    x = np.linspace(-4, 4, 81)
    np.testing.assert_array_equal(slit_amplitude(c, "A", x), slit_amplitude(c, "B", -x))
    assert slit_amplitude(c, "A", 0.0) == c.C == slit_amplitude(c, "B", 0.0)
    assert two_slit_amplitude(c, 0.0) == pytest.approx(2 * c.C, rel=1e-15)


def test_amplitude_at_half_micron(paper_cfg):
    spec = paper_cfg.psi
    c = slit_coefficients(spec, paper_cfg.geometry)
    numeric = propagate_numeric(spec, ApertureModel("gaussian", paper_cfg.geometry), "A", [0.5])[0]
    assert abs(slit_amplitude(c, "A", 0.5) - numeric) <= 1e-6 * abs(numeric)


def test_fringes_with_central_maximum(paper_cfg):
    c = slit_coefficients(paper_cfg.psi, paper_cfg.geometry)
    x = np.linspace(-4, 4, 1601)
    p = np.abs(two_slit_amplitude(c, x)) ** 2
    assert np.argmax(p) == 800
    interior_max = np.flatnonzero((p[1:-1] > p[:-2]) & (p[1:-1] > p[2:]))
    assert len(interior_max) >= 3
    numeric = np.abs(propagate_two_slit(paper_cfg.psi, ApertureModel("gaussian", paper_cfg.geometry), x)) ** 2
    np.testing.assert_allclose(p, numeric, atol=1e-12 * p.max())


def test_paper_literal_mu_disagrees_with_propagation(paper_cfg):
    x = np.linspace(-4, 4, 401)
    spec = paper_cfg.varphi
    numeric = propagate_two_slit(spec, ApertureModel("gaussian", paper_cfg.geometry), x)
    good = relative_l2_mod_phase(numeric, two_slit_amplitude(slit_coefficients(spec, paper_cfg.geometry), x))
    literal = relative_l2_mod_phase(
        numeric, two_slit_amplitude(slit_coefficients(spec, paper_cfg.geometry, mu_uses_total_time=True), x))
    assert good <= 1e-12
    assert literal > 1e-2


widths = st.floats(0.2, 8)
times = st.floats(0.05, 2)


@settings(max_examples=60, deadline=None)
@given(width=widths, ts=times, tf=times, bs=st.floats(0.03, 0.3), gap=st.floats(0.05, 1.0))
def test_symmetry_and_envelope(width, ts, tf, bs, gap):
    geom = SlitGeometry(bs, bs + gap)
    c = slit_coefficients(PacketSpec(width, ParticleTimes(ts, tf)), geom)
    x = np.linspace(-4, 4, 401)
    amp = two_slit_amplitude(c, x)
    p = np.abs(amp) ** 2
    assert np.max(np.abs(p - p[::-1])) <= 1e-10 * p.max()
    bound = 2 * abs(c.C) * np.exp(-c.alpha * x**2 + abs(c.delta) * np.abs(x))
    assert np.all(np.abs(amp) <= bound * (1 + 1e-12))
