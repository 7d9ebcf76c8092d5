import math

import numpy as np
import pytest

from twoslit.joint import (StateKind, component_amplitude, direct_terms, interference_term, normalize,
                           probability_density, purity, slit_bundle)
from twoslit.params import paper_defaults
from twoslit.quadrature import GridSpec, QuadratureError, integrate_2d

KINDS = list(StateKind)


def test_component_mirror_symmetry(paper_cfg):
    x = np.linspace(-4, 4, 161)
    for y in (0.0, 0.37, 1.2):
        for which in "ab":
            amp = np.abs(component_amplitude(paper_cfg, which, x, y))
            np.testing.assert_allclose(amp, amp[::-1], rtol=1e-12)


def test_component_origin_value(paper_cfg):
    sb = slit_bundle(paper_cfg)
    assert abs(component_amplitude(paper_cfg, "a", 0.0, 0.0)) == pytest.approx(4 * abs(sb.psi.C) * abs(sb.phi.C),
                                                                               rel=1e-14)


def test_component_norm_resolution_independent(paper_cfg):
    density = lambda x, y: np.abs(component_amplitude(paper_cfg, "a", x, y)) ** 2
    values = [integrate_2d(density, GridSpec.symmetric(12, n), GridSpec.symmetric(12, n)) for n in (801, 1601)]
    assert values[0] == pytest.approx(values[1], rel=1e-6)


def test_degenerate_superposition_norm():
    st = normalize(paper_defaults(1.0))
    assert st.norm_sup == st.norm_a


def test_norm_exceeds_product_a(paper_state):
    assert paper_state.norm_sup > paper_state.norm_a


@pytest.mark.xfail(strict=True, reason="validated amplitudes give N = 7.81 < N_b = 10.87 at the default parameters")
def test_norm_exceeds_product_b(paper_state):
    assert paper_state.norm_sup > paper_state.norm_b


@pytest.mark.parametrize("kind", KINDS)
def test_total_probability(paper_state, kind):
    g = GridSpec.symmetric(12, 1201)
    total = integrate_2d(lambda x, y: probability_density(paper_state.as_kind(kind), x, y), g, g)
    assert total == pytest.approx(1.0, abs=1e-6)


def test_truncated_domain_is_rejected(paper_cfg):
    with pytest.raises(QuadratureError, match="quadrature: domain truncation above tolerance"):
        normalize(paper_cfg, GridSpec.symmetric(6.0, 601))


def test_degenerate_mixture_equals_product():
    st = normalize(paper_defaults(1.0))
    x = np.linspace(-4, 4, 201)
    np.testing.assert_array_equal(probability_density(st.as_kind("mixture"), x, 0.3),
                                  probability_density(st.as_kind("product_a"), x, 0.3))


@pytest.mark.parametrize("kind", KINDS)
def test_density_mirror_symmetry(paper_state, kind):
    x = np.linspace(-4, 4, 401)
    p = probability_density(paper_state.as_kind(kind), x, 0.45)
    assert np.max(np.abs(p - p[::-1])) <= 1e-10 * p.max()
    assert np.all(p >= 0)


def test_difference_identity(paper_state):
    rng = np.random.default_rng(7)
    x = rng.uniform(-4, 4, 1000)
    P = probability_density(paper_state, x, 0.0)
    mix = probability_density(paper_state.as_kind("mixture"), x, 0.0)
    pa = probability_density(paper_state.as_kind("product_a"), x, 0.0)
    pb = probability_density(paper_state.as_kind("product_b"), x, 0.0)
    lhs = (P - mix) - (P - pa)
    rhs = abs(paper_state.config.b) ** 2 * (pa - pb)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * np.max(np.abs(rhs))


def test_interference_vanishes_without_second_term():
    st = normalize(paper_defaults(1.0))
    x = np.linspace(-4, 4, 101)
    assert np.all(interference_term(st, x, 0.2) == 0)


def test_decomposition_identity(paper_state):
    rng = np.random.default_rng(11)
    x, y = rng.uniform(-4, 4, 500), rng.uniform(-3, 3, 500)
    P = probability_density(paper_state, x, y)
    rebuilt = direct_terms(paper_state, x, y) + interference_term(paper_state, x, y)
    assert np.max(np.abs(P - rebuilt)) <= 1e-12 * np.max(P)


@pytest.mark.xfail(strict=True, reason="measured cross term is 66% of the direct terms, not much smaller")
def test_interference_is_small(paper_state):
    x = np.linspace(-4, 4, 1601)
    ratio = np.max(np.abs(interference_term(paper_state, x, 0.0))) / np.max(direct_terms(paper_state, x, 0.0))
    assert ratio < 0.1


def test_interference_fraction_record(paper_state):
    # calibration record of the size of the cross term at the default parameters
    x = np.linspace(-4, 4, 1601)
    ratio = np.max(np.abs(interference_term(paper_state, x, 0.0))) / np.max(direct_terms(paper_state, x, 0.0))
    assert ratio == pytest.approx(0.6571, abs=1e-3)


def test_purity_values():
    assert purity(paper_defaults(1.0)) == 1.0
    assert purity(paper_defaults(0.3)) == pytest.approx(0.85, abs=0.005)
    nearly_orthogonal = paper_defaults(1 / math.sqrt(2))
    from dataclasses import replace
    nearly_orthogonal = replace(nearly_orthogonal,
                                varphi=replace(nearly_orthogonal.varphi, width=1e8),
                                chi=replace(nearly_orthogonal.chi, width=1e8))
    assert purity(nearly_orthogonal) == pytest.approx(0.5, abs=1e-12)


def test_superposition_peak_exceeds_mixture(paper_state):
    assert probability_density(paper_state, 0.0, 0.0) > probability_density(paper_state.as_kind("mixture"), 0.0, 0.0)


def test_degenerate_limit_continuity():
    x = np.linspace(-4, 4, 801)
    gaps = []
    for a in (1 - 1e-6, 1 - 1e-10):
        st = normalize(paper_defaults(a))
        pro = probability_density(st.as_kind("product_a"), x, 0.0)
        gap = max(np.max(np.abs(probability_density(st.as_kind(k), x, 0.0) - pro))
                  for k in ("superposition", "mixture"))
        gaps.append(gap / pro.max())
    assert gaps[0] < 1e-4
    assert gaps[1] < gaps[0] / 10
