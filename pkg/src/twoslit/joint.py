"""Two-particle states behind the slits and their coincidence densities.

The slits absorb part of every packet, so each state is renormalized
numerically after the slit passage. Four kinds share one set of slit
amplitudes: the coherent superposition, the incoherent mixture with the
same weights, and the two product states.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .entanglement import overlap_theta, source_normalization
from .params import ArrangementConfig
from .quadrature import GridSpec, QuadratureError, integrate_grid_2d
from .slits import SlitCoefficients, slit_coefficients, two_slit_amplitude

DEFAULT_NORM_GRID = GridSpec.symmetric(12.0, 1201)
BOUNDARY_TOL = 1e-10


class StateKind(str, enum.Enum):
    SUPERPOSITION = "superposition"
    MIXTURE = "mixture"
    PRODUCT_A = "product_a"
    PRODUCT_B = "product_b"


@dataclass(frozen=True)
class SlitBundle:
    psi: SlitCoefficients
    varphi: SlitCoefficients
    phi: SlitCoefficients
    chi: SlitCoefficients


@lru_cache(maxsize=64)
def slit_bundle(cfg: ArrangementConfig) -> SlitBundle:
    g, total = cfg.geometry, cfg.mu_uses_total_time
    return SlitBundle(
        psi=slit_coefficients(cfg.psi, g, total),
        varphi=slit_coefficients(cfg.varphi, g, total),
        phi=slit_coefficients(cfg.phi, g, total),
        chi=slit_coefficients(cfg.chi, g, total),
    )


def component_amplitude(cfg: ArrangementConfig, which: str, x, y):
    """``Phi_a(x, y)`` or ``Phi_b(x, y)``; broadcasts over ``x`` and ``y``."""
    sb = slit_bundle(cfg)
    if which == "a":
        return two_slit_amplitude(sb.psi, x) * two_slit_amplitude(sb.phi, y)
    if which == "b":
        return two_slit_amplitude(sb.varphi, x) * two_slit_amplitude(sb.chi, y)
    raise ValueError(f"unknown component {which!r}")


def source_norm(cfg: ArrangementConfig, a=None, b=None) -> float:
    a = cfg.a if a is None else a
    b = cfg.b if b is None else b
    theta_x = overlap_theta(cfg.psi.width, cfg.varphi.width)
    theta_y = overlap_theta(cfg.phi.width, cfg.chi.width)
    return source_normalization((a, b), theta_x, theta_y)


@dataclass(frozen=True)
class JointState:
    kind: StateKind
    config: ArrangementConfig
    norm_sup: float
    norm_a: float
    norm_b: float
    source_norm: float

    def as_kind(self, kind) -> "JointState":
        return replace(self, kind=StateKind(kind))


def _post_slit_norm(phi_a, phi_b, a, b, N, grid):
    total = N * (a * phi_a + b * phi_b)
    density = np.abs(total) ** 2
    peak = density.max()
    edge = max(density[0].max(), density[-1].max(), density[:, 0].max(), density[:, -1].max())
    if edge > BOUNDARY_TOL * peak:
        raise QuadratureError("quadrature: domain truncation above tolerance")
    return N / np.sqrt(integrate_grid_2d(density, grid, grid))


def normalize(cfg: ArrangementConfig, grid: GridSpec = DEFAULT_NORM_GRID) -> JointState:
    """Superposition state with its own and both product normalizations.

    Each constant is ``N / ||N (a Phi_a + b Phi_b)||`` evaluated by 2D
    Simpson on ``grid x grid``; the product constants reuse the same
    samples with ``(a, b) = (1, 0)`` and ``(0, 1)``.
    """
    g = grid.points()
    X, Y = np.meshgrid(g, g, indexing="ij")
    phi_a = component_amplitude(cfg, "a", X, Y)
    phi_b = component_amplitude(cfg, "b", X, Y)
    N = source_norm(cfg)
    return JointState(
        kind=StateKind.SUPERPOSITION,
        config=cfg,
        norm_sup=_post_slit_norm(phi_a, phi_b, cfg.a, cfg.b, N, grid),
        norm_a=_post_slit_norm(phi_a, phi_b, 1.0, 0.0, source_norm(cfg, 1.0, 0.0), grid),
        norm_b=_post_slit_norm(phi_a, phi_b, 0.0, 1.0, source_norm(cfg, 0.0, 1.0), grid),
        source_norm=N,
    )


def _weights(state: JointState):
    return state.config.a, state.config.b


def probability_density(state: JointState, x, y):
    """Coincidence density at ``(x, y)`` in um^-2 for the state's kind."""
    cfg = state.config
    a, b = _weights(state)
    kind = state.kind
    if kind is StateKind.PRODUCT_A:
        return state.norm_a**2 * np.abs(component_amplitude(cfg, "a", x, y)) ** 2
    if kind is StateKind.PRODUCT_B:
        return state.norm_b**2 * np.abs(component_amplitude(cfg, "b", x, y)) ** 2
    phi_a = component_amplitude(cfg, "a", x, y)
    phi_b = component_amplitude(cfg, "b", x, y)
    if kind is StateKind.SUPERPOSITION:
        # the product path with a=1, b=0 reproduces this bit for bit
        return state.norm_sup**2 * np.abs(a * phi_a + b * phi_b) ** 2
    return (abs(a) ** 2 * state.norm_a**2 * np.abs(phi_a) ** 2
            + abs(b) ** 2 * state.norm_b**2 * np.abs(phi_b) ** 2)


def direct_terms(state: JointState, x, y):
    """``N_sup**2 (|a|^2 |Phi_a|^2 + |b|^2 |Phi_b|^2)``: the superposition without its cross term."""
    cfg = state.config
    a, b = _weights(state)
    return state.norm_sup**2 * (abs(a) ** 2 * np.abs(component_amplitude(cfg, "a", x, y)) ** 2
                                + abs(b) ** 2 * np.abs(component_amplitude(cfg, "b", x, y)) ** 2)


def interference_term(state: JointState, x, y):
    """Cross term ``2 N_sup**2 Re(a* b Phi_a* Phi_b)`` of the superposition density."""
    cfg = state.config
    a, b = _weights(state)
    phi_a = component_amplitude(cfg, "a", x, y)
    phi_b = component_amplitude(cfg, "b", x, y)
    return 2 * state.norm_sup**2 * np.real(np.conj(a) * b * np.conj(phi_a) * phi_b)


def purity(cfg: ArrangementConfig) -> float:
    """Purity of the mixture with the superposition's weights.

    Uses the preparation-time overlaps of both particles; they coincide
    when the y packets copy the x widths.
    """
    a2, b2 = abs(cfg.a) ** 2, abs(cfg.b) ** 2
    theta_x = overlap_theta(cfg.psi.width, cfg.varphi.width)
    theta_y = overlap_theta(cfg.phi.width, cfg.chi.width)
    return a2**2 + b2**2 + 2 * a2 * b2 * theta_x**2 * theta_y**2
