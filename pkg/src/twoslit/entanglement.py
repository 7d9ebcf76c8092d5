"""Entanglement of the prepared state: overlaps, normalization, Schmidt number."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import GridSpec, SeparableTerm, integrate_4d_separable

DEGENERATE_TOL = 1e-12  # rounding leaves ~1e-16 where the state cancels exactly


class EntanglementError(ValueError):
    pass


def overlap_theta(sigma, sigma_bar):
    """Scalar product of two centred Gaussian packets at preparation time."""
    if sigma <= 0 or sigma_bar <= 0:
        raise EntanglementError("entanglement: widths must be positive")
    return math.sqrt(2.0 * sigma * sigma_bar / (sigma**2 + sigma_bar**2))


def _unpack(coeffs):
    if hasattr(coeffs, "a"):
        return coeffs.a, coeffs.b
    a, b = coeffs
    return a, b


def source_normalization(coeffs, theta, theta_y=None) -> float:
    """Normalization of ``a psi phi + b varphi chi``.

    ``theta`` is the x overlap; ``theta_y`` defaults to the same value,
    which is the case whenever both particles share their packet widths.
    """
    a, b = _unpack(coeffs)
    theta_y = theta if theta_y is None else theta_y
    radicand = 1.0 + 2.0 * theta * theta_y * (np.conj(a) * b).real
    if radicand <= DEGENERATE_TOL:
        raise EntanglementError("entanglement: degenerate normalization")
    return float(radicand ** -0.5)


def schmidt_closed_form(a, b, theta):
    """Schmidt number of ``N(a u u + b v v)`` with real ``a, b`` and ``<u|v> = theta``.

    Vectorizes over numpy arrays.
    """
    if np.iscomplexobj(a) or np.iscomplexobj(b) or isinstance(a, complex) or isinstance(b, complex):
        raise EntanglementError("entanglement: closed form requires real coefficients")
    ab = a * b
    t2 = theta * theta
    num = (1 + 2 * ab * t2) ** 2
    den = a**4 + b**4 + 4 * ab * t2 + 2 * a * a * b * b * t2 * (2 + t2)
    return num / den


def _gaussian(width):
    norm = math.sqrt(width) * math.pi ** -0.25
    return lambda x: norm * np.exp(-width**2 * x**2 / 2)


def schmidt_integral(cfg, grid: GridSpec | None = None, mode: str = "factorized") -> float:
    """Schmidt number of the prepared state from the four-fold overlap integral.

    Complex coefficients are allowed here; only the closed form needs them
    real.
    """
    widths = (cfg.psi.width, cfg.phi.width, cfg.varphi.width, cfg.chi.width)
    if grid is None:
        half = 12.0 / min(widths)
        n = 2 * int(math.ceil(half * max(widths) * 10)) + 1  # >= 20 points per narrowest width
        grid = GridSpec.symmetric(half, n)
    N = source_normalization(
        cfg.coeffs,
        overlap_theta(cfg.psi.width, cfg.varphi.width),
        overlap_theta(cfg.phi.width, cfg.chi.width),
    )
    terms = [
        SeparableTerm(N * cfg.a, _gaussian(cfg.psi.width), _gaussian(cfg.phi.width)),
        SeparableTerm(N * cfg.b, _gaussian(cfg.varphi.width), _gaussian(cfg.chi.width)),
    ]
    return 1.0 / integrate_4d_separable(terms, grid, mode=mode)


def schmidt_sweep(axis: str, fixed: float, values=None, points: int = 101):
    """Sample the closed form along ``a`` (at fixed overlap) or ``theta`` (at fixed ``a``).

    ``b`` is always ``+sqrt(1 - a**2)``. Returns ``(axis_values, S)``.
    """
    if values is None:
        values = np.linspace(0.0, 1.0, points)
    values = np.asarray(values, dtype=float)
    if np.any(values < 0) or np.any(values > 1) or not 0 <= fixed <= 1:
        raise EntanglementError("entanglement: sweep values must lie in [0, 1]")
    if axis == "a":
        a, theta = values, fixed
    elif axis == "theta":
        a, theta = fixed, values
    else:
        raise EntanglementError(f"entanglement: unknown axis {axis!r}")
    b = np.sqrt(1.0 - np.asarray(a) ** 2)
    return values, schmidt_closed_form(a, b, theta)


@dataclass(frozen=True)
class EntanglementReport:
    theta: float
    source_norm: float
    schmidt: float
    purity: float


def entanglement_report(cfg) -> EntanglementReport:
    from .joint import purity  # joint imports this module

    theta = overlap_theta(cfg.psi.width, cfg.varphi.width)
    theta_y = overlap_theta(cfg.phi.width, cfg.chi.width)
    if cfg.coeffs.is_real and theta == theta_y:
        S = float(schmidt_closed_form(float(np.real(cfg.a)), float(np.real(cfg.b)), theta))
    else:
        S = schmidt_integral(cfg)
    return EntanglementReport(
        theta=theta,
        source_norm=source_normalization(cfg.coeffs, theta, theta_y),
        schmidt=S,
        purity=purity(cfg),
    )
