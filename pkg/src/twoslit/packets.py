"""Single-particle Gaussian packets before the slits."""
from __future__ import annotations

import numpy as np

from .params import PacketSpec

_PI_QUARTER = np.pi ** -0.25


def mode_distribution(width, k):
    """Momentum-space mode weight ``f(k)`` of a packet with the given width."""
    k = np.asarray(k, dtype=float)
    return (4 * np.pi) ** 0.25 / np.sqrt(width) * np.exp(-k**2 / (2 * width**2))


def initial_position_amplitude(spec: PacketSpec, x):
    """Position amplitude at preparation time; real and normalized."""
    s = spec.width
    x = np.asarray(x, dtype=float)
    return np.sqrt(s) * _PI_QUARTER * np.exp(-s**2 * x**2 / 2)


def free_propagated_amplitude(spec: PacketSpec, x, tau):
    """Freely evolved amplitude after reduced time ``tau`` (hbar*t/m, um^2).

    Closed-form Gaussian evolution of the mode integral; the complex square
    root takes the principal branch, which is continuous for ``tau >= 0``.
    """
    if tau < 0:
        raise ValueError("reduced time must be non-negative")
    s = spec.width
    x = np.asarray(x, dtype=float)
    spread = 1 + 1j * s**2 * tau
    return np.sqrt(s) * _PI_QUARTER / np.sqrt(spread) * np.exp(-s**2 * x**2 / (2 * spread))


def position_std(spec: PacketSpec, tau):
    """Standard deviation of ``|psi(x, tau)|**2``."""
    s = spec.width
    return np.sqrt((1 + s**4 * tau**2) / (2 * s**2))
