"""Coincidence patterns at a fixed detector and their analysis."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .joint import JointState, StateKind, normalize, probability_density
from .params import ArrangementConfig
from .quadrature import GridSpec

DEFAULT_PATTERN_GRID = GridSpec.symmetric(4.0, 1601)
NOISE_FLOOR = 1e-12
SEPARATION_WINDOW = 1.0


class PatternError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Pattern:
    """``P(x, y_fixed)`` sampled on a uniform grid."""

    xs: np.ndarray
    values: np.ndarray
    y_fixed: float
    kind: StateKind
    config: ArrangementConfig
    grid: GridSpec

    def at(self, x0: float = 0.0) -> float:
        """Sample nearest to ``x0``."""
        return float(self.values[np.argmin(np.abs(self.xs - x0))])


@dataclass(frozen=True)
class PeakSet:
    maxima: list[tuple[float, float]] = field(default_factory=list)
    minima: list[tuple[float, float]] = field(default_factory=list)

    def central_maximum(self) -> tuple[float, float]:
        """Maximum closest to ``x = 0``."""
        if not self.maxima:
            raise PatternError("pattern: no interior extrema")
        return min(self.maxima, key=lambda m: abs(m[0]))


def pattern(state: JointState, y_fixed: float = 0.0, grid: GridSpec = DEFAULT_PATTERN_GRID) -> Pattern:
    xs = grid.points()
    values = probability_density(state, xs, np.float64(y_fixed))
    return Pattern(xs=xs, values=values, y_fixed=float(y_fixed), kind=state.kind,
                   config=state.config, grid=grid)


def local_extrema(xs, values):
    """Interior extrema by 3-point comparison, refined with a parabola through the triple.

    Returns ``(maxima, minima)`` as lists of ``(position, height)``.
    """
    xs = np.asarray(xs, dtype=float)
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        return [], []
    h = xs[1] - xs[0]
    left, mid, right = v[:-2], v[1:-1], v[2:]
    is_max = (mid > left) & (mid >= right)
    is_min = (mid < left) & (mid <= right)
    maxima, minima = [], []
    for idx in np.flatnonzero(is_max | is_min) + 1:
        y0, y1, y2 = v[idx - 1], v[idx], v[idx + 1]
        curv = y0 - 2 * y1 + y2
        offset = 0.5 * (y0 - y2) / curv if curv != 0 else 0.0
        pos = xs[idx] + offset * h
        height = y1 - 0.25 * (y0 - y2) * offset
        (maxima if is_max[idx - 1] else minima).append((float(pos), float(height)))
    return maxima, minima


def find_peaks(p: Pattern) -> PeakSet:
    if p.values.size < 5:
        raise PatternError("pattern: too few samples")
    maxima, minima = local_extrema(p.xs, p.values)
    floor = NOISE_FLOOR * float(np.max(p.values))
    maxima = [m for m in maxima if m[1] >= floor]
    minima = [m for m in minima if m[1] >= floor]
    if not maxima and not minima:
        raise PatternError("pattern: no interior extrema")
    return PeakSet(maxima=maxima, minima=minima)


def central_peak_height(p: Pattern) -> float:
    return find_peaks(p).central_maximum()[1]


def visibility(p: Pattern, window: int | str = 3, minima: str = "bounding") -> float:
    """Fringe visibility ``(P_max - P_min) / (P_max + P_min)`` over central peaks.

    ``window`` counts central maxima (1, 3, ...) or is ``"all"``. ``P_max``
    is the highest windowed maximum. With ``minima="bounding"`` ``P_min``
    is the lower of the two minima that close the window from outside; with
    ``minima="interior"`` it is the lowest minimum between the outermost
    windowed maxima. ``"all"`` compares the extreme samples of the whole
    pattern, so the grid must reach the decayed tails.
    """
    if window == "all":
        pmax, pmin = float(np.max(p.values)), float(np.min(p.values))
        return (pmax - pmin) / (pmax + pmin)

    peaks = find_peaks(p)
    if not isinstance(window, (int, np.integer)) or window < 1 or window % 2 == 0:
        raise PatternError("pattern: window must be an odd peak count or 'all'")
    maxima = sorted(peaks.maxima)
    centre = maxima.index(peaks.central_maximum())
    half = window // 2
    if centre - half < 0 or centre + half >= len(maxima):
        raise PatternError("pattern: window exceeds the resolved peaks")
    chosen = maxima[centre - half: centre + half + 1]
    lo, hi = chosen[0][0], chosen[-1][0]
    pmax = max(m[1] for m in chosen)

    if minima == "interior":
        inside = [m[1] for m in peaks.minima if lo < m[0] < hi]
        if not inside:
            raise PatternError("pattern: no minima inside the window")
        pmin = min(inside)
    elif minima == "bounding":
        left = [m for m in peaks.minima if m[0] < lo]
        right = [m for m in peaks.minima if m[0] > hi]
        # an open side falls back to the lowest sample beyond the last maximum
        lval = max(left)[1] if left else float(np.min(p.values[p.xs < lo]))
        rval = min(right)[1] if right else float(np.min(p.values[p.xs > hi]))
        pmin = min(lval, rval)
    else:
        raise PatternError(f"pattern: unknown minima rule {minima!r}")
    return (pmax - pmin) / (pmax + pmin)


def difference_function(state: JointState | ArrangementConfig, y_fixed: float = 0.0,
                        grid: GridSpec = DEFAULT_PATTERN_GRID):
    """``|b|^2 (P_pro^a - P_pro^b)`` along x; returns ``(xs, D)``."""
    if isinstance(state, ArrangementConfig):
        state = normalize(state)
    pa = pattern(state.as_kind(StateKind.PRODUCT_A), y_fixed, grid)
    pb = pattern(state.as_kind(StateKind.PRODUCT_B), y_fixed, grid)
    return pa.xs, abs(state.config.b) ** 2 * (pa.values - pb.values)


def relative_difference(state: JointState, y_fixed: float = 0.0, grid: GridSpec = DEFAULT_PATTERN_GRID):
    """``(P - P_mix) - (P - P_pro^a)`` built from the three patterns directly."""
    p = pattern(state.as_kind(StateKind.SUPERPOSITION), y_fixed, grid).values
    mix = pattern(state.as_kind(StateKind.MIXTURE), y_fixed, grid).values
    pro = pattern(state.as_kind(StateKind.PRODUCT_A), y_fixed, grid).values
    return grid.points(), (p - mix) - (p - pro)


def separation(p1: Pattern, p2: Pattern, metric: str = "central-peak-delta") -> float:
    if p1.grid != p2.grid or p1.y_fixed != p2.y_fixed:
        raise PatternError("pattern: grids differ")
    if metric == "central-peak-delta":
        return abs(central_peak_height(p1) - central_peak_height(p2))
    if metric == "sup-window":
        mask = np.abs(p1.xs) <= SEPARATION_WINDOW
        return float(np.max(np.abs(p1.values[mask] - p2.values[mask])))
    raise PatternError(f"pattern: unknown metric {metric!r}")


@dataclass(frozen=True, eq=False)
class SweepPoint:
    y: float
    height: float
    pattern: Pattern


def fixed_detector_sweep(state: JointState | ArrangementConfig, y_values, grid: GridSpec = DEFAULT_PATTERN_GRID,
                         workers: int = 1) -> list[SweepPoint]:
    """Superposition pattern and its central-peak height for each fixed ``y``."""
    if isinstance(state, ArrangementConfig):
        state = normalize(state)
    state = state.as_kind(StateKind.SUPERPOSITION)

    def one(y):
        p = pattern(state, y, grid)
        return SweepPoint(float(y), central_peak_height(p), p)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one, y_values))
    return [one(y) for y in y_values]


def trajectory_extrema(ys, heights):
    """Refined local minima and maxima of a peak-height trajectory."""
    maxima, minima = local_extrema(ys, heights)
    return minima, maxima
