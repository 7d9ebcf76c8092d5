"""Named numerical checks driven by ``twoslit verify``."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from . import entanglement as ent
from .joint import StateKind, normalize, probability_density, purity
from .oracle import ApertureModel, propagate_two_slit, relative_l2_mod_phase
from .params import ArrangementConfig, paper_defaults
from .patterns import (DEFAULT_PATTERN_GRID, find_peaks, fixed_detector_sweep, pattern, separation,
                       trajectory_extrema, visibility)
from .quadrature import GridSpec, integrate_grid_2d
from .slits import slit_coefficients, two_slit_amplitude

FULL_PATTERN_GRID = GridSpec.symmetric(8.0, 3201)  # same step as the default grid, reaches the tails


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: str
    expected: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: measured {self.measured}; expected {self.expected}"


def _within(value, target, tol):
    return abs(value - target) <= tol


def check_purity(cfg):
    t = time.perf_counter()
    p = purity(cfg)
    elapsed = time.perf_counter() - t
    return [
        CheckResult("purity 0.85", _within(p, 0.85, 0.005), f"{p:.4f}", "0.85 +/- 0.005"),
        CheckResult("purity runtime", elapsed < 1e-3, f"{elapsed * 1e3:.3f} ms", "< 1 ms"),
    ]


def check_visibility(cfg):
    state = normalize(cfg)
    out = []
    for kind, target, label in [(StateKind.SUPERPOSITION, 0.94, "V"),
                                (StateKind.MIXTURE, 0.92, "V_mix"),
                                (StateKind.PRODUCT_A, 0.98, "V_pro")]:
        t = time.perf_counter()
        p = pattern(state.as_kind(kind), 0.0)
        v = visibility(p, 3)
        elapsed = time.perf_counter() - t
        out.append(CheckResult(f"visibility {label} (3 central peaks)", _within(v, target, 0.02),
                               f"{v:.4f}", f"{target} +/- 0.02"))
        out.append(CheckResult(f"pattern runtime {kind.value}", elapsed < 30, f"{elapsed:.2f} s", "< 30 s"))
        v_all = visibility(pattern(state.as_kind(kind), 0.0, FULL_PATTERN_GRID), "all")
        out.append(CheckResult(f"visibility {label} (whole pattern)", _within(v_all, 1.0, 1e-3),
                               f"{v_all:.6f}", "1 +/- 1e-3"))
    return out


def check_schmidt_oracle(cfg):
    worst = 0.0
    for a in np.round(np.arange(0.1, 1.0, 0.1), 10):
        for sb in (2.0, 4.0, 6.0):
            c = paper_defaults(a)
            c = _with_widths(c, 1.0, sb)
            closed = ent.schmidt_closed_form(a, math.sqrt(1 - a * a), ent.overlap_theta(1.0, sb))
            worst = max(worst, abs(ent.schmidt_integral(c) - closed) / closed)
    out = [CheckResult("schmidt closed form vs 4D integral", worst <= 1e-4, f"max rel {worst:.2e}", "<= 1e-4")]

    ends = [ent.schmidt_closed_form(0.0, 1.0, t) for t in (0.0, 0.3, 0.6)]
    ends += [ent.schmidt_closed_form(1.0, 0.0, t) for t in (0.0, 0.3, 0.6)]
    out.append(CheckResult("S(a=0) = S(a=1) = 1", all(s == 1.0 for s in ends), str(ends), "exactly 1"))

    r = 1 / math.sqrt(2)
    s_peak = ent.schmidt_closed_form(r, r, 0.0)
    out.append(CheckResult("S(1/sqrt2, theta=0) = 2", abs(s_peak - 2.0) <= 1e-12, f"{s_peak:.15f}", "2"))
    argmax_ok = True
    for theta in (0.0, 0.3, 0.6):
        a, s = ent.schmidt_sweep("a", theta, points=100001)
        argmax_ok &= abs(a[np.argmax(s)] - r) <= 1e-5
    out.append(CheckResult("sweep maximum at a = 1/sqrt2", bool(argmax_ok), str(argmax_ok), "theta in {0, 0.3, 0.6}"))

    h = 1e-4
    worst_slope = -np.inf
    for a in (0.7, 0.5, 0.4):
        b = math.sqrt(1 - a * a)
        th = np.linspace(0.01, 0.99, 99)
        slope = (ent.schmidt_closed_form(a, b, th + h) - ent.schmidt_closed_form(a, b, th - h)) / (2 * h)
        worst_slope = max(worst_slope, float(np.max(slope)))
    out.append(CheckResult("S decreasing in theta", worst_slope < 0, f"max dS/dtheta {worst_slope:.3e}", "< 0"))
    return out


def _with_widths(cfg: ArrangementConfig, sigma, sigma_bar):
    return replace(cfg,
                   psi=replace(cfg.psi, width=sigma), phi=replace(cfg.phi, width=sigma),
                   varphi=replace(cfg.varphi, width=sigma_bar), chi=replace(cfg.chi, width=sigma_bar))


def check_eq9(cfg):
    state = normalize(cfg)
    rng = np.random.default_rng(20240601)
    x = np.sort(rng.uniform(-4, 4, 1000))
    d_direct = _difference_at(state, x)
    d_formula = _formula_at(state, x)
    scale = np.max(np.abs(d_formula))
    err = float(np.max(np.abs(d_direct - d_formula)) / scale)
    return [CheckResult("(P-P_mix)-(P-P_pro^a) = |b|^2 (P_pro^a-P_pro^b)", err <= 1e-10,
                        f"max rel {err:.2e}", "<= 1e-10")]


def _difference_at(state, x):
    y = np.float64(0.0)
    p = probability_density(state.as_kind(StateKind.SUPERPOSITION), x, y)
    mix = probability_density(state.as_kind(StateKind.MIXTURE), x, y)
    pro = probability_density(state.as_kind(StateKind.PRODUCT_A), x, y)
    return (p - mix) - (p - pro)


def _formula_at(state, x):
    y = np.float64(0.0)
    pa = probability_density(state.as_kind(StateKind.PRODUCT_A), x, y)
    pb = probability_density(state.as_kind(StateKind.PRODUCT_B), x, y)
    return abs(state.config.b) ** 2 * (pa - pb)


def check_non_monotonicity(cfg):
    seps = {}
    for a in (0.3, 0.7):
        st = normalize(cfg.with_coeffs(a))
        seps[a] = separation(pattern(st, 0.0), pattern(st.as_kind(StateKind.PRODUCT_A), 0.0))
    theta = ent.overlap_theta(cfg.psi.width, cfg.varphi.width)
    s03 = ent.schmidt_closed_form(0.3, math.sqrt(0.91), theta)
    s07 = ent.schmidt_closed_form(0.7, math.sqrt(0.51), theta)
    ok = seps[0.3] > seps[0.7] and s03 < s07
    return [CheckResult("separation not monotone in S", bool(ok),
                        f"sep(0.3)={seps[0.3]:.5f} sep(0.7)={seps[0.7]:.5f} S(0.3)={s03:.4f} S(0.7)={s07:.4f}",
                        "sep(0.3) > sep(0.7) and S(0.3) < S(0.7)")]


def check_normalization(cfg):
    state = normalize(cfg)
    out = [
        CheckResult("N > N_a", state.norm_sup > state.norm_a,
                    f"N={state.norm_sup:.4f} N_a={state.norm_a:.4f}", "N > N_a"),
        CheckResult("N > N_b", state.norm_sup > state.norm_b,
                    f"N={state.norm_sup:.4f} N_b={state.norm_b:.4f}", "N > N_b"),
    ]
    g = GridSpec.symmetric(12.0, 1201)
    X, Y = np.meshgrid(g.points(), g.points(), indexing="ij")
    for kind in StateKind:
        total = float(integrate_grid_2d(probability_density(state.as_kind(kind), X, Y), g, g))
        out.append(CheckResult(f"integral of P ({kind.value})", _within(total, 1.0, 1e-6), f"{total:.9f}", "1 +/- 1e-6"))
    return out


def check_detector_sweep(cfg):
    ys = np.linspace(0.0, 3.0, 31)
    t = time.perf_counter()
    sweep = fixed_detector_sweep(cfg, ys)
    elapsed = time.perf_counter() - t
    heights = np.array([s.height for s in sweep])
    minima, maxima = trajectory_extrema(ys, heights)
    first_min = minima[0][0] if minima else float("nan")
    later = [m for m in maxima if m[0] > first_min]
    rel_max = later[0][0] if later else float("nan")
    h17 = sweep[17].height
    return [
        CheckResult("sweep local minimum near y=0.9", _within(first_min, 0.9, 0.1), f"y={first_min:.3f}", "0.9 +/- 0.1"),
        CheckResult("sweep relative maximum near y=1.7", _within(rel_max, 1.7, 0.1), f"y={rel_max:.3f}", "1.7 +/- 0.1"),
        CheckResult("height(0) > height(1.7)", heights[0] > h17, f"{heights[0]:.4f} vs {h17:.4f}", "strict"),
        CheckResult("sweep runtime (31 points)", elapsed < 300, f"{elapsed:.1f} s", "< 300 s"),
    ]


def check_slit_oracle(cfg):
    x = np.linspace(-4, 4, 801)
    aperture = ApertureModel("gaussian", cfg.geometry)
    out = []
    for label, spec in [("psi", cfg.psi), ("varphi", cfg.varphi), ("phi", cfg.phi), ("chi", cfg.chi)]:
        closed = two_slit_amplitude(slit_coefficients(spec, cfg.geometry, cfg.mu_uses_total_time), x)
        err = relative_l2_mod_phase(propagate_two_slit(spec, aperture, x), closed)
        out.append(CheckResult(f"slit closed form vs propagation ({label}, width {spec.width:g})",
                               err <= 1e-5, f"rel L2 {err:.2e}", "<= 1e-5"))
    return out


def check_peak_positions(cfg):
    state = normalize(cfg)
    grid = DEFAULT_PATTERN_GRID
    ref = find_peaks(pattern(state, 0.0, grid))
    worst = 0.0
    counts_match = True
    for kind in (StateKind.MIXTURE, StateKind.PRODUCT_A, StateKind.PRODUCT_B):
        other = find_peaks(pattern(state.as_kind(kind), 0.0, grid))
        for mine, theirs in ((ref.maxima, other.maxima), (ref.minima, other.minima)):
            if len(mine) != len(theirs):
                counts_match = False
                continue
            worst = max(worst, max(abs(p[0] - q[0]) for p, q in zip(mine, theirs)))
    ok = counts_match and worst <= grid.step
    return [CheckResult("extrema positions shared across state kinds", ok,
                        f"max shift {worst:.4f} um (counts match: {counts_match})",
                        f"<= one grid step ({grid.step:.4f} um)")]


CHECKS: dict[str, Callable] = {
    "purity": check_purity,
    "visibility": check_visibility,
    "schmidt-oracle": check_schmidt_oracle,
    "eq9": check_eq9,
    "non-monotonicity": check_non_monotonicity,
    "normalization": check_normalization,
    "detector-sweep": check_detector_sweep,
    "slit-oracle": check_slit_oracle,
    "peak-positions": check_peak_positions,
}


def run_checks(cfg: ArrangementConfig | None = None, only=None) -> list[CheckResult]:
    cfg = paper_defaults() if cfg is None else cfg
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(", ".join(unknown))
    results = []
    for name in names:
        results.extend(CHECKS[name](cfg))
    return results
