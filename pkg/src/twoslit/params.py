"""Physical parameters of the arrangement, in reduced units.

Lengths are in micrometres, packet widths in inverse micrometres and times
enter only through the reduced combination hbar*t/m (square micrometres).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

COEFF_TOL = 1e-12
RENORM_TOL = 1e-6

REQUIRED_KEYS = (
    "b_s", "x0",
    "tau_s_1", "tau_f_1", "tau_s_2", "tau_f_2",
    "sigma", "sigma_bar", "xi", "xi_bar",
    "a", "b",
)
OPTIONAL_KEYS = ("mu_uses_total_time",)


class ConfigError(ValueError):
    pass


def _invariant(ok, desc):
    if not ok:
        raise ConfigError(f"config: invariant {desc}")


@dataclass(frozen=True)
class ParticleTimes:
    tau_s: float  # source -> slit
    tau_f: float  # slit -> screen

    def __post_init__(self):
        _invariant(self.tau_s > 0 and self.tau_f > 0, "positive reduced times")

    @property
    def total(self):
        return self.tau_s + self.tau_f


@dataclass(frozen=True)
class PacketSpec:
    width: float
    times: ParticleTimes

    def __post_init__(self):
        _invariant(self.width > 0, "positive packet width")


@dataclass(frozen=True)
class SlitGeometry:
    half_width: float
    center_offset: float

    def __post_init__(self):
        _invariant(self.half_width > 0, "positive slit half-width")
        _invariant(self.center_offset > self.half_width, "slit offset exceeds half-width")


@dataclass(frozen=True)
class SuperpositionCoeffs:
    a: complex
    b: complex

    def __post_init__(self):
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        _invariant(abs(norm - 1.0) <= COEFF_TOL, "coefficient normalization")

    @classmethod
    def from_real(cls, a: float) -> "SuperpositionCoeffs":
        """Real ``a`` with ``b = +sqrt(1 - a**2)``."""
        if not 0.0 <= a <= 1.0:
            raise ConfigError("config: invariant coefficient normalization")
        return cls(a, math.sqrt(1.0 - a * a))

    @property
    def is_real(self):
        return complex(self.a).imag == 0 and complex(self.b).imag == 0


@dataclass(frozen=True)
class ArrangementConfig:
    """Full parameter set.

    ``psi``/``varphi`` belong to particle x (terms a and b), ``phi``/``chi``
    to particle y.
    """

    geometry: SlitGeometry
    psi: PacketSpec
    varphi: PacketSpec
    phi: PacketSpec
    chi: PacketSpec
    coeffs: SuperpositionCoeffs
    mu_uses_total_time: bool = False

    def __post_init__(self):
        _invariant(self.psi.times == self.varphi.times, "particle x times shared by psi and varphi")
        _invariant(self.phi.times == self.chi.times, "particle y times shared by phi and chi")

    @property
    def a(self):
        return self.coeffs.a

    @property
    def b(self):
        return self.coeffs.b

    def with_coeffs(self, a, b=None) -> "ArrangementConfig":
        """Copy with new coefficients; ``b=None`` means ``+sqrt(1 - a**2)`` for real ``a``."""
        coeffs = SuperpositionCoeffs.from_real(a) if b is None else SuperpositionCoeffs(a, b)
        return replace(self, coeffs=coeffs)


def paper_defaults(a: float = 0.3) -> ArrangementConfig:
    t1 = ParticleTimes(tau_s=0.33, tau_f=0.2)
    # particle y is the lighter one: 0.9 * hbar t / m_2 = hbar t / m_1
    t2 = ParticleTimes(tau_s=0.33 / 0.9, tau_f=0.2 / 0.9)
    sigma, sigma_bar = 1.0, 6.0
    return ArrangementConfig(
        geometry=SlitGeometry(half_width=0.1, center_offset=0.4),
        psi=PacketSpec(sigma, t1),
        varphi=PacketSpec(sigma_bar, t1),
        phi=PacketSpec(sigma, t2),
        chi=PacketSpec(sigma_bar, t2),
        coeffs=SuperpositionCoeffs.from_real(a),
    )


def _parse_number(key, text):
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"config: invariant numeric value for {key}") from None


def _parse_bool(key, text):
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"config: invariant boolean value for {key}")


def parse_document(text: str) -> dict[str, str]:
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config: invariant key = value syntax (line {lineno})")
        key, value = (s.strip() for s in line.split("=", 1))
        entries[key] = value
    return entries


def load_config(source: str) -> ArrangementConfig:
    """Build a validated config from a ``key = value`` document."""
    entries = parse_document(source)
    for key in REQUIRED_KEYS:
        if key not in entries:
            raise ConfigError(f"config: missing {key}")

    num = {k: _parse_number(k, entries[k]) for k in REQUIRED_KEYS if k != "b"}
    for k, v in num.items():
        if k != "a" and isinstance(v, complex):
            raise ConfigError(f"config: invariant real value for {k}")

    a = num["a"]
    if entries["b"].strip().lower() == "auto":
        if isinstance(a, complex) or not 0.0 <= a <= 1.0:
            raise ConfigError("config: invariant coefficient normalization")
        b = math.sqrt(1.0 - a * a)
    else:
        b = _parse_number("b", entries["b"])

    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1.0) > RENORM_TOL:
        raise ConfigError("config: invariant coefficient normalization")
    if abs(norm - 1.0) > COEFF_TOL:
        scale = 1.0 / math.sqrt(norm)
        a, b = a * scale, b * scale

    t1 = ParticleTimes(num["tau_s_1"], num["tau_f_1"])
    t2 = ParticleTimes(num["tau_s_2"], num["tau_f_2"])
    mu_total = _parse_bool("mu_uses_total_time", entries.get("mu_uses_total_time", "false"))
    return ArrangementConfig(
        geometry=SlitGeometry(num["b_s"], num["x0"]),
        psi=PacketSpec(num["sigma"], t1),
        varphi=PacketSpec(num["sigma_bar"], t1),
        phi=PacketSpec(num["xi"], t2),
        chi=PacketSpec(num["xi_bar"], t2),
        coeffs=SuperpositionCoeffs(a, b),
        mu_uses_total_time=mu_total,
    )


def read_config(path: str | Path) -> ArrangementConfig:
    return load_config(Path(path).read_text())


def _fmt(value) -> str:
    value = complex(value)
    if value.imag == 0:
        return repr(value.real)
    return repr(value).strip("()")


def dump_config(cfg: ArrangementConfig) -> str:
    """Serialize to the ``key = value`` document format (round-trips exactly)."""
    t1, t2 = cfg.psi.times, cfg.phi.times
    rows = [
        ("b_s", cfg.geometry.half_width),
        ("x0", cfg.geometry.center_offset),
        ("tau_s_1", t1.tau_s),
        ("tau_f_1", t1.tau_f),
        ("tau_s_2", t2.tau_s),
        ("tau_f_2", t2.tau_f),
        ("sigma", cfg.psi.width),
        ("sigma_bar", cfg.varphi.width),
        ("xi", cfg.phi.width),
        ("xi_bar", cfg.chi.width),
        ("a", cfg.coeffs.a),
        ("b", cfg.coeffs.b),
    ]
    lines = [f"{key} = {_fmt(value)}" for key, value in rows]
    lines.append(f"mu_uses_total_time = {'true' if cfg.mu_uses_total_time else 'false'}")
    return "\n".join(lines) + "\n"
