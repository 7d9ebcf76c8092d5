"""Two distinguishable particles through one double slit: coincidence patterns and entanglement."""
from .entanglement import (overlap_theta, schmidt_closed_form, schmidt_integral, schmidt_sweep,
                           source_normalization)
from .joint import JointState, StateKind, normalize, probability_density, purity
from .params import ArrangementConfig, ConfigError, load_config, paper_defaults
from .patterns import Pattern, find_peaks, fixed_detector_sweep, pattern, separation, visibility

__version__ = "0.1.0"

__all__ = [
    "ArrangementConfig", "ConfigError", "JointState", "Pattern", "StateKind",
    "find_peaks", "fixed_detector_sweep", "load_config", "normalize", "overlap_theta",
    "paper_defaults", "pattern", "probability_density", "purity", "schmidt_closed_form",
    "schmidt_integral", "schmidt_sweep", "separation", "source_normalization", "visibility",
]
