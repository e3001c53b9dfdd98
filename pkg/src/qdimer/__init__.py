"""Non-Hermitian exciton dynamics of a dissipative two-site system."""
from .bath import FcResult, fc_exponent, fc_factor, renormalized_coupling, spectral_density
from .dynamics import (
    AmplitudePair,
    PopulationTrace,
    Regime,
    classify_regime,
    eigenvalues,
    populations_degenerate,
    propagate_general,
    propagate_oracle,
    state_amplitudes,
)
from .params import BathParams, DimerParams, validate
from .units import NATURAL, PHYSICAL, coth_thermal, wavenumber_to_angular_frequency

__version__ = "0.1.0"

__all__ = [
    "AmplitudePair", "BathParams", "DimerParams", "FcResult", "NATURAL", "PHYSICAL",
    "PopulationTrace", "Regime", "classify_regime", "coth_thermal", "eigenvalues",
    "fc_exponent", "fc_factor", "populations_degenerate", "propagate_general",
    "propagate_oracle", "renormalized_coupling", "spectral_density", "state_amplitudes",
    "validate", "wavenumber_to_angular_frequency",
]
