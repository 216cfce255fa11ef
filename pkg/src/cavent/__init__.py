"""Momentum-resolved pseudospin entanglement of two cavity-coupled Dirac
quasiparticles, at first Born order of the ladder two-body equation."""

__version__ = "0.1.0"

from .config import (RunConfig, LayerParams, CavityParams, Kinematics,
                     QuadratureParams, PhysicalConstants, ConfigError,
                     load_config, loads_config, dumps_config, derived_mass,
                     config_from_flat, default_flat)
from .entanglement import entropy_at, entropy, reduce_state, EntropyResult
from .kernel import KinematicConstraint, ChannelIntegrals, channel_integrals
from .solver import TotalState, SingularPropagator, ZeroState
from .sweep import SweepSpec, Axis, run_sweep, write_csv, born_contour, preset, preset_names

__all__ = [
    "__version__",
    "RunConfig", "LayerParams", "CavityParams", "Kinematics",
    "QuadratureParams", "PhysicalConstants", "ConfigError",
    "load_config", "loads_config", "dumps_config", "derived_mass",
    "config_from_flat", "default_flat",
    "entropy_at", "entropy", "reduce_state", "EntropyResult",
    "KinematicConstraint", "ChannelIntegrals", "channel_integrals",
    "TotalState", "SingularPropagator", "ZeroState",
    "SweepSpec", "Axis", "run_sweep", "write_csv", "born_contour",
    "preset", "preset_names",
]
