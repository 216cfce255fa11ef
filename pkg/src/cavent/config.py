"""Run configuration: natural-units constants, parameter containers, flat
key=value config files.

Everything internal works in eV / eV^-1 (hbar = c = 1).  The only unit
conversion in the whole code base happens here: the spin-orbit gap and Fermi
velocity of a layer are combined into an effective Dirac mass
m = lambda_so * (c / v_F) in eV.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

__all__ = [
    "HBAR_C_EV_NM",
    "C_SI",
    "PhysicalConstants",
    "LayerParams",
    "CavityParams",
    "Kinematics",
    "QuadratureParams",
    "RunConfig",
    "ConfigError",
    "derived_mass",
    "load_config",
    "loads_config",
    "dumps_config",
    "default_flat",
    "config_from_flat",
    "config_to_flat",
    "SCHEMA_KEYS",
]

HBAR_C_EV_NM = 197.3269804  # eV nm, exact convention constant
C_SI = 2.99792458e8  # m/s


class ConfigError(ValueError):
    """Raised for malformed or invalid configuration input."""


@dataclass(frozen=True)
class PhysicalConstants:
    hbar_c: float = HBAR_C_EV_NM
    c_si: float = C_SI


@dataclass(frozen=True)
class LayerParams:
    """One layer: spin-orbit gap, Fermi velocity, cavity position, self-energy."""

    lambda_so: float  # eV
    v_fermi: float  # m/s
    d: float  # eV^-1, position inside the cavity
    sigma: complex  # eV, Sigma' + i*Gamma

    @property
    def mass(self) -> float:
        return self.lambda_so * C_SI / self.v_fermi


@dataclass(frozen=True)
class CavityParams:
    length_L: float  # eV^-1
    n_max: int
    coupling: float  # dimensionless kappa, absorbs e^2 zeta^2
    epsilon_reg: float  # eV^2, i*eps in the photon denominator


def _wrap_angle(phi: float) -> float:
    """Wrap to (-pi, pi]."""
    w = math.remainder(phi, 2.0 * math.pi)
    if w <= -math.pi:
        w += 2.0 * math.pi
    return w


@dataclass(frozen=True)
class Kinematics:
    p1: float  # eV
    p2: float  # eV
    phi1: float  # rad, stored wrapped to (-pi, pi]
    phi2: float

    def __post_init__(self):
        object.__setattr__(self, "phi1", _wrap_angle(self.phi1))
        object.__setattr__(self, "phi2", _wrap_angle(self.phi2))


@dataclass(frozen=True)
class QuadratureParams:
    n_phi: int = 512
    degeneracy_tol: float = 1e-10


@dataclass(frozen=True)
class RunConfig:
    layer1: LayerParams
    layer2: LayerParams
    cavity: CavityParams
    kin: Kinematics
    quad: QuadratureParams = field(default_factory=QuadratureParams)
    # channel weights in order (ee, eh, he, hh); complex so sensitivity runs
    # with relative phases are expressible
    weights: tuple = (1.0 + 0j, 1.0 + 0j, 1.0 + 0j, 1.0 + 0j)
    entropy_base: str = "e"  # "e" or "2"

    def validate(self) -> "RunConfig":
        lay = {"layer1": self.layer1, "layer2": self.layer2}
        for name, l in lay.items():
            if l.lambda_so <= 0:
                raise ConfigError(f"{name}: lambda_so must be > 0")
            if not (0.0 < l.v_fermi < C_SI):
                raise ConfigError(f"{name}: v_fermi must be in (0, c)")
            if not (0.0 <= l.d <= self.cavity.length_L):
                raise ConfigError(f"{name}: d must lie in [0, L]")
            if l.sigma.imag < 0:
                raise ConfigError(f"{name}: Im(sigma) must be >= 0")
        cav = self.cavity
        if cav.length_L <= 0:
            raise ConfigError("cavity: length_L must be > 0")
        if cav.n_max < 1:
            raise ConfigError("cavity: n_max must be >= 1")
        if cav.coupling < 0:
            raise ConfigError("cavity: coupling must be >= 0")
        if cav.epsilon_reg <= 0:
            raise ConfigError("cavity: epsilon_reg must be > 0")
        if self.kin.p1 < 0 or self.kin.p2 < 0:
            raise ConfigError("kinematics: momenta must be >= 0")
        if self.quad.n_phi < 2:
            raise ConfigError("quadrature: n_phi must be >= 2")
        if self.quad.degeneracy_tol <= 0:
            raise ConfigError("quadrature: degeneracy_tol must be > 0")
        if self.entropy_base not in ("e", "2"):
            raise ConfigError("entropy_base must be 'e' or '2'")
        return self


def derived_mass(layer: LayerParams, constants: PhysicalConstants = PhysicalConstants()) -> float:
    """Effective Dirac mass m = lambda_so * c / v_F in eV."""
    if layer.v_fermi <= 0:
        raise ConfigError("v_fermi must be > 0")
    return layer.lambda_so * constants.c_si / layer.v_fermi


# ---------------------------------------------------------------------------
# flat key=value schema
# ---------------------------------------------------------------------------

def _parse_weight(s):
    return complex(str(s).replace(" ", ""))


# key -> (parser, default)
_SCHEMA = {
    "lambda_so_eV": (float, 3.9e-3),
    "v_fermi_m_per_s": (float, 5.5e5),
    "L_inv_eV": (float, 2.0),
    "d1_inv_eV": (float, 0.9),
    "d2_inv_eV": (float, 1.1),
    "sigma1_re_eV": (float, 4.2e-3),
    "sigma1_im_eV": (float, 1e-6),
    "sigma2_re_eV": (float, 4.2e-3),
    "sigma2_im_eV": (float, 1e-6),
    "p1_eV": (float, 0.13),
    "p2_eV": (float, 0.12),
    "phi1_rad": (float, 0.0),
    "phi2_rad": (float, 0.0),
    "n_max": (int, 50),
    "n_phi": (int, 512),
    "coupling": (float, 1.5e-3),
    "epsilon_reg": (float, 1e-9),
    "degeneracy_tol": (float, 1e-10),
    "entropy_base": (str, "e"),
    "w_ee": (_parse_weight, 1.0 + 0j),
    "w_eh": (_parse_weight, 1.0 + 0j),
    "w_he": (_parse_weight, 1.0 + 0j),
    "w_hh": (_parse_weight, 1.0 + 0j),
}

SCHEMA_KEYS = tuple(_SCHEMA)


def default_flat() -> dict:
    return {k: v for k, (_, v) in _SCHEMA.items()}


def config_from_flat(flat: dict) -> RunConfig:
    """Build a validated RunConfig from a flat schema dict (defaults filled)."""
    d = default_flat()
    for k, v in flat.items():
        if k not in _SCHEMA:
            raise ConfigError(f"unknown config key: {k!r}")
        parser = _SCHEMA[k][0]
        try:
            d[k] = parser(v)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {k!r}: {v!r} ({exc})") from None
    cfg = RunConfig(
        layer1=LayerParams(d["lambda_so_eV"], d["v_fermi_m_per_s"], d["d1_inv_eV"],
                           complex(d["sigma1_re_eV"], d["sigma1_im_eV"])),
        layer2=LayerParams(d["lambda_so_eV"], d["v_fermi_m_per_s"], d["d2_inv_eV"],
                           complex(d["sigma2_re_eV"], d["sigma2_im_eV"])),
        cavity=CavityParams(d["L_inv_eV"], d["n_max"], d["coupling"], d["epsilon_reg"]),
        kin=Kinematics(d["p1_eV"], d["p2_eV"], d["phi1_rad"], d["phi2_rad"]),
        quad=QuadratureParams(d["n_phi"], d["degeneracy_tol"]),
        weights=(d["w_ee"], d["w_eh"], d["w_he"], d["w_hh"]),
        entropy_base=d["entropy_base"],
    )
    return cfg.validate()


def _fmt(v) -> str:
    if isinstance(v, complex):
        if v.imag == 0.0:
            return f"{v.real:.17g}"
        return format(v, ".17g").replace(" ", "")
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def config_to_flat(cfg: RunConfig) -> dict:
    """Inverse of config_from_flat (angles come back wrapped)."""
    return {
        "lambda_so_eV": cfg.layer1.lambda_so,
        "v_fermi_m_per_s": cfg.layer1.v_fermi,
        "L_inv_eV": cfg.cavity.length_L,
        "d1_inv_eV": cfg.layer1.d,
        "d2_inv_eV": cfg.layer2.d,
        "sigma1_re_eV": cfg.layer1.sigma.real,
        "sigma1_im_eV": cfg.layer1.sigma.imag,
        "sigma2_re_eV": cfg.layer2.sigma.real,
        "sigma2_im_eV": cfg.layer2.sigma.imag,
        "p1_eV": cfg.kin.p1,
        "p2_eV": cfg.kin.p2,
        "phi1_rad": cfg.kin.phi1,
        "phi2_rad": cfg.kin.phi2,
        "n_max": cfg.cavity.n_max,
        "n_phi": cfg.quad.n_phi,
        "coupling": cfg.cavity.coupling,
        "epsilon_reg": cfg.cavity.epsilon_reg,
        "degeneracy_tol": cfg.quad.degeneracy_tol,
        "entropy_base": cfg.entropy_base,
        "w_ee": cfg.weights[0],
        "w_eh": cfg.weights[1],
        "w_he": cfg.weights[2],
        "w_hh": cfg.weights[3],
    }


def loads_config(text: str) -> RunConfig:
    """Parse a flat ``key = value`` document ('#' starts a comment)."""
    flat = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        flat[key.strip()] = val.strip()
    return config_from_flat(flat)


def load_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_config(fh.read())


def dumps_config(cfg: RunConfig) -> str:
    lines = [f"{k} = {_fmt(v)}" for k, v in config_to_flat(cfg).items()]
    return "\n".join(lines) + "\n"
