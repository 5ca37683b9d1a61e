"""Sellmeier dispersion models for uniaxial birefringent crystals.

Provides phase index, group index, the wavevector difference between the
extraordinary and ordinary axes and its frequency derivative, and the
characteristic frequency where the linearized birefringent response crosses
zero.  Wavelengths in the coefficient data are in micrometers; every public
operation takes SI arguments (rad/s) unless noted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

import numpy as np
import yaml

from .errors import DegenerateMaterialError, WavelengthRangeError

C_LIGHT = 299792458.0  # m/s


@dataclass(frozen=True)
class SellmeierModel:
    """n^2(lambda) = A + sum_i B_i lambda^2 / (lambda^2 - C_i), lambda in um."""

    constant_a: float
    terms: tuple[tuple[float, float], ...]  # (B_i, C_i[um^2]) pairs
    valid_range_um: tuple[float, float]
    label: str = ""

    def __post_init__(self):
        lo, hi = self.valid_range_um
        if not (0 < lo < hi):
            raise ValueError(f"bad validity window for {self.label!r}: {self.valid_range_um}")
        for _, c in self.terms:
            if lo**2 <= c <= hi**2:
                raise ValueError(
                    f"Sellmeier pole at {np.sqrt(c):.4g} um inside validity window of {self.label!r}"
                )

    def check_range(self, wl_um):
        lo, hi = self.valid_range_um
        wl = np.asarray(wl_um)
        if np.any(wl < lo) or np.any(wl > hi):
            bad = wl[(wl < lo) | (wl > hi)]
            raise WavelengthRangeError(
                f"wavelength {np.min(bad):.4g}-{np.max(bad):.4g} um outside "
                f"[{lo}, {hi}] um validity of model {self.label!r}"
            )


@dataclass(frozen=True)
class Material:
    """Named uniaxial crystal with ordinary and extraordinary axis models."""

    name: str
    ordinary: SellmeierModel
    extraordinary: SellmeierModel
    citation: str = ""


def refractive_index(model: SellmeierModel, wl_um) -> np.ndarray | float:
    """Phase index n(lambda) from the Sellmeier form; lambda in um."""
    model.check_range(wl_um)
    s = np.asarray(wl_um, dtype=float) ** 2
    n2 = model.constant_a + sum(b * s / (s - c) for b, c in model.terms)
    return np.sqrt(n2)


def group_index(model: SellmeierModel, wl_um) -> np.ndarray | float:
    """Group index n_g = n - lambda dn/dlambda, analytic derivative."""
    model.check_range(wl_um)
    s = np.asarray(wl_um, dtype=float) ** 2
    n = refractive_index(model, wl_um)
    # d(n^2)/dl = -2 l sum B C/(s-C)^2, so n_g = n + (s/n) sum B C/(s-C)^2
    correction = sum(b * c / (s - c) ** 2 for b, c in model.terms)
    return n + s * correction / n


def _wl_um(omega) -> np.ndarray | float:
    return 2 * np.pi * C_LIGHT / np.asarray(omega, dtype=float) * 1e6


def delta_n(material: Material, omega):
    """n_e - n_o at angular frequency omega [rad/s]."""
    wl = _wl_um(omega)
    return refractive_index(material.extraordinary, wl) - refractive_index(material.ordinary, wl)


def delta_n_group(material: Material, omega):
    """n_g,e - n_g,o at angular frequency omega [rad/s]."""
    wl = _wl_um(omega)
    return group_index(material.extraordinary, wl) - group_index(material.ordinary, wl)


def delta_k(material: Material, omega):
    """Wavevector difference k_e - k_o [rad/m] at omega [rad/s]."""
    return delta_n(material, omega) * np.asarray(omega, dtype=float) / C_LIGHT


def delta_k_prime(material: Material, omega):
    """Frequency derivative of delta_k [s/m]: group-delay difference per length."""
    return delta_n_group(material, omega) / C_LIGHT


def omega1(material: Material, omega0: float) -> float:
    """Zero crossing of the linearized birefringent response [rad/s].

    omega1 = omega0 - delta_k/delta_k' evaluated at omega0; equals zero for
    a dispersionless material (pure time shift).
    """
    dng = float(delta_n_group(material, omega0))
    if dng == 0.0:
        raise DegenerateMaterialError(
            f"material {material.name!r} has zero group-index contrast at the carrier"
        )
    dn = float(delta_n(material, omega0))
    return omega0 * (dng - dn) / dng


def _axis_model(name, axis, data) -> SellmeierModel:
    return SellmeierModel(
        constant_a=float(data["A"]),
        terms=tuple((float(b), float(c)) for b, c in data["terms"]),
        valid_range_um=tuple(data["_range"]),
        label=f"{name}:{axis}",
    )


def load_materials(path=None) -> dict[str, Material]:
    """Load the bundled material database (or a user-supplied YAML file)."""
    if path is None:
        text = resources.files("bsbshaper.data").joinpath("materials.yaml").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    raw = yaml.safe_load(text)
    raw.pop("version", None)
    materials = {}
    for name, entry in raw.items():
        rng = tuple(float(v) for v in entry["valid_range_um"])
        for axis in ("ordinary", "extraordinary"):
            entry[axis]["_range"] = rng
        materials[name] = Material(
            name=name,
            ordinary=_axis_model(name, "o", entry["ordinary"]),
            extraordinary=_axis_model(name, "e", entry["extraordinary"]),
            citation=entry.get("citation", ""),
        )
    return materials


_cache: dict[str, Material] = {}


def get_material(name: str) -> Material:
    """Bundled material by name (cached); raises KeyError with the known names."""
    if not _cache:
        _cache.update(load_materials())
    try:
        return _cache[name]
    except KeyError:
        raise KeyError(f"unknown material {name!r}; available: {sorted(_cache)}") from None
