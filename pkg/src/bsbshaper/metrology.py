"""Fidelity scoring and compensator design solvers.

Overlap is the normalized squared inner product of two complex spectral
fields, the quantity that bounds the sensitivity of homodyne parameter
estimation with a shaped local oscillator.  Design solvers invert the
dispersion relations: thickness for a target group-delay difference, for an
interference order, and the two-material stack that moves the linearized
response zero to a chosen frequency.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import dispersion, shaper
from .dispersion import Material
from .errors import DegenerateMaterialError
from .pulsefield import SpectralField, SpectralGrid, apply_transfer
from .shaper import Compensator

BAND_INTENSITY_FLOOR = 1e-4  # of peak spectral intensity
ACHROMAT_MAX_CONDITION = 1e8


@dataclass(frozen=True)
class OverlapReport:
    overlap: float
    efficiency: float
    band: tuple[float, float]  # rad/s
    weighting: str = "complex field amplitude, source-intensity band limit"


@dataclass(frozen=True)
class DesignSolution:
    segments: tuple[tuple[Material, float], ...]  # (material, signed thickness m)
    achieved_delay: float  # s
    achieved_order: float
    achieved_omega1: float  # rad/s
    residuals: dict = field(default_factory=dict)


def band_from_field(fld: SpectralField, floor: float = BAND_INTENSITY_FLOOR):
    """(omega_lo, omega_hi) where the spectral intensity exceeds floor * peak."""
    power = np.abs(fld.amplitude) ** 2
    keep = power >= floor * power.max()
    w = fld.grid.omegas[keep]
    return float(w[0]), float(w[-1])


def mode_overlap(a: SpectralField, b: SpectralField, band=None) -> float:
    """|<a|b>|^2 / (<a|a><b|b>) restricted to the band; in [0, 1]."""
    if a.grid != b.grid:
        raise ValueError("overlap requires a common grid")
    if band is None:
        sel = slice(None)
    else:
        w = a.grid.omegas
        sel = (w >= band[0]) & (w <= band[1])
    ax, bx = a.amplitude[sel], b.amplitude[sel]
    na = np.sum(np.abs(ax) ** 2)
    nb = np.sum(np.abs(bx) ** 2)
    if na == 0 or nb == 0:
        raise ValueError("zero-energy field on the overlap band")
    return float(np.abs(np.sum(np.conj(ax) * bx)) ** 2 / (na * nb))


def efficiency(comp: Compensator, fld: SpectralField, mode: str) -> float:
    """Fraction of input energy ending up in the shaped polarization channel."""
    pair = shaper.transfer_exact(comp, fld.grid)
    shaped = pair.h_x if mode == "envelope-half" else pair.h_y
    power = np.abs(fld.amplitude) ** 2
    return float(np.sum(np.abs(shaped) ** 2 * power) / np.sum(power))


def _objective(grid: SpectralGrid, mode: str, t_const: float, omega0: float):
    if mode == "field":
        return shaper.objective_r1(grid, t_const)
    return shaper.objective_r2(grid, t_const, omega0)


def shaped_mode(comp: Compensator, fld: SpectralField, mode: str) -> SpectralField:
    """The pulse exiting the shaped polarization channel (common phase dropped).

    The common propagation phase is shared with the unshaped signal channel
    and cancels in any relative-shape comparison, so it is omitted here.
    """
    pair = shaper.transfer_exact(comp, fld.grid)
    channel = pair.h_x if mode == "envelope-half" else pair.h_y
    return apply_transfer(fld, channel)


def score_compensator(comp: Compensator, fld: SpectralField, mode: str,
                      band=None) -> OverlapReport:
    """Overlap of the exact shaped mode with its objective, plus channel efficiency.

    The time constant of the objective is the device's own half group-delay
    difference (overlap is invariant to it anyway).  Default band: where the
    source spectral intensity exceeds BAND_INTENSITY_FLOOR of its peak.
    """
    t_const = abs(dispersion.delta_k_prime(comp.material, fld.omega0) * comp.thickness / 2)
    objective = _objective(fld.grid, mode, t_const or 1e-16, fld.omega0)
    if band is None:
        band = band_from_field(fld)
    ov = mode_overlap(shaped_mode(comp, fld, mode), apply_transfer(fld, objective), band)
    return OverlapReport(ov, efficiency(comp, fld, mode), band)


def _delta_k_checked(material: Material, omega0: float) -> float:
    dk = float(dispersion.delta_k(material, omega0))
    if dk == 0.0:
        raise DegenerateMaterialError(f"{material.name!r} has no birefringence at the carrier")
    return dk


def _solution_for_length(material: Material, omega0: float, length: float) -> DesignSolution:
    dk = float(dispersion.delta_k(material, omega0))
    dkp = float(dispersion.delta_k_prime(material, omega0))
    return DesignSolution(
        segments=((material, length),),
        achieved_delay=dkp * length,
        achieved_order=dk * length / (2 * np.pi),
        achieved_omega1=dispersion.omega1(material, omega0),
        residuals={},
    )


def thickness_for_delay(material: Material, omega0: float, tau: float) -> DesignSolution:
    """Thickness giving group-delay difference tau: L = tau / delta_k'(omega0)."""
    dkp = float(dispersion.delta_k_prime(material, omega0))
    if dkp == 0.0:
        raise DegenerateMaterialError(f"{material.name!r} has no group-index contrast")
    return _solution_for_length(material, omega0, tau / dkp)


def thickness_for_order(material: Material, omega0: float, order: float) -> DesignSolution:
    """Thickness with delta_k(omega0) L / 2 = order * pi (half-integer orders allowed)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    dk = _delta_k_checked(material, omega0)
    return _solution_for_length(material, omega0, 2 * order * np.pi / dk)


def achromat_design(mat_a: Material, mat_b: Material, omega0: float,
                    target_omega1: float, target_tau: float) -> DesignSolution:
    """Two-material stack with prescribed delay and linearization zero.

    Solves sum_i delta_k'_i L_i = tau and sum_i delta_k_i L_i = (omega0 -
    target_omega1) tau for the signed thicknesses; negative thickness means
    crossed axes.
    """
    dkp = np.array([float(dispersion.delta_k_prime(m, omega0)) for m in (mat_a, mat_b)])
    # second row scaled by 1/omega0 so both rows share units before conditioning
    dk = np.array([float(dispersion.delta_k(m, omega0)) for m in (mat_a, mat_b)])
    system = np.vstack([dkp, dk / omega0])
    cond = np.linalg.cond(system)
    if not np.isfinite(cond) or cond > ACHROMAT_MAX_CONDITION:
        raise DegenerateMaterialError(
            f"material pair ({mat_a.name!r}, {mat_b.name!r}) is degenerate for the "
            f"achromat system (condition number {cond:.3g})"
        )
    rhs = np.array([target_tau, (omega0 - target_omega1) * target_tau / omega0])
    lengths = np.linalg.solve(system, rhs)

    total_dkp = float(dkp @ lengths)
    total_dk = float(dk @ lengths)
    if total_dkp == 0.0:
        raise DegenerateMaterialError("achromat stack has zero net group-delay contrast")
    w1 = omega0 - total_dk / total_dkp
    return DesignSolution(
        segments=((mat_a, float(lengths[0])), (mat_b, float(lengths[1]))),
        achieved_delay=total_dkp,
        achieved_order=total_dk / (2 * np.pi),
        achieved_omega1=w1,
        residuals={
            "omega1_over_omega0": w1 / omega0,
            "omega1_residual": abs(w1 - target_omega1) / omega0,
            "delay_residual": abs(total_dkp - target_tau) / abs(target_tau) if target_tau else 0.0,
            "condition_number": float(cond),
        },
    )


def stack_overlap(solution: DesignSolution, fld: SpectralField, mode: str = "field",
                  band=None) -> float:
    """Overlap of a (possibly multi-segment) stack's exact shaped mode with its objective."""
    pair = shaper.transfer_exact_segments(solution.segments, fld.grid)
    channel = pair.h_x if mode == "envelope-half" else pair.h_y
    t_const = abs(solution.achieved_delay) / 2 or 1e-16
    objective = _objective(fld.grid, mode, t_const, fld.omega0)
    if band is None:
        band = band_from_field(fld)
    return mode_overlap(apply_transfer(fld, channel), apply_transfer(fld, objective), band)
