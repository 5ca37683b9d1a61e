"""Polarization spectral interferometry and Fourier-transform phase retrieval.

An interferogram between two spectrally overlapping pulses with a large
relative delay carries their differential spectral phase in its fringes; the
retrieval isolates the delayed sideband of the interferogram's pseudo-time
transform with a super-Gaussian window and takes the argument of the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (EmptyMaskError, GridMismatchError, SidebandOverlapError,
                     UndersampledFringeError)
from .pulsefield import SpectralField, SpectralGrid, TimeTrace, to_frequency, to_time

WEIGHT_MASK_FRACTION = 1e-3
DEFAULT_WINDOW_ORDER = 6
BASEBAND_LEAK_LIMIT = 0.01


@dataclass(frozen=True)
class Interferogram:
    """Real spectral intensity with fringes at the nominal delay."""

    grid: SpectralGrid
    intensity: np.ndarray  # real, >= 0
    delay_hint: float  # s

    def __post_init__(self):
        s = np.asarray(self.intensity, dtype=float)
        if s.shape != (self.grid.n_samples,):
            raise ValueError("intensity length does not match grid")
        if np.any(s < -1e-15 * max(s.max(), 1.0)):
            raise ValueError("interferogram intensity must be non-negative")
        object.__setattr__(self, "intensity", np.maximum(s, 0.0))


@dataclass(frozen=True)
class RetrievedPhase:
    grid: SpectralGrid
    phase: np.ndarray  # rad
    weight: np.ndarray  # |filtered cross term|, >= 0
    masked: np.ndarray  # True where the weight is too small to trust the phase


@dataclass(frozen=True)
class FtsiWindow:
    """Super-Gaussian pseudo-time window exp(-((t-t_c)/w)^order)."""

    center_time: float | None = None  # None: locate the sideband peak
    width: float | None = None  # None: delay_hint / 3
    order: int = DEFAULT_WINDOW_ORDER

    def __post_init__(self):
        if self.order < 2 or self.order % 2:
            raise ValueError("window order must be an even integer >= 2")


@dataclass(frozen=True)
class JumpReport:
    location: float  # rad/s
    magnitude: float  # rad, signed (level above minus level below)
    sign: int


def synthesize_interferogram(e_a: SpectralField, e_b: SpectralField, tau_ftsi: float,
                             extra_phase=None) -> Interferogram:
    """S(omega) = (1/2)|E_a + E_b exp(i(omega tau + extra_phase))|^2.

    extra_phase models delay-crystal dispersion beyond the pure delay; the
    reference-subtraction protocol cancels it.
    """
    if e_a.grid != e_b.grid:
        raise GridMismatchError("interferogram arms must share a grid")
    grid = e_a.grid
    samples_per_fringe = 2 * np.pi / (tau_ftsi * grid.omega_step) if tau_ftsi > 0 else np.inf
    if samples_per_fringe < 4:
        raise UndersampledFringeError(
            f"delay {tau_ftsi:.3g} s gives {samples_per_fringe:.2f} samples per fringe "
            "(need >= 4)"
        )
    psi = np.zeros(grid.n_samples) if extra_phase is None else np.asarray(extra_phase)
    total = e_a.amplitude + e_b.amplitude * np.exp(1j * (grid.omegas * tau_ftsi + psi))
    return Interferogram(grid, 0.5 * np.abs(total) ** 2, tau_ftsi)


def _pseudo_time(gram: Interferogram) -> TimeTrace:
    carrier = gram.grid.omegas[gram.grid.n_samples // 2]
    return to_time(SpectralField(gram.grid, gram.intensity.astype(complex), carrier))


def retrieve_phase(gram: Interferogram, window: FtsiWindow | None = None) -> RetrievedPhase:
    """Extract the differential spectral phase from the +tau sideband.

    Returns phase = omega*tau + (arg E_b - arg E_a) + extra_phase, wrapped per
    sample; samples whose filtered amplitude falls below WEIGHT_MASK_FRACTION
    of its maximum are masked.
    """
    if window is None:
        window = FtsiWindow()
    tau = gram.delay_hint
    trace = _pseudo_time(gram)
    t = trace.times
    mag = np.abs(trace.amplitude)

    if window.center_time is not None:
        t_c = window.center_time
    else:
        search = t > max(tau / 2, 2 * trace.t_step)
        if not np.any(search):
            raise SidebandOverlapError("no pseudo-time samples beyond the baseband to search")
        t_c = t[search][np.argmax(mag[search])]
    width = window.width if window.width is not None else tau / 3
    if width <= 0:
        raise ValueError("window width must be positive")

    win = np.exp(-(((t - t_c) / width) ** window.order))
    filtered = trace.amplitude * win

    power = np.abs(filtered) ** 2
    baseband = np.abs(t) <= tau / 4
    e_base = power[baseband].sum()
    e_side = power[~baseband].sum()
    if e_side > 0 and e_base > BASEBAND_LEAK_LIMIT * e_side:
        raise SidebandOverlapError(
            f"window leaks {e_base / e_side:.1%} of the sideband energy from the baseband; "
            "narrow the window or increase the delay"
        )

    carrier = gram.grid.omegas[gram.grid.n_samples // 2]
    cross = to_frequency(TimeTrace(trace.n_samples, trace.t_start, trace.t_step, filtered),
                         gram.grid, carrier)
    weight = np.abs(cross.amplitude)
    masked = weight < WEIGHT_MASK_FRACTION * weight.max() if weight.max() > 0 \
        else np.ones(gram.grid.n_samples, dtype=bool)
    phase = np.where(masked, 0.0, np.angle(cross.amplitude))
    return RetrievedPhase(gram.grid, phase, weight, masked)


def unwrap(rp: RetrievedPhase) -> RetrievedPhase:
    """2pi-unwrap each contiguous unmasked segment, anchored at its weight maximum.

    Masked gaps start fresh anchors, so a genuine pi jump sitting inside a
    masked gap survives unwrapping.
    """
    phase = rp.phase.copy()
    valid = ~rp.masked
    n = len(phase)
    i = 0
    while i < n:
        if not valid[i]:
            i += 1
            continue
        j = i
        while j < n and valid[j]:
            j += 1
        seg = slice(i, j)
        unwrapped = np.unwrap(rp.phase[seg])
        anchor = np.argmax(rp.weight[seg])
        unwrapped += 2 * np.pi * np.round((rp.phase[seg][anchor] - unwrapped[anchor]) / (2 * np.pi))
        phase[seg] = unwrapped
        i = j
    return RetrievedPhase(rp.grid, phase, rp.weight, rp.masked)


def wrap_to_principal(rp: RetrievedPhase) -> RetrievedPhase:
    """Map every phase sample back to (-pi, pi]; useful after subtraction."""
    wrapped = np.angle(np.exp(1j * rp.phase))
    return RetrievedPhase(rp.grid, wrapped, rp.weight, rp.masked)


def subtract_reference(with_device: RetrievedPhase, without_device: RetrievedPhase) -> RetrievedPhase:
    """Differential phase; cancels the FTSI delay ramp and any common dispersion."""
    if with_device.grid != without_device.grid:
        raise GridMismatchError("retrieved phases live on different grids")
    masked = with_device.masked | without_device.masked
    if masked.all():
        raise EmptyMaskError("no overlap between the unmasked regions of the two phases")
    phase = with_device.phase - without_device.phase
    weight = np.minimum(with_device.weight, without_device.weight)
    return RetrievedPhase(with_device.grid, np.where(masked, 0.0, phase), weight, masked)


def detect_phase_jump(rp: RetrievedPhase, omega0: float,
                      window_width: float = 2 * np.pi * 10e12,
                      min_samples: int = 8) -> JumpReport:
    """Estimate a phase step across omega0 from robust levels on either side."""
    w = rp.grid.omegas
    valid = ~rp.masked
    below = valid & (w >= omega0 - window_width) & (w < omega0)
    above = valid & (w > omega0) & (w <= omega0 + window_width)
    if below.sum() < min_samples or above.sum() < min_samples:
        raise EmptyMaskError(
            f"need >= {min_samples} unmasked samples on each side of the carrier "
            f"(have {int(below.sum())}/{int(above.sum())})"
        )
    level_below = float(np.median(rp.phase[below]))
    level_above = float(np.median(rp.phase[above]))
    magnitude = level_above - level_below

    # place the jump at the largest step between consecutive valid samples near omega0
    near = valid & (np.abs(w - omega0) <= window_width)
    idx = np.flatnonzero(near)
    if len(idx) >= 2:
        steps = np.abs(np.diff(rp.phase[idx]))
        k = int(np.argmax(steps))
        location = 0.5 * (w[idx[k]] + w[idx[k + 1]])
    else:
        location = omega0
    return JumpReport(location, magnitude, int(np.sign(magnitude)) if magnitude else 0)


def write_interferogram_csv(gram: Interferogram, path):
    g = gram.grid
    with open(path, "w") as fh:
        fh.write(f"# delay_hint={gram.delay_hint!r}\n")
        fh.write(f"# grid={g.n_samples} {g.omega_start!r} {g.omega_step!r}\n")
        fh.write("omega_rad_per_s,intensity\n")
        for w, s in zip(g.omegas, gram.intensity):
            fh.write(f"{float(w)!r},{float(s)!r}\n")


def read_interferogram_csv(path) -> Interferogram:
    delay = None
    grid = None
    vals = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# delay_hint="):
                delay = float(line.split("=", 1)[1])
            elif line.startswith("# grid="):
                n, start, step = line.split("=", 1)[1].split()
                grid = SpectralGrid(int(n), float(start), float(step))
            elif not line or line.startswith("#") or line.startswith("omega_rad_per_s"):
                continue
            else:
                vals.append(float(line.split(",")[1]))
    if delay is None or grid is None:
        raise ValueError(f"{path}: missing delay_hint/grid metadata")
    return Interferogram(grid, np.array(vals), delay)


def write_phase_csv(rp: RetrievedPhase, path):
    g = rp.grid
    with open(path, "w") as fh:
        fh.write(f"# grid={g.n_samples} {g.omega_start!r} {g.omega_step!r}\n")
        fh.write("omega_rad_per_s,phase_rad,weight,masked\n")
        for w, p, wt, m in zip(g.omegas, rp.phase, rp.weight, rp.masked):
            fh.write(f"{float(w)!r},{float(p)!r},{float(wt)!r},{int(m)}\n")


def read_phase_csv(path) -> RetrievedPhase:
    grid = None
    phase, weight, masked = [], [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# grid="):
                n, start, step = line.split("=", 1)[1].split()
                grid = SpectralGrid(int(n), float(start), float(step))
            elif not line or line.startswith("#") or line.startswith("omega_rad_per_s"):
                continue
            else:
                _, p, wt, m = line.split(",")
                phase.append(float(p))
                weight.append(float(wt))
                masked.append(bool(int(m)))
    if grid is None:
        raise ValueError(f"{path}: missing grid metadata")
    return RetrievedPhase(grid, np.array(phase), np.array(weight), np.array(masked))
