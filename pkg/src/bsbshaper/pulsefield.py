"""Spectral pulse representation, test-pulse synthesis, and transforms.

Fields live on a uniform angular-frequency grid.  The global sign convention
is E(t) = (1/2pi) integral E(omega) exp(-i omega t) domega, so a spectral
factor exp(+i omega tau) delays a pulse by tau and the time-derivative filter
is -i omega T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridMismatchError, SupportLeakError

EDGE_LEAK_FRACTION = 1e-6

_LN2 = np.log(2.0)


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform angular-frequency sampling; n_samples must be a power of two."""

    n_samples: int
    omega_start: float  # rad/s
    omega_step: float  # rad/s

    def __post_init__(self):
        if self.n_samples < 2 or self.n_samples & (self.n_samples - 1):
            raise ValueError(f"n_samples must be a power of two, got {self.n_samples}")
        if self.omega_start <= 0 or self.omega_step <= 0:
            raise ValueError("grid must be strictly positive and increasing")

    @property
    def omegas(self) -> np.ndarray:
        return self.omega_start + self.omega_step * np.arange(self.n_samples)

    @property
    def omega_end(self) -> float:
        return self.omega_start + self.omega_step * (self.n_samples - 1)

    def contains(self, omega: float) -> bool:
        return self.omega_start <= omega <= self.omega_end

    @property
    def time_step(self) -> float:
        return 2 * np.pi / (self.n_samples * self.omega_step)


def default_grid(n_samples: int = 4096,
                 nu_start: float = 150e12,
                 nu_end: float = 600e12) -> SpectralGrid:
    """4096 samples over 150-600 THz unless overridden."""
    step = 2 * np.pi * (nu_end - nu_start) / n_samples
    return SpectralGrid(n_samples, 2 * np.pi * nu_start, step)


@dataclass(frozen=True)
class SpectralField:
    """Complex spectral amplitude on a grid, with carrier reference omega0."""

    grid: SpectralGrid
    amplitude: np.ndarray  # complex, len n_samples
    omega0: float  # rad/s

    def __post_init__(self):
        amp = np.asarray(self.amplitude, dtype=complex)
        if amp.shape != (self.grid.n_samples,):
            raise ValueError("amplitude length does not match grid")
        amp.setflags(write=False)
        object.__setattr__(self, "amplitude", amp)
        if not self.grid.contains(self.omega0):
            raise ValueError(f"carrier {self.omega0:.4g} rad/s outside grid")

    def energy(self) -> float:
        """integral |E(omega)|^2 domega on the grid."""
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.grid.omega_step)


@dataclass(frozen=True)
class TimeTrace:
    n_samples: int
    t_start: float  # s
    t_step: float  # s
    amplitude: np.ndarray  # complex

    @property
    def times(self) -> np.ndarray:
        return self.t_start + self.t_step * np.arange(self.n_samples)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.amplitude) ** 2) * self.t_step)


def edge_leak_fraction(amplitude: np.ndarray) -> float:
    """Fraction of field energy sitting in the outermost grid samples."""
    power = np.abs(np.asarray(amplitude)) ** 2
    total = power.sum()
    if total == 0:
        return 0.0
    return float((power[0] + power[-1]) / total)


def _check_support(amplitude, label):
    leak = edge_leak_fraction(amplitude)
    if leak > EDGE_LEAK_FRACTION:
        raise SupportLeakError(
            f"{label}: edge-energy fraction {leak:.3g} exceeds {EDGE_LEAK_FRACTION:.0e}; "
            "enlarge the grid span"
        )


def _check_grids(a_grid: SpectralGrid, b_grid: SpectralGrid):
    if a_grid != b_grid:
        raise GridMismatchError(f"grids differ: {a_grid} vs {b_grid}")


def gaussian_pulse(grid: SpectralGrid, omega0: float, fwhm_intensity: float) -> SpectralField:
    """Flat-phase Gaussian with the given spectral intensity FWHM [rad/s], unit energy."""
    if fwhm_intensity <= 0:
        raise ValueError("fwhm_intensity must be positive")
    w = grid.omegas
    amp = np.exp(-2 * _LN2 * ((w - omega0) / fwhm_intensity) ** 2).astype(complex)
    _check_support(amp, "gaussian_pulse")
    amp /= np.sqrt(np.sum(np.abs(amp) ** 2) * grid.omega_step)
    return SpectralField(grid, amp, omega0)


def apply_transfer(field: SpectralField, transfer) -> SpectralField:
    """Pointwise product with a transfer function sampled on the same grid.

    `transfer` is any object with .grid and .values (complex per sample),
    or a bare array.
    """
    values = getattr(transfer, "values", None)
    if values is None:
        values = np.asarray(transfer, dtype=complex)
        if values.shape != (field.grid.n_samples,):
            raise GridMismatchError("transfer array length does not match field grid")
    else:
        _check_grids(field.grid, transfer.grid)
    return SpectralField(field.grid, field.amplitude * values, field.omega0)


def derivative_field_oracle(field: SpectralField, t_const: float) -> SpectralField:
    """Exact field-derivative objective: multiply by -i omega T1."""
    w = field.grid.omegas
    return SpectralField(field.grid, -1j * w * t_const * field.amplitude, field.omega0)


def derivative_envelope_oracle(field: SpectralField, t_const: float) -> SpectralField:
    """Exact envelope-derivative objective: multiply by -i (omega - omega0) T2."""
    w = field.grid.omegas
    return SpectralField(field.grid, -1j * (w - field.omega0) * t_const * field.amplitude,
                         field.omega0)


def replica_difference(field: SpectralField, tau: float) -> SpectralField:
    """Balanced interferometric difference of two replicas delayed by +-tau/2.

    (1/2)E(t+tau/2) - (1/2)E(t-tau/2); spectral factor -i sin(omega tau/2)
    under the global convention, which tends to -i omega tau/2 for small tau.
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    w = field.grid.omegas
    return SpectralField(field.grid, -1j * np.sin(w * tau / 2) * field.amplitude, field.omega0)


def to_time(field: SpectralField) -> TimeTrace:
    """Transform to a centered time window of length 2pi/omega_step."""
    n = field.grid.n_samples
    dt = field.grid.time_step
    t_start = -(n // 2) * dt
    k = np.arange(n)
    pre = field.amplitude * np.exp(-1j * k * field.grid.omega_step * t_start)
    spec = np.fft.fft(pre)
    t = t_start + dt * k
    amp = field.grid.omega_step / (2 * np.pi) * np.exp(-1j * field.grid.omega_start * t) * spec
    return TimeTrace(n, t_start, dt, amp)


def to_frequency(trace: TimeTrace, grid: SpectralGrid, omega0: float) -> SpectralField:
    """Inverse of to_time for a trace produced on (or consistent with) `grid`."""
    if trace.n_samples != grid.n_samples:
        raise GridMismatchError("trace length does not match grid")
    j = np.arange(trace.n_samples)
    pre = trace.amplitude * np.exp(1j * grid.omega_start * j * trace.t_step)
    spec = np.fft.ifft(pre) * trace.n_samples * trace.t_step
    amp = spec * np.exp(1j * grid.omegas * trace.t_start)
    return SpectralField(grid, amp, omega0)


def write_field_csv(field: SpectralField, path):
    """CSV with header `omega_rad_per_s,re,im` and metadata comment lines."""
    g = field.grid
    with open(path, "w") as fh:
        fh.write(f"# omega0={field.omega0!r}\n")
        fh.write(f"# grid={g.n_samples} {g.omega_start!r} {g.omega_step!r}\n")
        fh.write("omega_rad_per_s,re,im\n")
        for w, a in zip(g.omegas, field.amplitude):
            fh.write(f"{float(w)!r},{float(a.real)!r},{float(a.imag)!r}\n")


def read_field_csv(path) -> SpectralField:
    omega0 = None
    grid = None
    re, im = [], []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# omega0="):
                omega0 = float(line.split("=", 1)[1])
            elif line.startswith("# grid="):
                n, start, step = line.split("=", 1)[1].split()
                grid = SpectralGrid(int(n), float(start), float(step))
            elif not line or line.startswith("#") or line.startswith("omega_rad_per_s"):
                continue
            else:
                _, r, i = line.split(",")
                re.append(float(r))
                im.append(float(i))
    if omega0 is None or grid is None:
        raise ValueError(f"{path}: missing omega0/grid metadata")
    return SpectralField(grid, np.array(re) + 1j * np.array(im), omega0)
