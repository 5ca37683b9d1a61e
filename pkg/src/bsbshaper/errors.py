"""Exception types shared across the package."""


class BsbShaperError(Exception):
    """Base class for all package errors."""


class WavelengthRangeError(BsbShaperError):
    """Wavelength outside a dispersion model's validity window."""


class DegenerateMaterialError(BsbShaperError):
    """Material (or material pair) with no usable birefringent contrast."""


class GridMismatchError(BsbShaperError):
    """Two objects defined on different spectral grids were combined."""


class SupportLeakError(BsbShaperError):
    """Field energy leaks past the grid edges above the allowed fraction."""


class UndersampledFringeError(BsbShaperError):
    """Requested interferometric delay produces fringes the grid cannot resolve."""


class SidebandOverlapError(BsbShaperError):
    """FTSI window leaks baseband energy into the extracted sideband."""


class EmptyMaskError(BsbShaperError):
    """No valid samples left after mask intersection."""


class ConfigError(BsbShaperError):
    """Invalid run configuration; message aggregates all problems found."""
