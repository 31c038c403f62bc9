"""Exception types shared across the simulator."""


class SimulationError(Exception):
    """Base class for all aldsim errors."""


class GaugeViolationError(SimulationError):
    """Velocity is not timelike and future-directed."""


class SingularFieldError(SimulationError):
    """External field evaluated at a singular point."""


class DomainError(SimulationError):
    """Argument outside an operation's domain (e.g. negative elapsed time)."""


class UnphysicalMassError(SimulationError):
    """Effective mass is non-positive somewhere on the requested range."""


class GridMismatchError(SimulationError):
    """Two proper-time grids that must agree do not."""


class SpectrumError(SimulationError):
    """Noise spectrum is invalid (negative values)."""


class MassShellError(SimulationError):
    """Mass-shell constraint drifted beyond the abort threshold."""


class ConfigError(SimulationError):
    """Invalid run configuration."""
