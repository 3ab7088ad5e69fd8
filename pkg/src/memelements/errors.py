"""Exception types shared by every module in the package."""


class MemElementsError(Exception):
    """Base class for all package-specific errors."""


class DomainError(MemElementsError):
    """An abscissa or descriptor lies outside the supported domain."""


class CapabilityError(MemElementsError):
    """A requested derivative or transform depth exceeds what a curve supports."""


class NumericalError(MemElementsError):
    """A numerical routine could not reach its accuracy contract."""


class ConsistencyError(MemElementsError):
    """Two independent computation routes disagreed beyond tolerance."""


class ConfigError(MemElementsError):
    """A configuration document or CLI argument is malformed."""
