"""Exception types shared across the package."""


class OscilabError(Exception):
    """Base class for all package-specific errors."""


class GeometryError(OscilabError):
    """A cube or cell index does not fit the grid it is used with."""


class ConfigError(OscilabError):
    """Invalid configuration: bad parameter combination or file format."""


class SizeGuardError(OscilabError):
    """An exhaustive computation was requested beyond its feasibility guard."""


class InvariantViolation(OscilabError):
    """A mathematically guaranteed internal invariant failed; indicates a bug."""
