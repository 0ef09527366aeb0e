"""Exception types shared across the package."""


class MicroswimError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(MicroswimError, ValueError):
    """A physical parameter is outside its valid domain."""


class UnsupportedInputError(MicroswimError, ValueError):
    """The input is valid physics but outside what this routine models."""


class NumericalError(MicroswimError, RuntimeError):
    """A numerical procedure failed to converge or lost accuracy."""


class GeometryError(MicroswimError, ValueError):
    """A surface or mesh is geometrically invalid (e.g. self-intersecting)."""


class InfeasibleDesignError(MicroswimError, ValueError):
    """No design satisfies the requested constraints."""


class ConfigError(MicroswimError, ValueError):
    """A run configuration or config file is invalid."""
