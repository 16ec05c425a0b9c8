"""
Exception hierarchy shared by the library modules and the command line.
"""


class DyckGrassError(Exception):
    """Base class for every error raised by the library"""


class ParameterError(DyckGrassError, ValueError):
    """Invalid (n, i), position, label or other scalar parameter"""


class DomainError(DyckGrassError, ValueError):
    """Input outside the domain of an operation (e.g. w not in W^I)"""


class OrderError(DyckGrassError, ValueError):
    """Paths are not in the Bruhat relation the operation requires"""


class StripPlacementError(DyckGrassError, ValueError):
    """A Dyck strip cannot be added to or removed from a path"""


class ContractViolationError(DyckGrassError, ArithmeticError):
    """A relative product was applied outside the required ideals"""


class ConfigurationError(DyckGrassError, ValueError):
    """Structural preconditions of a construction are not met"""


class UsageError(DyckGrassError):
    """Invalid command line request"""
