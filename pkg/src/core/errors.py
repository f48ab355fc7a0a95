"""Typed errors shared by every pfrelay component."""

from typing import Dict, List, Optional


class PFRelayError(Exception):
    """Root of all library errors"""


class InputError(PFRelayError, ValueError):
    """Malformed numerical input (non-finite, wrong shape, invalid spectrum)"""


class DomainError(InputError):
    """Transform argument outside its domain of definition"""

    def __init__(
        self,
        message: str,
        argument: float = None,
        lower: float = None,
        upper: float = None,
        factor: Optional[str] = None
    ):
        if factor:
            message = f"{message} [factor: {factor}]"
        super().__init__(message)
        self.argument = argument
        self.lower = lower
        self.upper = upper
        self.factor = factor


class EvaluationError(PFRelayError, ArithmeticError):
    """Integrand produced a non-finite value on an atom"""


class ConstructionError(PFRelayError, ValueError):
    """Precoder construction impossible (zero upstream power, empty allocation)"""


class ConvergenceError(PFRelayError, RuntimeError):
    """Root search failed to bracket or certify a solution"""

    def __init__(
        self,
        message: str,
        residuals: Optional[List[float]] = None,
        diagnostics: Optional[Dict] = None
    ):
        super().__init__(message)
        self.residuals = residuals or []
        self.diagnostics = diagnostics or {}


class ConfigError(PFRelayError, ValueError):
    """Experiment configuration rejected by the schema"""


__all__ = [
    'PFRelayError',
    'InputError',
    'DomainError',
    'EvaluationError',
    'ConstructionError',
    'ConvergenceError',
    'ConfigError'
]
