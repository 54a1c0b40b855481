"""This module defines all model exceptions."""

from secrelay.exceptions import SecrelayError


class ModelError(SecrelayError):
    """Base type for all model exceptions."""


class ScenarioError(ModelError, ValueError):
    """Scenario or scenario config is malformed."""


class ConstraintError(ModelError, ValueError):
    """Power constraints or solver settings are infeasible."""


class OracleCostError(ModelError):
    """Brute-force search was requested on an oversized instance."""
