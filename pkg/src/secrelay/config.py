"""Program configuration parameters.

This module defines all external program parameters which affect
program operation. Every value can be set through a `SECRELAY_*`
environment variable or a `.env` file, and command-line flags
override them field by field.
"""

from typing import Any

from pydantic import Field
from pydantic import ValidationError
from pydantic_settings import BaseSettings
from pydantic_settings import SettingsConfigDict

from secrelay.exceptions import SecrelayError
from secrelay.log import get_logger


class ConfigError(SecrelayError):
    """Error while reading program configuration."""


class ConfigBase(BaseSettings):
    """Base class for other settings classes."""

    model_config = SettingsConfigDict(
        env_prefix='SECRELAY_',
        env_file='.env',
        env_file_encoding='utf-8',
        extra='ignore',
    )

    def __init__(self, **overrides: Any):
        """Initialize a config object.

        Args:
            **overrides: Explicit values, `None` entries are ignored so
                unset command-line flags fall through to the environment.

        Raises:
            ConfigError: Error while reading program configuration.
        """
        values = {k: v for k, v in overrides.items() if v is not None}
        try:
            super().__init__(**values)
        except ValidationError as e:
            logger = get_logger(self)
            logger.critical('Read config error: %s', e)
            raise ConfigError(e) from e


class ChannelConfig(ConfigBase):
    """Propagation parameters of the line-of-sight channel model."""

    lambda0: float = Field(default=1e4, gt=0)
    """Reference SNR at 1 m, beta0 / sigma^2 (linear)."""

    d_min: float = Field(default=1.0, gt=0)
    """Distances below this value (meters) are clamped."""


class PowerConfig(ConfigBase):
    """Uplink transmit power budget shared by all users."""

    p_avg: float = Field(default=0.1, ge=0)
    """Average transmit power per user, watts."""

    p_max: float = Field(default=0.2, ge=0)
    """Peak transmit power per user, watts."""


class SolverSettings(ConfigBase):
    """Stopping rule of the alternating optimization."""

    chi: float = Field(default=1e-4, gt=0, allow_inf_nan=False)
    """Relative-improvement threshold."""

    max_iterations: int = Field(default=100, ge=1)
    """Hard cap on outer iterations."""


class OracleConfig(ConfigBase):
    """Resolution of the brute-force reference search."""

    grid_res: int = Field(default=101, ge=2)
    """Position grid points per axis."""

    power_levels: int = Field(default=201, ge=2)
    """Power grid levels in [0, p_max]."""

    ratio_floor: float = Field(default=0.98, gt=0)
    """Minimum accepted solver/oracle objective ratio."""
