"""This package optimizes a UAV relay and user powers against eavesdroppers."""

from .exceptions import SecrelayError
from .model import run_alternating_optimization

__all__ = (
    'SecrelayError',
    'run_alternating_optimization',
)
