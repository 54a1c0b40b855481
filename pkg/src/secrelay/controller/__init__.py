"""This package runs the command-line commands."""

from .commands import ExitCode
from .controller import Command
from .controller import Controller

__all__ = (
    'Command',
    'Controller',
    'ExitCode',
)
