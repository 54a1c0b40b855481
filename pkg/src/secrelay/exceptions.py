"""This module defines package-level exception classes."""


class SecrelayError(Exception):
    """Base exception class for secrelay errors."""
