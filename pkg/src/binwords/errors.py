"""Exception types shared across the package."""

from __future__ import annotations


class BinwordsError(Exception):
    """Base class for package-specific errors."""


class InvalidInputError(BinwordsError, ValueError):
    """A word, letter, alphabet, or parameter lies outside its documented domain."""


class UnsupportedOrderError(InvalidInputError):
    """Requested signature order exceeds the configured cap."""


class MorphismParseError(InvalidInputError):
    """Morphism rule string is malformed."""


class NotProlongableError(InvalidInputError):
    """Fixed-point generation was requested for a letter the morphism cannot be iterated on."""


class NotPrefixCodeError(InvalidInputError):
    """Decoding requires the image set to be a prefix code."""


class NoLinearActionError(BinwordsError):
    """No exact integer matrix reproduces the morphism's action on signatures."""


class CountOverflowError(BinwordsError, OverflowError):
    """Input is large enough that the fixed-width fast path could overflow."""


class BudgetExceededError(BinwordsError):
    """A configured node or wall-clock budget ran out."""
