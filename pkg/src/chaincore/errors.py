"""Exception hierarchy shared by every chaincore module."""

from __future__ import annotations


class ChaincoreError(Exception):
    """Base class for all engine errors."""


# group_core
class CapExceeded(ChaincoreError):
    pass


class InvalidPermutation(ChaincoreError):
    pass


class ParentMismatch(ChaincoreError):
    pass


class NotNormal(ChaincoreError):
    pass


class NotAbelian(ChaincoreError):
    pass


# char_modp
class SplitFailure(ChaincoreError):
    pass


class NonIntegral(ChaincoreError):
    pass


class NotCentral(ChaincoreError):
    pass


class NoExponent(ChaincoreError):
    pass


class NotAPower(ChaincoreError):
    pass


# fusion
class NotAHomomorphism(ChaincoreError):
    pass


class PrimeMismatch(ChaincoreError):
    pass


class DimensionMismatch(ChaincoreError):
    pass


class ParseError(ChaincoreError):
    pass


class ValidationError(ChaincoreError):
    def __init__(self, message: str, axiom: str | None = None):
        super().__init__(message)
        self.axiom = axiom


# clifford
class TheoremViolation(ChaincoreError):
    pass


class UncoveredIrrep(ChaincoreError):
    pass


# presentations / chain_center
class Exhausted(ChaincoreError):
    """Coset enumeration hit its limit; the result is inconclusive."""

    def __init__(self, limit: int):
        super().__init__(f"coset enumeration exceeded {limit} cosets")
        self.limit = limit


class NonCommutativeFusion(ChaincoreError):
    pass


# cli
class SpecParseError(ChaincoreError):
    def __init__(self, message: str, text: str = "", position: int = 0):
        if text:
            message = f"{message} at position {position}: {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position
