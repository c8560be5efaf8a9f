"""Exception hierarchy shared by the library and the CLI.

Each class carries the CLI exit code it maps to.
"""
from __future__ import annotations


class PentagonError(Exception):
    exit_code = 1


class ParseError(PentagonError):
    """Malformed input file (bad JSON, missing or mistyped field)."""

    exit_code = 3


class RangeError(PentagonError, ValueError):
    """Structurally well-formed data with out-of-range or mis-sized entries."""

    exit_code = 4


class AxiomViolation(PentagonError):
    """A law failed while validating a candidate structure.

    ``law`` names the axiom and ``witness`` is the first failing element,
    pair or triple in lexicographic scan order.
    """

    exit_code = 5

    def __init__(self, law: str, witness: tuple = (), detail: str = ""):
        self.law = law
        self.witness = tuple(witness)
        self.detail = detail
        msg = f"{law} fails at {self.witness}" if self.witness else f"{law} fails"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class BoundExceeded(PentagonError, ValueError):
    """Requested order lies outside the enumeration bound."""

    exit_code = 4
