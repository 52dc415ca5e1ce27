"""
Exception hierarchy for tpcodes.

Every error carries the process exit code the CLI should use for it.
"""

from typing import Any, Dict, Optional


class TPCError(Exception):
    """Base class for all tpcodes errors."""

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"error": type(self).__name__, "message": self.message}
        if self.witness is not None:
            data["witness"] = self.witness
        return data


class UsageError(TPCError, ValueError):
    """Invalid command-line usage."""


class GroupSpecError(TPCError, ValueError):
    """Malformed group specification or invalid group table."""


class SizeGuardExceeded(TPCError, ValueError):
    """An object would exceed one of the configured size guards."""


class NotASubgroup(TPCError, ValueError):
    """The vertex set is not closed under the group operation."""


class NotNormal(TPCError, ValueError):
    """The subgroup is not invariant under conjugation."""


class NotAbelian(TPCError, ValueError):
    """The operation needs a commutative group."""


class IdentityInConnectionSet(TPCError, ValueError):
    """The connection set contains the identity, which would add loops."""


class NotInverseClosed(TPCError, ValueError):
    """Raised with witness {"element", "inverse"} for an element whose inverse is missing."""


class NotACode(TPCError, ValueError):
    """The vertex set is not a total perfect code, or not a vertex subset at all."""


class CodeNotConjugationClosed(TPCError, ValueError):
    """Raised with witness {"element", "conjugate"} for a code that is not a union of classes."""


class ConnectionSetNotConjugationClosed(TPCError, ValueError):
    """The connection set is not a union of conjugacy classes."""


class ElementInSubgroup(TPCError, ValueError):
    """The coset representative lies in the subgroup itself."""


class ElementNotInS(TPCError, ValueError):
    """The coset representative is not in the connection set."""


class NotAPartition(TPCError, ValueError):
    """The parts overlap or do not cover the vertex set."""


class EmptyEdgeSet(TPCError, ValueError):
    """The graph has no edges."""


class NotEquitable(TPCError, ValueError):
    """Raised with witness {"part", "vertices", "target_part", "counts"}."""


class NotSpanning(TPCError, ValueError):
    """The connection set does not span V(n, 2), so the cubelike graph is disconnected."""


class DegreeNotPowerOfTwo(TPCError, ValueError):
    """A connected cubelike graph whose degree is not a power of two has no TPC."""

    exit_code = 2


class ConstructionExhausted(TPCError):
    """No admissible check matrix exists for a spanning set of power-of-two size."""


class InternalInvariantViolated(TPCError, AssertionError):
    """A computed result contradicts an independent check."""
