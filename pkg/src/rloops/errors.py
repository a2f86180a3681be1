"""Structured errors raised by the algebra layers.

Every validation error names the first witness found, so failures are
reproducible without re-running the scan.
"""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all structural errors in this package."""


class MalformedTable(AlgebraError):
    """Table is not a square array of in-range indices."""


class NotAssociative(AlgebraError):
    def __init__(self, i: int, j: int, k: int):
        self.witness = (i, j, k)
        super().__init__(f"not associative: ({i}*{j})*{k} != {i}*({j}*{k})")


class NoIdentity(AlgebraError):
    """Index 0 is not a two-sided identity."""


class NoInverse(AlgebraError):
    def __init__(self, i: int):
        self.element = i
        super().__init__(f"element {i} has no two-sided inverse")


class ColumnNotBijective(AlgebraError):
    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} is not a permutation")


class CapExceeded(AlgebraError):
    """A configured size cap would be exceeded."""


class NotNormal(AlgebraError):
    """Subgroup is not normal in its parent."""


class InvalidSubgroup(AlgebraError):
    """Element set is not a subgroup of the parent group."""


class NotInvariant(AlgebraError):
    """Element set is not an invariant sub right loop (carries a witness)."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotCoreFree(AlgebraError):
    """Subgroup has a nontrivial core."""


class ExhaustedWithoutWitness(AlgebraError):
    """An exhaustive search finished without finding a promised witness.

    Raised instead of failing silently: it would contradict a theorem the
    search is expected to confirm, so it must surface as a finding.
    """


class PreconditionFailed(AlgebraError):
    """A check was invoked on an instance that violates its hypotheses."""


class CayParseError(AlgebraError):
    """A .cay file could not be parsed; carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        self.line = line
        super().__init__(f"line {line}: {message}")
