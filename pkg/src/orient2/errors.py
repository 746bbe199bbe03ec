"""Exception hierarchy shared by every module.

Each domain error carries a short machine-readable ``code``; the CLI front
end prints errors as ``error: <CODE>: <detail>`` and exits with status 1.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for recoverable domain errors."""

    code = "DOMAIN"

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail


class LoopEdgeError(DomainError):
    code = "LOOP_EDGE"

    def __init__(self, vertex: int):
        super().__init__(f"loop at vertex {vertex}")
        self.vertex = vertex


class ParallelEdgeError(DomainError):
    code = "PARALLEL_EDGE"

    def __init__(self, u: int, v: int):
        pair = (min(u, v), max(u, v))
        super().__init__(f"conflicting edges on pair {pair}")
        self.pair = pair


class VertexOutOfRangeError(DomainError):
    code = "VERTEX_OUT_OF_RANGE"

    def __init__(self, vertex: int, n: int):
        super().__init__(f"vertex {vertex} not in 0..{n - 1}")
        self.vertex = vertex
        self.n = n


class MgSyntaxError(DomainError):
    code = "SYNTAX"

    def __init__(self, line: int, detail: str):
        super().__init__(f"line {line}: {detail}")
        self.line = line


class SameVertexError(DomainError):
    code = "SAME_VERTEX"


class EmptyGraphError(DomainError):
    code = "EMPTY_GRAPH"


class InfeasibleRatioError(DomainError):
    code = "INFEASIBLE_RATIO"


class PreconditionFailedError(DomainError):
    code = "PRECONDITION_FAILED"


class ExhaustedError(DomainError):
    """Raised when the randomized orientation search gives up.

    ``best_diameter`` is the smallest directed diameter seen over all tries
    (``math.inf`` when no try produced a strongly connected digraph).
    """

    code = "EXHAUSTED"

    def __init__(self, tries: int, best_diameter):
        super().__init__(
            f"no diameter-2 orientation in {tries} tries"
            f" (best diameter seen: {best_diameter})"
        )
        self.tries = tries
        self.best_diameter = best_diameter


class ZeroCError(DomainError):
    code = "ZERO_C"


class NonIntegralError(DomainError):
    """Some class size of the requested family is not an integer."""

    code = "NON_INTEGRAL"

    def __init__(self, entries, suggested_m=None):
        detail = ", ".join(f"{label}={value}" for label, value in entries)
        if suggested_m is not None:
            detail += f"; smallest feasible m={suggested_m}"
        super().__init__(detail)
        self.entries = list(entries)
        self.suggested_m = suggested_m


class NegativeSizeError(DomainError):
    code = "NEGATIVE_SIZE"


class NotExtremalError(DomainError):
    code = "NOT_EXTREMAL"


class CertificateFailedError(DomainError):
    code = "CERTIFICATE_FAILED"


class BudgetExceededError(DomainError):
    code = "BUDGET_EXCEEDED"


class EmptyGridError(DomainError):
    code = "EMPTY_GRID"


class RejectionExhaustedError(DomainError):
    code = "REJECTION_EXHAUSTED"

    def __init__(self, n: int, delta_target: int, attempts: int):
        super().__init__(
            f"no sample of order {n} with min degree >= {delta_target}"
            f" in {attempts} attempts"
        )
        self.n = n
        self.delta_target = delta_target
        self.attempts = attempts


class OrientationMismatchError(DomainError):
    code = "ORIENTATION_MISMATCH"
