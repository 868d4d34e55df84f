"""Shared exception types for graph, poset, enumeration and certificate code."""


class CapacityError(ValueError):
    """Input exceeds a hard size limit (vertex count, ground-set width)."""


class InvalidParameterError(ValueError):
    """Parameters are structurally infeasible (parity, range, unknown name)."""


class PreconditionViolation(ValueError):
    """An operation's stated precondition does not hold for the input."""


class SamplingFailure(RuntimeError):
    """A randomized sampler exhausted its rejection budget."""


class EncoderFailure(RuntimeError):
    """A certificate encoder could not meet its own size constraints."""


class InvalidCertificate(ValueError):
    """Certificate replay or validation failed.

    ``check`` names the first failing check, so callers (and tests) can tell
    exactly which structural invariant was violated.
    """

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"{check}: {detail}" if detail else check)


class BudgetExceeded(RuntimeError):
    """An enumeration budget (node count or wall clock) ran out.

    Carries the partial statistics; no count is ever reported alongside.
    """

    def __init__(self, reason: str, nodes_visited: int, elapsed_s: float):
        self.reason = reason
        self.nodes_visited = nodes_visited
        self.elapsed_s = elapsed_s
        super().__init__(
            f"budget exceeded ({reason}) after {nodes_visited} nodes"
        )


class VerificationFailure(RuntimeError):
    """A checked inequality or construction property failed to hold."""
