"""Exception types for run-level failures.

Everything here maps to CLI exit code 1; bad usage (argparse) is exit 2.
"""


class DomainError(Exception):
    """A run failed for a reason inherent to the machine/input pair."""


class StuckError(DomainError):
    """No transition defined before reaching a final state."""


class IllegalMoveError(DomainError):
    """Move off the tape, push with all pebbles placed, or pop mismatch."""


class DivergentError(DomainError):
    """The run revisited a (state, head, pebbles) triple and cannot halt."""


class BudgetExceededError(DomainError):
    """Step budget ran out before the run resolved (large-input mode)."""


class NoPreimageError(DomainError):
    """Inverse search found no input for the given output/end-state pair."""


class AmbiguousPreimageError(DomainError):
    """Inverse search found several inputs; losslessness fails past the
    certified length bound."""


class LambdaBudgetError(DomainError):
    """More consecutive silent stack moves than the compressor's budget."""


class MachineFormatError(DomainError):
    """Malformed machine description file."""


class WitnessError(DomainError):
    """A generated witness input did not reproduce the expected prefix."""
