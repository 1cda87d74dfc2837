"""Exception hierarchy shared by every blockseq module."""


class BlockseqError(Exception):
    """Base class for all library errors."""


class ParameterError(BlockseqError, ValueError):
    """Parameters outside the domain an operation accepts."""


class StructuralError(BlockseqError, ValueError):
    """A block is malformed (wrong size, out-of-range id or repeated vertex)."""

    def __init__(self, block_index, message):
        self.block_index = block_index
        super().__init__(f"block {block_index}: {message}")


class InputError(BlockseqError, ValueError):
    """Bad vertex sets, positions or sequencings handed to a query."""


class ContractError(BlockseqError):
    """A documented precondition or internal invariant does not hold."""


class NonConvergenceError(BlockseqError):
    """Resampling exceeded its budget without removing every bad block."""

    def __init__(self, resample_count, remaining_bad):
        self.resample_count = resample_count
        self.remaining_bad = remaining_bad
        super().__init__(
            f"no convergence after {resample_count} resamples "
            f"({remaining_bad} bad blocks still queued)"
        )


class RepairStuckError(BlockseqError):
    """No vertex is eligible to move into a deficient class."""

    def __init__(self, n_buffered, n_blocked, n):
        self.n_buffered = n_buffered
        self.n_blocked = n_blocked
        self.n = n
        super().__init__(
            f"repair stuck: {n_buffered} buffer vertices + {n_blocked} blocked "
            f"vertices leave no free vertex among n={n}"
        )
