"""Exception types shared across the engine."""


class GuardExceeded(Exception):
    """A resource guard (state-space size, scan bound, grid budget) was hit.

    The message names the failing bound. CLI maps this to exit code 2.
    """


class DomainContractError(Exception):
    """A compiled map produced a value outside [0,1]. CLI exit code 3."""
