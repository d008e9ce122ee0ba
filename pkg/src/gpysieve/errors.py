"""Exception types shared by every module."""


class InputError(ValueError):
    """Invalid argument: out-of-range parameter, malformed tuple, bad config."""


class ResourceError(RuntimeError):
    """A request would exceed the configured memory budget or sieve range."""


class PreconditionError(InputError):
    """Data needed by a computation (e.g. a factored window) is not available."""
