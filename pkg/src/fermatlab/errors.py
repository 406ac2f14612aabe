"""Error types shared across the package."""


class DomainError(ValueError):
    """An input violates a documented precondition."""


class GuardError(RuntimeError):
    """An enumeration guard would be exceeded.

    Guards protect desk-scale runtimes; set FERMATLAB_GUARD_OVERRIDE=1
    (or pass the override flag) to lift them deliberately.
    """


class InternalError(RuntimeError):
    """A construction that must succeed failed; indicates a bug."""
