"""Exception types shared across modules."""


class PreconditionError(ValueError):
    """Input does not satisfy what the operation assumes."""


class NotPositiveDefinite(PreconditionError):
    pass


class InexactError(PreconditionError):
    """An exact answer was demanded but the computation needs radicals."""
