"""Exception types shared across the package."""


class CocycleLabError(Exception):
    pass


class StripExceeded(CocycleLabError):
    """Evaluation requested outside the guaranteed analyticity band."""


class EmptyInput(CocycleLabError):
    pass


class DuplicateMode(CocycleLabError):
    pass


class NotUnimodular(CocycleLabError):
    pass


class NonCoprime(CocycleLabError):
    pass


class RationalInput(CocycleLabError):
    pass


class NoConvergents(CocycleLabError):
    pass


class EmptyProfile(CocycleLabError):
    pass


class WrongStratum(CocycleLabError):
    """No affine piece with the requested slope was found."""


class NotHyperbolic(CocycleLabError):
    """Invariant splitting residuals failed to converge."""


class DegenerateSplitting(CocycleLabError):
    pass


class Inconclusive(CocycleLabError):
    """The Lyapunov exponent sits below the noise floor; no verdict."""
