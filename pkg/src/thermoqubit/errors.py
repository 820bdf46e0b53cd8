"""Exception types shared across the package."""


class CutoffError(ValueError):
    """Requested Fock cutoff cannot meet the tail-mass tolerance, or the
    automatic selection exceeded the hard cap."""


class MandelUndefinedError(ArithmeticError):
    """Mandel Q is undefined: the state has zero mean occupation."""


class GridWideningError(RuntimeError):
    """Phase-space grid failed the normalization check even at the widest
    allowed bounds."""
