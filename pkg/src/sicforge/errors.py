"""Exception types raised across the package."""


class SicForgeError(Exception):
    pass


class ZeroInverse(SicForgeError, ZeroDivisionError):
    pass


class ZeroInput(SicForgeError, ValueError):
    pass


class ModulusMismatch(SicForgeError, ValueError):
    pass


class TooLarge(SicForgeError, RuntimeError):
    pass


class IndexOutOfRange(SicForgeError, IndexError):
    pass


class DimMismatch(SicForgeError, ValueError):
    pass


class NotUnitary(SicForgeError, ValueError):
    pass


class NotFiducial(SicForgeError, ValueError):
    pass


class NotASic(SicForgeError, ValueError):
    pass


class SynthesisCheckFailed(SicForgeError, RuntimeError):
    """The synthesized matrix does not implement its symplectic label (a bug, not bad input)."""


class VanishingTrace(SicForgeError, ValueError):
    pass


class Undecided(SicForgeError, RuntimeError):
    pass


class NoConvergence(SicForgeError, RuntimeError):
    def __init__(self, result, message=None):
        self.result = result
        super().__init__(message or f"search did not reach target (best deviation {result.deviation:.3e})")
