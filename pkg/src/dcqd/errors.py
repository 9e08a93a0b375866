"""Exception types raised by the toolkit."""


class DCQDError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrix(DCQDError):
    """A linear system has no unique solution at working precision."""

    def __init__(self, msg="matrix is singular", *, absdet=None, cond=None):
        super().__init__(msg)
        self.absdet = absdet
        self.cond = cond


class IllConditioned(DCQDError):
    """Inversion would amplify data errors beyond the accepted bound."""

    def __init__(self, msg="system is ill-conditioned", *, absdet=None, cond=None):
        super().__init__(msg)
        self.absdet = absdet
        self.cond = cond


class NotHermitian(DCQDError):
    pass


class NotUnitary(DCQDError):
    pass


class NotCP(DCQDError):
    pass


class DegenerateInput(DCQDError):
    """Input angles violate |alpha| != |beta| != 0 or Im(conj(alpha) beta) != 0."""


class ZeroContrast(DCQDError):
    """Noise contrast eps*eps' is too small to undo."""


class OutOfRange(DCQDError):
    pass


class SingularNoise(DCQDError):
    """Bell-diagonal mixing matrix cannot be inverted."""
