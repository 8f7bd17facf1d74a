"""Exception hierarchy.  The CLI maps each family to an exit code."""


class FracPowError(Exception):
    """Base class for every error raised by this package."""


class ParseError(FracPowError, ValueError):
    """Malformed polynomial text, zero polynomial or constant polynomial."""


class ScreenFailure(FracPowError):
    """The polynomial fails a necessary condition for being a minimal polynomial."""


class NotSquarefree(ScreenFailure):
    pass


class NoRootGreaterThanOne(FracPowError):
    pass


class BoydMismatch(FracPowError):
    """Max-modulus root count and exponent-support gcd disagree."""


class NotPisot(FracPowError):
    pass


class CertificationError(FracPowError):
    """Precision escalation hit its cap before a certificate was obtained."""


class Undecided(CertificationError):
    """Two moduli could be neither proven equal nor separated."""

    def __init__(self, i: int, k: int, prec: int):
        super().__init__(f"moduli of conjugates {i} and {k} undecided at {prec} bits")
        self.i = i
        self.k = k
        self.prec = prec


class ZeroNotExcluded(CertificationError):
    """A probe enclosure still contains 0 (or the probe is provably 0)."""


class InsufficientData(FracPowError, ValueError):
    pass
