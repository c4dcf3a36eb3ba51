"""Exception hierarchy shared across the package.

The three bases map onto CLI exit codes: ConfigurationError -> 2,
DataError -> 3, NumericalError -> 4.
"""


class ClspError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(ClspError):
    """Invalid parameters or an inconsistent experiment configuration."""


class DataError(ClspError):
    """Malformed or inconsistent input data (e.g. a bad light-curve file)."""


class NumericalError(ClspError):
    """A numerical consistency check failed during computation."""


class ZeroInformationError(ConfigurationError):
    """The signal is constant, so frequency carries no information."""


class UndefinedSnrError(ConfigurationError):
    """SNR is undefined because the signal has no AC power."""


class DegenerateDesignError(NumericalError):
    """The trigonometric design matrix is numerically rank-deficient."""


class SingularGramError(NumericalError):
    """The Gram matrix at a candidate frequency is numerically singular."""

    def __init__(self, f: float, K: int, cond: float):
        self.f = f
        self.K = K
        self.cond = cond
        super().__init__(
            f"Gram matrix numerically singular at f={f!r} (K={K}, cond~{cond:.3g})"
        )
