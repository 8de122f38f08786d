"""Exception types shared across the package."""


class AveLabError(Exception):
    """Base class for package-specific failures."""


class ParseError(AveLabError):
    """Malformed input file or flag value."""


class CapExceededError(AveLabError):
    """An enumeration would exceed the configured dimension cap."""


class DimensionError(AveLabError):
    """Operation invoked on an input of unsupported dimension."""


class NumericError(AveLabError):
    """A numerical kernel failed to converge or breached its contract."""


class SingularReductionError(AveLabError):
    """The AVE-to-LCP reduction was refused because I - SA is singular."""


class InconclusiveProbeError(AveLabError):
    """A cone/subspace intersection probe could not decide either way."""
