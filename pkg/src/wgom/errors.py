"""Exception hierarchy shared by all wgom modules."""


class WgomError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(WgomError, ValueError):
    """Array shapes or requested ranks are inconsistent."""


class DegenerateRankError(WgomError):
    """A matrix is numerically rank-deficient where full rank is required."""


class RankDeficiencyError(WgomError):
    """The successive-projection residual vanished before enough vertices were found."""


class DistributionRangeError(WgomError, ValueError):
    """A requested mean lies outside the distribution's admissible range."""


class InfeasibleSchemeError(WgomError, ValueError):
    """A discrete-distribution scheme has no valid probability solution."""


class DataFormatError(WgomError, ValueError):
    """An input file does not match any supported matrix format."""


class ConfigError(WgomError, ValueError):
    """A configuration file is missing keys or holds invalid values."""
