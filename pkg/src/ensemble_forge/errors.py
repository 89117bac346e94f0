"""Exception and warning types shared across the package."""


class EnsembleForgeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSpecError(EnsembleForgeError, ValueError):
    """A classifier spec violates its invariants (e.g. hidden-node range)."""


class MalformedDescriptorError(EnsembleForgeError, ValueError):
    """A 12-bit identity descriptor cannot be decoded."""


class ConfigurationError(EnsembleForgeError, ValueError):
    """A configuration value is out of its legal domain."""


class DimensionMismatchError(EnsembleForgeError, ValueError):
    """Array shapes do not agree with the expected dimensions."""


class SizeLimitError(EnsembleForgeError, ValueError):
    """An exhaustive enumeration would exceed its configured cap."""


class EmptySplitError(EnsembleForgeError, ValueError):
    """An operation that needs samples received an empty data split."""


class InsufficientSamplesError(EnsembleForgeError, ValueError):
    """A split or subsample request asks for more samples than exist."""


class ExhaustionError(EnsembleForgeError, RuntimeError):
    """Pool construction ran out of attempts before filling the pool."""


class PoolFormatError(EnsembleForgeError, ValueError):
    """A pool file is truncated, malformed, or otherwise unreadable."""


class PoolVersionError(PoolFormatError):
    """A pool file carries an unsupported format version."""


class PoolChecksumError(PoolFormatError):
    """A pool file's checksum does not match its payload."""


class EvenEnsembleError(EnsembleForgeError, ValueError):
    """Majority voting requires an odd number of voters."""


class InvalidSelectionError(EnsembleForgeError, ValueError):
    """An index subset violates the selection invariants."""


class ConstantFeatureError(EnsembleForgeError, ValueError):
    """Min-max normalization hit a feature column with zero range."""


class CsvFormatError(EnsembleForgeError, ValueError):
    """Base class for CSV loading failures."""


class CsvParseError(CsvFormatError):
    """A CSV cell could not be parsed; carries the offending line number."""


class NonBinaryLabelError(CsvFormatError):
    """A CSV label value is not 0 or 1; carries the offending line number."""


class MissingColumnError(CsvFormatError):
    """The CSV header lacks a required column."""


class ReportConsistencyError(EnsembleForgeError, RuntimeError):
    """A sweep report row disagrees with a value recomputed from it."""


class DegenerateDataWarning(UserWarning):
    """Training data contains a single class; the fit is degenerate."""
