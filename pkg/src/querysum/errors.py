"""Exception hierarchy shared by all querysum modules."""


class QuerysumError(Exception):
    """Base class for errors raised by this package."""


class InputError(QuerysumError):
    """Invalid caller-supplied data (missing files, empty inputs, bad shapes at call sites)."""


class ConfigError(InputError):
    """A parameter value outside its documented range."""


class DimensionError(InputError):
    """Zero-area rasters or mismatched array dimensions."""


class SchemaError(InputError):
    """A JSON document that violates the detections / ground-truth contract."""


class NumericError(QuerysumError):
    """NaN or Inf encountered where finite values are required."""
