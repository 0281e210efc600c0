class AdapterError(Exception):
    """Base class for adapter failures."""


class ModelUnavailableError(AdapterError):
    """The requested detector model cannot be constructed or loaded."""


class RenderError(AdapterError):
    """Video decode or encode failure while rendering a summary."""
