"""Exception hierarchy shared by all qgate packages."""


class QGateError(Exception):
    """Base class for every error raised on purpose by qgate."""


class ConfigError(QGateError, ValueError):
    """Invalid configuration or physical parameter.

    Args:
        message: Human readable description.
        key_path: Dotted path of the offending key, e.g. ``link.eta_loss``.
    """

    def __init__(self, message: str, key_path: str | None = None):
        self.key_path = key_path
        if key_path:
            message = f"{key_path}: {message}"
        super().__init__(message)


class DimensionError(QGateError, ValueError):
    """Operator or state shapes do not fit together."""


class NumericalError(QGateError, RuntimeError):
    """Integration, inversion or fit failure."""


class ExperimentError(QGateError):
    """Unexpected failure while running a registered experiment."""
