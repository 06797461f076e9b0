"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid parameter or option combination."""


class DataError(ValueError):
    """Malformed input data (bad values, ragged records, unreadable files)."""
