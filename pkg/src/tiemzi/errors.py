class ParameterError(ValueError):
    """A physical or numerical parameter lies outside its allowed domain."""


class SingularConfigurationError(ArithmeticError):
    """A closed-form relation is evaluated where one of its denominators vanishes."""


class ConfigError(ValueError):
    """Bad run configuration (unknown key, malformed value, violated constraint)."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)
