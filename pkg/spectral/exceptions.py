"""
Exception hierarchy shared by every lpscalar package
"""


class LPScalarError(Exception):
    """Base class for all lpscalar errors"""


class ConfigurationError(LPScalarError):
    """Invalid grid, configuration key or configuration value"""


class ParameterError(LPScalarError):
    """Numerical parameter outside its admissible range"""


class DataError(LPScalarError):
    """Malformed field data or snapshot file"""


class GaugeError(LPScalarError):
    """Field violates the mean-zero gauge"""


class InconsistencyError(LPScalarError):
    """Two computed quantities contradict each other"""


class BlowUpError(LPScalarError):
    """Time integration produced a non-finite state"""
