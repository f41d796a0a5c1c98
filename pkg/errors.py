"""
EasyGram Errors
Exception hierarchy shared by all modules; the CLI maps these to exit codes.
"""


class EasyGramError(Exception):
    """Base class for every error raised by the library"""


class ShapeError(EasyGramError, ValueError):
    """Mismatched point sets, words, strand counts or matrix shapes"""


class DomainError(EasyGramError, ValueError):
    """Argument outside the mathematical domain of an operation"""


class CapacityError(EasyGramError):
    """A documented desk-scale bound was exceeded"""


class ConsistencyError(EasyGramError, RuntimeError):
    """Two independent computations of the same quantity disagree"""
