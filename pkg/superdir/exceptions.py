"""Error types shared by the library and the command line.

Every error carries the process exit code the CLI reports for it:
2 for bad input data, 3 for numerical failures.
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class SuperdirError(Exception):
    exit_code = EXIT_DATA


class DataError(SuperdirError):
    """Malformed or inconsistent input data"""

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ''
        if path is not None:
            where = f'{path}'
            if line is not None:
                where += f':{line}'
            where += ': '
        elif line is not None:
            where = f'line {line}: '
        super().__init__(f'{where}{message}')


class DimensionError(SuperdirError):
    pass


class DomainError(SuperdirError):
    pass


class OutOfDomainError(DomainError):
    pass


class SweIndexError(SuperdirError):
    pass


class InsufficientSamplingError(SuperdirError):
    pass


class DegenerateInputError(SuperdirError):
    pass


class NumericalError(SuperdirError):
    exit_code = EXIT_NUMERICAL


class AccuracyError(NumericalError):
    pass


class ConditioningError(NumericalError):
    def __init__(self, message, effective_rank=None, condition_number=None):
        self.effective_rank = effective_rank
        self.condition_number = condition_number
        super().__init__(message)


class SingularMatrixError(NumericalError):
    def __init__(self, message, condition_number=None):
        self.condition_number = condition_number
        super().__init__(message)


class CouplingMatrixSingularError(SingularMatrixError):
    pass


class DegenerateGeometryError(NumericalError):
    def __init__(self, message, effective_rank=None):
        self.effective_rank = effective_rank
        super().__init__(message)
