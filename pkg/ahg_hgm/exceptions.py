"""
Exceptions raised by the ahg_hgm package.

Every exception carries the exit code the command-line surface reports for it:
0 ok, 2 parse/validation, 3 method mismatch, 4 semigroup membership failure,
5 singular/genericity failure.
"""


class AhgError(Exception):
    """Base class of all errors raised by the library."""
    exit_code = 1


class ProblemFileError(AhgError):
    """A problem file could not be parsed or failed validation."""
    exit_code = 2

    def __init__(self, field, message, line=None):
        self.field = field
        self.line = line
        text = f'{field}: {message}'
        if line is not None:
            text += f' (line {line})'
        super().__init__(text)


class BasisNotIrreducible(AhgError):
    """Some element of the basis S is reducible by the toric Groebner basis."""
    exit_code = 2


class NoHyperplane(AhgError):
    """The linear form does not take the value 1 on every column."""
    exit_code = 2


class MethodMismatch(AhgError):
    """Two evaluation methods returned different values."""
    exit_code = 3


class NotInSemigroup(AhgError):
    """A parameter vector is not in the semigroup N_0 A."""
    exit_code = 4


class Singular(AhgError):
    """A square matrix has no inverse."""
    exit_code = 5


class PoleAt(AhgError):
    """A rational function was evaluated at a zero of its denominator."""
    exit_code = 5

    def __init__(self, k0):
        self.k0 = k0
        super().__init__(f'pole at k = {k0}')


class SingularStep(AhgError):
    """The recurrence matrix is not invertible at an integer step k."""
    exit_code = 5

    def __init__(self, k, reason=''):
        self.k = k
        message = f'singular recurrence step at k = {k}'
        if reason:
            message += f' ({reason})'
        super().__init__(message)


class GenericityFailure(AhgError):
    """No Pfaffian row for some target was found up to the degree cap."""
    exit_code = 5

    def __init__(self, T, message=''):
        self.T = T
        super().__init__(message or f'no recurrence found up to T = {T}')


class ZeroNormalizer(AhgError):
    """The normalizing constant is zero, so an expectation is undefined."""
    exit_code = 5
