"""
This module defines the records the ahg_hgm project reads and writes. It contains the following classes:

ConfigMatrix: The d x n integer matrix A whose columns a_i define the A-hypergeometric system.
Leg: One leg of an evaluation plan, a direction H applied a number of times.
ProblemFile: A parsed and validated problem file (A, beta, X, S, legs, order, weights).
BenchRecord: One row of the benchmark CSV.

The module also includes the field processors that turn raw JSON values into exact domain values, each
raising ProblemFileError with the name of the offending field.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import json
import logging
import re

import numpy as np

from ahg_hgm import settings
from ahg_hgm.exact import FieldMatrix, rref
from ahg_hgm.exceptions import ProblemFileError

logger = logging.getLogger(__name__)

ORDERS = ('lex', 'grevlex')


def to_int(value, name):
    # bool is an int subclass; true/false in a matrix is a typo
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemFileError(name, f'expected an integer, got {value!r}')
    return value


def to_fraction(value, name):
    # floats would lose exactness in transport
    if isinstance(value, bool) or isinstance(value, float):
        raise ProblemFileError(name, f'fractions must be strings or integers, got {value!r}')
    try:
        return Fraction(str(value).replace(' ', ''))
    except (ValueError, ZeroDivisionError):
        raise ProblemFileError(name, f'cannot parse {value!r} as a fraction')


def int_vector(value, name, length=None, nonnegative=False):
    if not isinstance(value, list):
        raise ProblemFileError(name, 'expected a list of integers')
    vector = tuple(to_int(v, name) for v in value)
    if length is not None and len(vector) != length:
        raise ProblemFileError(name, f'expected {length} entries')
    if nonnegative and any(v < 0 for v in vector):
        raise ProblemFileError(name, 'entries must be nonnegative')
    return vector


def fraction_vector(value, name, length=None):
    if not isinstance(value, list):
        raise ProblemFileError(name, 'expected a list of fraction strings')
    vector = tuple(to_fraction(v, name) for v in value)
    if length is not None and len(vector) != length:
        raise ProblemFileError(name, f'expected {length} entries')
    return vector


@dataclass(frozen=True)
class ConfigMatrix:
    """
    The matrix A, stored as a tuple of integer rows.

    Nonnegative entries, no zero column and full row rank are checked on construction; matrices with
    negative entries are accepted only with ``allow_negative=True`` (see ``hgm.shift_nonnegative``).
    """
    rows: tuple
    allow_negative: bool = field(default=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in row) for row in self.rows)
        object.__setattr__(self, 'rows', rows)
        if not rows or not rows[0]:
            raise ValueError('the matrix A must have at least one row and one column')
        if len({len(row) for row in rows}) != 1:
            raise ValueError('the rows of A must have equal length')
        if not self.allow_negative and any(v < 0 for row in rows for v in row):
            raise ValueError('A must have nonnegative entries')
        for i in range(self.n):
            if not any(self.column(i)):
                raise ValueError(f'column {i + 1} of A is zero')
        if self.rank != self.d:
            raise ValueError(f'A must have rank {self.d}, found {self.rank}')

    def __array__(self, dtype=None, copy=None):
        return np.array(self.rows, dtype=dtype or np.int64)

    @property
    def d(self):
        return len(self.rows)

    @property
    def n(self):
        return len(self.rows[0])

    @property
    def rank(self):
        return len(rref(FieldMatrix.from_dense([[Fraction(v) for v in row] for row in self.rows]))[1])

    def column(self, i):
        return tuple(row[i] for row in self.rows)

    @property
    def columns(self):
        return [self.column(i) for i in range(self.n)]

    def apply(self, u):
        """Returns A u as a tuple."""
        return tuple(sum(a * x for a, x in zip(row, u)) for row in self.rows)

    def column_bound(self, i, beta):
        """The largest multiple of column i that fits under beta (entries are nonnegative)."""
        bounds = [b // a for a, b in zip(self.column(i), beta) if a > 0]
        return max(min(bounds), -1) if bounds else 0

    def is_nonnegative(self):
        return all(v >= 0 for row in self.rows for v in row)

    def __str__(self):
        return '[' + ', '.join('[' + ','.join(map(str, row)) + ']' for row in self.rows) + ']'


@dataclass(frozen=True)
class Leg:
    """A direction H followed for ``steps`` unit steps (``per_k`` steps per benchmark k)."""
    H: tuple
    steps: int
    per_k: int = 1


@dataclass
class ProblemFile:
    """
    A validated problem file.

    Attributes:
        A (ConfigMatrix): The configuration matrix.
        beta (tuple): The base parameter, length d.
        X (tuple): The evaluation point, length n, exact fractions.
        S (list): Exponent vectors of the basis, the first being the zero vector.
        legs (list): Legs of the evaluation plan.
        order (str): Term order name, lex or grevlex.
        weights (tuple): Optional weight vector for direction decomposition.
        hform (tuple): Optional linear form with hform . a_i = 1, for matrices with negative entries.
        name (str): A short name for logs.
    """
    A: ConfigMatrix
    beta: tuple
    X: tuple
    S: list
    legs: list = field(default_factory=list)
    order: str = settings.DEFAULT_ORDER
    weights: tuple = None
    hform: tuple = None
    name: str = 'problem'

    @property
    def endpoint(self):
        beta = list(self.beta)
        for leg in self.legs:
            beta = [b + leg.steps * h for b, h in zip(beta, leg.H)]
        return tuple(beta)

    def with_k(self, k):
        """Returns a copy whose legs take ``per_k * k`` steps."""
        legs = [Leg(leg.H, leg.per_k * k, leg.per_k) for leg in self.legs]
        return ProblemFile(self.A, self.beta, self.X, self.S, legs, self.order, self.weights, self.hform, self.name)

    @classmethod
    def from_dict(cls, data, text=None):
        """
        Validates a decoded problem document.

        Args:
            data (dict): The decoded JSON document.
            text (str): The raw document, used to anchor errors to a line.

        Returns:
            ProblemFile: The validated problem.

        Raises:
            ProblemFileError: Naming the first field that fails.
        """
        def fail(name, message):
            raise ProblemFileError(name, message, _line_of(text, name))

        try:
            if not isinstance(data, dict):
                raise ProblemFileError('problem', 'expected a JSON object')
            for required in ('A', 'beta', 'X', 'S'):
                if required not in data:
                    fail(required, 'missing field')

            raw_A = data['A']
            if not isinstance(raw_A, list) or not raw_A or not all(isinstance(row, list) for row in raw_A):
                fail('A', 'expected a nonempty list of integer rows')
            rows = [int_vector(row, 'A') for row in raw_A]
            hform = data.get('hform')
            if hform is not None:
                hform = fraction_vector(hform, 'hform', len(rows))
            try:
                A = ConfigMatrix(tuple(rows), allow_negative=hform is not None)
            except ValueError as error:
                fail('A', str(error))
            d, n = A.d, A.n

            beta = int_vector(data['beta'], 'beta', d)
            X = fraction_vector(data['X'], 'X', n)

            raw_S = data['S']
            if not isinstance(raw_S, list) or not raw_S:
                fail('S', 'expected a nonempty list of exponent vectors')
            S = [int_vector(e, 'S', n, nonnegative=True) for e in raw_S]
            if any(S[0]):
                fail('S', 'the first element must be the zero vector (the monomial 1)')
            if len(set(S)) != len(S):
                fail('S', 'basis elements must be distinct')

            legs = []
            for raw_leg in data.get('legs', []) or []:
                if not isinstance(raw_leg, dict) or 'H' not in raw_leg:
                    fail('legs', 'each leg needs an H vector and a step count')
                H = int_vector(raw_leg['H'], 'H', d)
                steps = to_int(raw_leg.get('steps', 0), 'steps')
                per_k = to_int(raw_leg.get('per_k', 1), 'per_k')
                if steps < 0 or per_k < 0:
                    fail('legs', 'step counts must be nonnegative')
                legs.append(Leg(H, steps, per_k))

            order = data.get('order', settings.DEFAULT_ORDER)
            if order not in ORDERS:
                fail('order', f'expected one of {", ".join(ORDERS)}')

            weights = data.get('weights')
            if weights is not None:
                weights = int_vector(weights, 'weights', n)

            return cls(A, beta, X, S, legs, order, weights, hform, str(data.get('name', 'problem')))
        except ProblemFileError as error:
            if error.line is None and text is not None:
                raise ProblemFileError(error.field, str(error).split(': ', 1)[1], _line_of(text, error.field))
            raise

    @classmethod
    def load(cls, path):
        """Reads and validates a JSON problem file."""
        try:
            with open(path, encoding='utf-8') as handle:
                text = handle.read()
        except OSError as error:
            raise ProblemFileError('problem', f'cannot read {path}: {error.strerror}')
        try:
            data = json.loads(text)
        except json.JSONDecodeError as error:
            raise ProblemFileError('problem', f'invalid JSON: {error.msg}', error.lineno)
        problem = cls.from_dict(data, text)
        logger.debug(f'Loaded problem {problem.name} from {path}: d={problem.A.d}, n={problem.A.n}, |S|={len(problem.S)}')
        return problem


def _line_of(text, name):
    if text is None:
        return None
    match = re.search(rf'"{re.escape(name)}"\s*:', text)
    if match is None:
        return None
    return text.count('\n', 0, match.start()) + 1


@dataclass
class BenchRecord:
    """One benchmark measurement; ``fiber_count`` is only set for the enumeration method."""
    method: str
    k: int
    wall_seconds: float
    value: str
    fiber_count: int = None

    def to_dict(self):
        return {
            'method': self.method,
            'k': self.k,
            'wall_seconds': round(self.wall_seconds, 3),
            'value': self.value,
            'fiber_count': self.fiber_count,
        }
