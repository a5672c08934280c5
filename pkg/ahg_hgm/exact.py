"""
Exact arithmetic kernels used by every other module of the package.

It contains:

    Rat: arbitrary precision rationals (``fractions.Fraction``), serialized as "p/q" or "p".
    UniPolyK: univariate polynomials over Q in the parameter k, lowest degree first.
    RatFuncK: rational functions in k kept in canonical form (coprime, monic denominator).
    FieldMatrix: a matrix with labelled columns and sparse rows over Q or Q(k).

and the row reduction machinery over those fields: ``echelon`` (forward elimination with
targeted back-substitution), ``rref``, ``invert`` and ``determinant``.

Over Q(k) the elimination is fraction-free: rows hold polynomial entries, a row is updated as
``a*row - b*pivot_row`` and its polynomial content is removed afterwards. Division only happens
in the final normalization, where each reduced row is divided by its pivot entry.
"""
from collections import defaultdict
from decimal import Decimal, localcontext
from fractions import Fraction
import logging
import re

import numpy as np

from ahg_hgm import settings
from ahg_hgm.exceptions import PoleAt, Singular

logger = logging.getLogger(__name__)

Rat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_rational(value):
    """
    Converts an integer, a fraction string or a Fraction into a Fraction.

    Args:
        value (int | str | Fraction): The value to convert.

    Returns:
        Fraction: The exact value.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f'cannot convert {value!r} to an exact rational')


def format_rational(value):
    """Returns the "p/q" (or "p" when q = 1) form of a rational."""
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def parse_rational(text):
    """Parses "p/q" or "p" into a Fraction."""
    return Fraction(str(text).replace(' ', ''))


def to_decimal_string(value, digits=None):
    """
    Renders a rational as a decimal with a fixed number of significant digits.

    The quotient is taken with ``decimal`` so that tiny values such as normalizing constants of
    large fibers never underflow.

    Args:
        value (Fraction): The exact value.
        digits (int): Significant digits, defaults to ``settings.DECIMAL_DIGITS``.

    Returns:
        str: For example "3.38306e-16".
    """
    value = to_rational(value)
    digits = settings.DECIMAL_DIGITS if digits is None else digits
    with localcontext() as ctx:
        ctx.prec = digits + 5
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient, f'.{digits}g')


def _as_fraction(value):
    return value if type(value) is Fraction else Fraction(value)


class UniPolyK:
    """
    A univariate polynomial over Q in the parameter k.

    Coefficients are stored lowest degree first and the leading coefficient is nonzero, so the
    zero polynomial has no coefficients and degree -1.
    """
    __slots__ = ('coeffs', '_hash')

    def __init__(self, coeffs=()):
        coeffs = [_as_fraction(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _from_trimmed(cls, coeffs):
        poly = cls.__new__(cls)
        poly.coeffs = coeffs
        poly._hash = None
        return poly

    @classmethod
    def affine(cls, constant, slope):
        """Returns ``constant + slope*k``."""
        return cls((constant, slope))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else _ZERO

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else _ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, k0):
        k0 = to_rational(k0)
        value = _ZERO
        for c in reversed(self.coeffs):
            value = value * k0 + c
        return value

    def scale(self, factor):
        factor = _as_fraction(factor)
        if not factor:
            return ZERO_POLY
        return UniPolyK._from_trimmed(tuple(c * factor for c in self.coeffs))

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(1 / self.coeffs[-1])

    def __neg__(self):
        return UniPolyK._from_trimmed(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        coeffs = list(a)
        for i, c in enumerate(b):
            coeffs[i] += c
        return UniPolyK(coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_poly(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, UniPolyK):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO_POLY
        if len(b) == 1:
            return self.scale(b[0])
        if len(a) == 1:
            return other.scale(a[0])
        coeffs = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    coeffs[i + j] += x * y
        return UniPolyK(coeffs)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _coerce_poly(other)
        if other.is_zero():
            raise ZeroDivisionError('polynomial division by zero')
        remainder = list(self.coeffs)
        dq = other.degree
        if len(remainder) - 1 < dq:
            return ZERO_POLY, self
        quotient = [_ZERO] * (len(remainder) - dq)
        inverse_lc = 1 / other.coeffs[-1]
        for i in range(len(remainder) - 1, dq - 1, -1):
            c = remainder[i]
            if not c:
                continue
            q = c * inverse_lc
            quotient[i - dq] = q
            for j, d in enumerate(other.coeffs):
                remainder[i - dq + j] -= q * d
        return UniPolyK(quotient), UniPolyK(remainder[:dq])

    def exact_div(self, other):
        """Divides by a polynomial known to be a factor."""
        quotient, remainder = divmod(self, other)
        if remainder:
            raise ArithmeticError(f'{other} does not divide {self}')
        return quotient

    @staticmethod
    def gcd(a, b):
        """Returns the monic greatest common divisor (0 when both are zero)."""
        if a.is_constant() and a:
            return ONE_POLY
        if b.is_constant() and b:
            return ONE_POLY
        while b:
            a, b = b, divmod(a, b)[1]
        return a.monic()

    def __eq__(self, other):
        if isinstance(other, UniPolyK):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((_as_fraction(other),) if other else ())
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs) if len(self.coeffs) > 1 else hash(self.constant_term())
        return self._hash

    def __repr__(self):
        return f'UniPolyK({self})'

    def __str__(self):
        if not self.coeffs:
            return '0'
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if e == 0:
                body = format_rational(magnitude)
            else:
                power = 'k' if e == 1 else f'k^{e}'
                body = power if magnitude == 1 else f'{format_rational(magnitude)}*{power}'
            if not parts:
                parts.append(body if sign == '+' else f'-{body}')
            else:
                parts.append(f'{sign}{body}')
        return ''.join(parts)


ZERO_POLY = UniPolyK()
ONE_POLY = UniPolyK((1,))


def _coerce_poly(value):
    if isinstance(value, UniPolyK):
        return value
    if isinstance(value, np.integer):
        value = int(value)
    if isinstance(value, (int, Fraction)):
        return UniPolyK((value,))
    return NotImplemented


_TERM = re.compile(r'([+-])?(\d+(?:/\d+)?)?(?:\*?(k)(?:\^(\d+))?)?')


def parse_unipoly(text):
    """
    Parses the string form written by ``str(UniPolyK)``, for example "-2*k^2-6*k-4".

    Raises:
        ValueError: If the text is not a polynomial in k.
    """
    text = str(text).replace(' ', '')
    if not text:
        raise ValueError('empty polynomial')
    coeffs = defaultdict(Fraction)
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        sign, number, var, power = match.groups()
        if match.end() == pos or (number is None and var is None):
            raise ValueError(f'cannot parse polynomial {text!r} at position {pos}')
        if pos > 0 and sign is None:
            raise ValueError(f'missing sign in polynomial {text!r} at position {pos}')
        c = Fraction(number) if number else _ONE
        if sign == '-':
            c = -c
        exponent = (int(power) if power else 1) if var else 0
        coeffs[exponent] += c
        pos = match.end()
    top = max(coeffs)
    return UniPolyK([coeffs.get(e, _ZERO) for e in range(top + 1)])


class RatFuncK:
    """
    A rational function in k, stored as ``numerator / denominator`` in lowest terms with a monic
    denominator, so equal functions have identical representations.
    """
    __slots__ = ('num', 'den', '_hash')

    def __init__(self, numerator, denominator=None):
        num = _coerce_poly(numerator)
        den = ONE_POLY if denominator is None else _coerce_poly(denominator)
        if num is NotImplemented or den is NotImplemented:
            raise TypeError('rational functions are built from polynomials or rationals')
        if den.is_zero():
            raise ZeroDivisionError('rational function with zero denominator')
        if num.is_zero():
            den = ONE_POLY
        elif not den.is_constant():
            g = UniPolyK.gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        if den.lc != 1:
            inverse = 1 / den.lc
            num = num.scale(inverse)
            den = den.scale(inverse)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _canonical(cls, num, den):
        f = cls.__new__(cls)
        f.num = num
        f.den = den
        f._hash = None
        return f

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero()

    def __call__(self, k0):
        return eval_ratfunc(self, k0)

    def __neg__(self):
        return RatFuncK._canonical(-self.num, self.den)

    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFuncK(self.num + other.num, self.den)
        return RatFuncK(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return RatFuncK(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError('division by the zero rational function')
        return RatFuncK(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return other / self

    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.num) if self.den == ONE_POLY else hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f'RatFuncK({self})'

    def __str__(self):
        den = str(self.den) if self.den.is_constant() else f'({self.den})'
        return f'({self.num})/{den}'


def _coerce_ratfunc(value):
    if isinstance(value, RatFuncK):
        return value
    if isinstance(value, np.integer):
        value = int(value)
    if isinstance(value, UniPolyK):
        return RatFuncK._canonical(value, ONE_POLY)
    if isinstance(value, (int, Fraction)):
        return RatFuncK._canonical(UniPolyK((value,)), ONE_POLY)
    return NotImplemented


def parse_ratfunc(text):
    """Parses "(num)/den" or "(num)/(den)" as written by ``str(RatFuncK)``."""
    text = str(text).replace(' ', '')
    match = re.fullmatch(r'\(([^()]*)\)/(?:\(([^()]*)\)|([^()]*))', text)
    if match is None:
        return RatFuncK(parse_unipoly(text))
    numerator, den_poly, den_plain = match.groups()
    return RatFuncK(parse_unipoly(numerator), parse_unipoly(den_poly or den_plain))


def eval_ratfunc(f, k0):
    """
    Evaluates a rational function at a rational point.

    Args:
        f (RatFuncK | UniPolyK | Fraction): The function.
        k0 (int | Fraction): The point.

    Returns:
        Fraction: The exact value f(k0).

    Raises:
        PoleAt: If the denominator vanishes at k0.
    """
    if isinstance(f, (int, Fraction)):
        return _as_fraction(f)
    if isinstance(f, UniPolyK):
        return f(k0)
    denominator = f.den(k0)
    if not denominator:
        raise PoleAt(k0)
    return f.num(k0) / denominator


class FieldMatrix:
    """
    A matrix over Q or Q(k) with labelled columns and sparse rows.

    Column labels are opaque hashable identifiers; their order in ``columns`` is the elimination
    order (leftmost first). Each row maps a label to a nonzero entry.
    """
    __slots__ = ('columns', 'rows')

    def __init__(self, columns, rows):
        columns = tuple(columns)
        if len(set(columns)) != len(columns):
            raise ValueError('column labels must be unique')
        known = set(columns)
        cleaned = []
        for row in rows:
            entries = {label: value for label, value in dict(row).items() if not _is_zero(value)}
            unknown = set(entries) - known
            if unknown:
                raise ValueError(f'row refers to unknown columns {sorted(map(str, unknown))}')
            cleaned.append(entries)
        self.columns = columns
        self.rows = tuple(cleaned)

    @classmethod
    def from_dense(cls, entries, columns=None):
        array = np.array(entries, dtype=object)
        if array.size == 0:
            return cls(columns or (), [])
        if array.ndim != 2:
            raise ValueError('dense matrices must be two dimensional')
        columns = tuple(range(array.shape[1])) if columns is None else tuple(columns)
        rows = [{columns[j]: array[i, j] for j in range(array.shape[1])} for i in range(array.shape[0])]
        return cls(columns, rows)

    @property
    def shape(self):
        return len(self.rows), len(self.columns)

    def to_dense(self):
        array = np.empty(self.shape, dtype=object)
        array.fill(_ZERO)
        position = {label: j for j, label in enumerate(self.columns)}
        for i, row in enumerate(self.rows):
            for label, value in row.items():
                array[i, position[label]] = value
        return array

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.columns == other.columns and self.rows == other.rows

    def __repr__(self):
        return f'FieldMatrix({len(self.rows)}x{len(self.columns)})'


def _is_zero(value):
    return value == 0


def _is_parametric(value):
    return isinstance(value, (UniPolyK, RatFuncK))


class _RationalReducer:
    """Row operations over Q. Pivot rows are scaled so that the pivot is 1."""

    def prepare(self, row):
        return {label: _as_fraction(v) for label, v in row.items()}

    def pivot_cost(self, entry):
        return 0

    def normalize_pivot(self, row, label):
        pivot = row[label]
        if pivot == 1:
            return row
        inverse = 1 / pivot
        return {lab: v * inverse for lab, v in row.items()}

    def eliminate(self, target, pivot_row, label):
        factor = target[label] / pivot_row[label]
        result = dict(target)
        for lab, v in pivot_row.items():
            value = result.get(lab, _ZERO) - factor * v
            if value:
                result[lab] = value
            else:
                result.pop(lab, None)
        return result

    def finish(self, row, label):
        return self.normalize_pivot(row, label)


class _PolynomialReducer:
    """
    Fraction-free row operations over Q[k] standing in for Q(k).

    Rows are kept primitive: the monic gcd of all entries is divided out after every update that
    multiplied the row by a non-constant polynomial.
    """

    def __init__(self, position):
        self.position = position

    def prepare(self, row):
        entries = {}
        denominators = [v.den for v in row.values() if isinstance(v, RatFuncK) and not v.is_polynomial()]
        common = ONE_POLY
        for den in denominators:
            common = common * den.exact_div(UniPolyK.gcd(common, den))
        for label, v in row.items():
            if isinstance(v, RatFuncK):
                entries[label] = v.num * common.exact_div(v.den)
            elif isinstance(v, UniPolyK):
                entries[label] = v * common
            else:
                entries[label] = common.scale(v)
        return self._primitive(entries)

    def pivot_cost(self, entry):
        return entry.degree

    def normalize_pivot(self, row, label):
        pivot = row[label]
        if pivot.is_constant() and pivot.lc != 1:
            inverse = 1 / pivot.lc
            return {lab: v.scale(inverse) for lab, v in row.items()}
        return row

    def eliminate(self, target, pivot_row, label):
        a = pivot_row[label]
        b = target[label]
        if a.is_constant():
            factor = b.scale(1 / a.lc)
            result = dict(target)
            for lab, v in pivot_row.items():
                value = result.get(lab, ZERO_POLY) - factor * v
                if value:
                    result[lab] = value
                else:
                    result.pop(lab, None)
            return result
        g = UniPolyK.gcd(a, b)
        a1 = a.exact_div(g)
        b1 = b.exact_div(g)
        result = {lab: a1 * v for lab, v in target.items()}
        for lab, v in pivot_row.items():
            value = result.get(lab, ZERO_POLY) - b1 * v
            if value:
                result[lab] = value
            else:
                result.pop(lab, None)
        return self._primitive(result)

    def finish(self, row, label):
        pivot = row[label]
        return {lab: (RatFuncK(v, pivot) if lab != label else RatFuncK(ONE_POLY)) for lab, v in row.items()}

    def _primitive(self, row):
        if not row:
            return row
        content = None
        for v in row.values():
            content = v if content is None else UniPolyK.gcd(content, v)
            if content.degree == 0:
                break
        if content is not None and content.degree > 0:
            row = {lab: v.exact_div(content) for lab, v in row.items()}
        leftmost = min(row, key=self.position.__getitem__)
        scalar = row[leftmost].lc
        if scalar != 1:
            inverse = 1 / scalar
            row = {lab: v.scale(inverse) for lab, v in row.items()}
        return row


class Echelon:
    """
    The result of forward elimination: one pivot row per pivot column, each having zeros in every
    pivot column to its left. Reduced rows are produced on demand by back-substitution.
    """

    def __init__(self, columns, pivot_rows, reducer):
        self.columns = tuple(columns)
        self.position = {label: i for i, label in enumerate(self.columns)}
        self.pivot_rows = pivot_rows
        self.reducer = reducer
        self._reduced = {}

    @property
    def pivots(self):
        return sorted(self.pivot_rows, key=self.position.__getitem__)

    @property
    def rank(self):
        return len(self.pivot_rows)

    def is_pivot(self, label):
        return label in self.pivot_rows

    def reduced_row(self, label):
        """
        Returns the row of the reduced row echelon form whose pivot is ``label``.

        Only the pivot rows this row depends on are back-substituted.
        """
        return self.reduced_rows([label])[label]

    def reduced_rows(self, labels):
        needed = set()
        stack = [label for label in labels if label not in self._reduced]
        while stack:
            label = stack.pop()
            if label in needed or label in self._reduced:
                continue
            if label not in self.pivot_rows:
                raise KeyError(f'{label!r} is not a pivot column')
            needed.add(label)
            stack.extend(c for c in self.pivot_rows[label] if c != label and c in self.pivot_rows)
        for label in sorted(needed, key=self.position.__getitem__, reverse=True):
            row = self.pivot_rows[label]
            later = sorted((c for c in row if c != label and c in self.pivot_rows), key=self.position.__getitem__)
            for c in later:
                row = self.reducer.eliminate(row, self._reduced[c], c)
            self._reduced[label] = row
        return {label: self.reducer.finish(self._reduced[label], label) for label in labels}


def echelon(matrix):
    """
    Forward elimination of a FieldMatrix, column by column in label order.

    The pivot row of a column is the candidate whose pivot entry has the lowest degree in k,
    ties broken by row index.

    Args:
        matrix (FieldMatrix): Entries in Q (Fractions) or in Q(k) (UniPolyK / RatFuncK).

    Returns:
        Echelon: Pivot rows keyed by pivot column.
    """
    position = {label: i for i, label in enumerate(matrix.columns)}
    parametric = any(_is_parametric(v) for row in matrix.rows for v in row.values())
    reducer = _PolynomialReducer(position) if parametric else _RationalReducer()

    rows = {}
    holders = defaultdict(set)
    for rid, row in enumerate(matrix.rows):
        if not row:
            continue
        prepared = reducer.prepare(row)
        rows[rid] = prepared
        for label in prepared:
            holders[label].add(rid)

    pivot_rows = {}
    for label in matrix.columns:
        candidates = holders.pop(label, None)
        if not candidates:
            continue
        chosen = min(candidates, key=lambda r: (reducer.pivot_cost(rows[r][label]), r))
        pivot_row = reducer.normalize_pivot(rows.pop(chosen), label)
        for lab in pivot_row:
            if lab != label:
                holders[lab].discard(chosen)
        for rid in sorted(candidates):
            if rid == chosen:
                continue
            old = rows.pop(rid)
            new = reducer.eliminate(old, pivot_row, label)
            for lab in old:
                if lab != label and lab not in new:
                    holders[lab].discard(rid)
            if new:
                rows[rid] = new
                for lab in new:
                    holders[lab].add(rid)
        pivot_rows[label] = pivot_row

    logger.debug(f'Echelon form of a {len(matrix.rows)}x{len(matrix.columns)} matrix has rank {len(pivot_rows)}')
    return Echelon(matrix.columns, pivot_rows, reducer)


def rref(matrix):
    """
    Computes the reduced row echelon form of a FieldMatrix.

    Args:
        matrix (FieldMatrix): The matrix; elimination proceeds left to right in column order.

    Returns:
        tuple: (FieldMatrix with one row per pivot, ordered list of pivot labels). Zero rows are
        dropped and every pivot column holds a single 1.
    """
    form = echelon(matrix)
    pivots = form.pivots
    reduced = form.reduced_rows(pivots)
    return FieldMatrix(matrix.columns, [reduced[label] for label in pivots]), pivots


def _dense(matrix):
    if isinstance(matrix, FieldMatrix):
        return matrix.to_dense()
    return np.array(matrix, dtype=object)


def _to_field(array):
    """Coerces every entry of a dense matrix into one field, Q(k) if any entry depends on k."""
    parametric = any(_is_parametric(v) for v in array.flat)
    convert = _coerce_ratfunc if parametric else to_rational
    out = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        out[index] = convert(value)
    return out, (RatFuncK(ONE_POLY) if parametric else _ONE)


def invert(matrix):
    """
    Inverts a square matrix by Gauss-Jordan elimination.

    Args:
        matrix (FieldMatrix | numpy.ndarray): Entries in Q or Q(k).

    Returns:
        The inverse, of the same kind as the input.

    Raises:
        Singular: If the matrix is not invertible.
    """
    X = _dense(matrix)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f'only square matrices can be inverted, got shape {X.shape}')
    n = X.shape[0]
    X, one = _to_field(X)
    zero = one - one
    Y = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            Y[i, j] = one if i == j else zero

    for i in range(n):
        for j in range(i, n):
            if not _is_zero(X[j, i]):
                if j != i:
                    X[[i, j]] = X[[j, i]]
                    Y[[i, j]] = Y[[j, i]]
                break
        else:
            raise Singular(f'matrix of size {n} is not invertible (no pivot in column {i})')
        pivot = X[i, i]
        X[i, :] = [v / pivot for v in X[i, :]]
        Y[i, :] = [v / pivot for v in Y[i, :]]
        for j in range(n):
            if j == i or _is_zero(X[j, i]):
                continue
            factor = X[j, i]
            X[j, :] = [a - factor * b for a, b in zip(X[j, :], X[i, :])]
            Y[j, :] = [a - factor * b for a, b in zip(Y[j, :], Y[i, :])]

    if isinstance(matrix, FieldMatrix):
        return FieldMatrix.from_dense(Y, matrix.columns)
    return Y


def determinant(matrix):
    """
    Computes the determinant of a square matrix over Q or Q(k) by Gaussian elimination.

    Returns:
        Fraction | RatFuncK: The exact determinant.
    """
    X = _dense(matrix)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError(f'determinant of a non-square matrix of shape {X.shape}')
    n = X.shape[0]
    X, one = _to_field(X)
    det = one
    for i in range(n):
        for j in range(i, n):
            if not _is_zero(X[j, i]):
                break
        else:
            return one - one
        if j != i:
            X[[i, j]] = X[[j, i]]
            det = -det
        pivot = X[i, i]
        det = det * pivot
        for j in range(i + 1, n):
            if _is_zero(X[j, i]):
                continue
            factor = X[j, i] / pivot
            X[j, :] = [a - factor * b for a, b in zip(X[j, :], X[i, :])]
    return det


def evaluate_matrix(matrix, k0):
    """
    Specializes a dense matrix over Q(k) at k = k0.

    Raises:
        PoleAt: If some entry has a pole at k0.
    """
    array = _dense(matrix)
    out = np.empty(array.shape, dtype=object)
    for index, value in np.ndenumerate(array):
        out[index] = eval_ratfunc(value, k0)
    return out
