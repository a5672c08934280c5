"""
Contiguity recurrences read off Macaulay type matrices.

For a direction H = A h and the vector Y(k) = (S . Z)(beta + k H; X) the recurrence matrix R(k)
satisfies Y(k - 1) = R(k) Y(k). Row j of R(k) expresses the normal form of d^h s_j as a Q(k)-linear
combination of S modulo the system specialized at x = X, c = beta + k H.
"""
from dataclasses import dataclass, field
import logging

import numpy as np

from ahg_hgm import settings
from ahg_hgm.exact import (RatFuncK, determinant, echelon, evaluate_matrix, format_rational,
                           parse_ratfunc, parse_rational)
from ahg_hgm.exceptions import BasisNotIrreducible, GenericityFailure, NotInSemigroup
from ahg_hgm.fibers import enumerate_fiber, is_member
from ahg_hgm.macaulay import build_macaulay, monomial_label, specialize
from ahg_hgm.polynomials import monomial_mul, monomial_normal_form, semigroup_member, toric_gb, unit_vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Direction:
    """A direction H together with a certificate h >= 0, A h = H."""
    H: tuple
    h: tuple


def decompose_direction(A, H, w=None, G=None):
    """
    Finds h in N_0^n with A h = H minimizing w . h.

    Ties are broken by the smallest monomial d^h in the term order of G (grevlex by default).

    Args:
        A (ConfigMatrix): The configuration.
        H (tuple): The direction, length d.
        w (tuple): Weights, all ones by default.
        G (GroebnerBasis): Only its order is used.

    Raises:
        NotInSemigroup: If H is not in N_0 A.
    """
    H = tuple(int(v) for v in H)
    w = tuple(w) if w is not None else (1,) * A.n
    fiber = enumerate_fiber(A, H, threads=1)
    if not fiber:
        raise NotInSemigroup(f'direction H = {H} is not in the semigroup N_0 A')
    key = G.order.key if G is not None else (lambda e: (sum(e), tuple(-x for x in reversed(e))))
    h = min(fiber, key=lambda u: (sum(a * b for a, b in zip(w, u)), key(u)))
    return Direction(H, h)


@dataclass(eq=False)
class RecurrenceMatrix:
    """
    R(k) with entries in Q(k) and the data it was extracted for.

    Attributes:
        matrix (numpy.ndarray): Square object array of RatFuncK.
        basis (list): The basis S as exponent vectors.
        beta (tuple): Base point, k = 0.
        H (tuple): Direction.
        h (tuple): Certificate of the direction.
        X (tuple): Evaluation point.
        T (int): Degree of the Macaulay matrix used, 0 for the identity.
    """
    matrix: np.ndarray
    basis: list
    beta: tuple
    H: tuple
    h: tuple
    X: tuple
    T: int = 0
    _det: object = field(default=None, repr=False)

    @property
    def size(self):
        return len(self.basis)

    def at(self, k):
        """R(k) as a matrix of Fractions; raises PoleAt at a pole."""
        return evaluate_matrix(self.matrix, k)

    def determinant(self):
        if self._det is None:
            self._det = determinant(self.matrix)
        return self._det

    def entry_strings(self):
        return [[str(v) for v in row] for row in self.matrix]

    def to_json(self):
        return {
            'basis': [list(s) for s in self.basis],
            'beta': list(self.beta),
            'H': list(self.H),
            'h': list(self.h),
            'X': [format_rational(v) for v in self.X],
            'T': self.T,
            'matrix': self.entry_strings(),
        }

    @classmethod
    def from_json(cls, data):
        rows = [[parse_ratfunc(v) for v in row] for row in data['matrix']]
        matrix = np.empty((len(rows), len(rows)), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                matrix[i, j] = v
        return cls(matrix, [tuple(s) for s in data['basis']], tuple(data['beta']), tuple(data['H']),
                   tuple(data['h']), tuple(parse_rational(v) for v in data['X']), data.get('T', 0))

    def __eq__(self, other):
        if not isinstance(other, RecurrenceMatrix):
            return NotImplemented
        return (list(self.basis) == list(other.basis) and tuple(self.beta) == tuple(other.beta)
                and tuple(self.H) == tuple(other.H) and tuple(self.h) == tuple(other.h)
                and tuple(self.X) == tuple(other.X) and self.entry_strings() == other.entry_strings())


def _identity(size):
    matrix = np.empty((size, size), dtype=object)
    for i in range(size):
        for j in range(size):
            matrix[i, j] = RatFuncK(1 if i == j else 0)
    return matrix


def _read_rows(form, targets, basis):
    """Rows of R(k) from an echelon form, or None if some target is not expressible."""
    index = {s: i for i, s in enumerate(basis)}
    rows = []
    for target in targets:
        if target in index:
            rows.append([RatFuncK(1 if j == index[target] else 0) for j in range(len(basis))])
            continue
        if not form.is_pivot(target):
            logger.debug(f'Column {monomial_label(target)} has no pivot')
            return None
        reduced = form.reduced_row(target)
        outside = [e for e in reduced if e != target and e not in index]
        if outside:
            logger.debug(f'Row of {monomial_label(target)} still involves {", ".join(map(monomial_label, outside))}')
            return None
        rows.append([-reduced.get(s, RatFuncK(0)) for s in basis])
    return rows


def extract_recurrence(A, S, beta, X, H, G=None, weights=None, T=None, T_cap=None, h=None, threads=None):
    """
    Extracts R(k) with Y(k - 1) = R(k) Y(k), Y(k) = (S . Z)(beta + k H; X).

    The targets s'_j = NF(d^h s_j) are located in the reduced row echelon form of the Macaulay
    matrix specialized at x = X, c = beta + k H; the degree starts at max(0, max deg s'_j - 1) and
    grows until every target is expressible through S alone.

    Args:
        A (ConfigMatrix): The configuration.
        S (list): Basis exponents, standard for G.
        beta (tuple): Base parameter.
        X (tuple): Evaluation point (Fractions).
        H (tuple): Direction.
        G (GroebnerBasis): Toric basis, grevlex by default.
        weights (tuple): Weights for decompose_direction.
        T (int): Initial degree override.
        T_cap (int): Largest degree tried, settings.T_CAP by default.
        h (tuple): Certificate of H, skipping decompose_direction.
        threads (int): Passed to build_macaulay.

    Returns:
        RecurrenceMatrix: The recurrence.

    Raises:
        BasisNotIrreducible: If S is not standard for G.
        NotInSemigroup: If H is not in N_0 A.
        GenericityFailure: If no degree up to T_cap works.
    """
    G = toric_gb(A) if G is None else G
    T_cap = settings.T_CAP if T_cap is None else T_cap
    S = [tuple(s) for s in S]
    beta = tuple(beta)
    X = tuple(X)
    for s in S:
        if not G.is_standard(s):
            raise BasisNotIrreducible(f'basis element {monomial_label(s)} is reducible by the toric Groebner basis')

    direction = Direction(tuple(H), tuple(h)) if h is not None else decompose_direction(A, H, weights, G)
    if not any(direction.h):
        return RecurrenceMatrix(_identity(len(S)), S, beta, direction.H, direction.h, X, 0)

    targets = [monomial_normal_form(monomial_mul(direction.h, s), G) for s in S]
    T = max(0, max(sum(t) for t in targets) - 1) if T is None else T
    while T <= T_cap:
        Fp = build_macaulay(A, G, S, T, threads=threads)
        form = echelon(specialize(Fp, X, beta, direction.H))
        rows = _read_rows(form, targets, S)
        if rows is not None:
            matrix = np.empty((len(S), len(S)), dtype=object)
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    matrix[i, j] = v
            logger.info(f'Recurrence for H={direction.H} (h={direction.h}) extracted at T = {T}, rank {form.rank}')
            return RecurrenceMatrix(matrix, S, beta, direction.H, direction.h, X, T)
        logger.debug(f'No recurrence for H={direction.H} at T = {T}')
        T += 1
    raise GenericityFailure(T_cap, f'no recurrence for H = {direction.H} up to T = {T_cap} '
                                   f'(X not generic or S not a basis)')


def pfaffian_matrix(A, S, beta, X, i, **kwargs):
    """
    The step matrix along column i: extract_recurrence with H = a_i and h = e_i.

    Args:
        i (int): Column index, 0-based.
    """
    return extract_recurrence(A, S, beta, X, A.column(i), h=unit_vector(i, A.n), **kwargs)


@dataclass
class Path:
    """
    A walk from ``start`` towards the origin.

    Attributes:
        steps (list): (column index, multiplicity) pairs, 0-based columns.
        endpoint (tuple): The terminal parameter beta'.
        start (tuple): The initial parameter.
    """
    steps: list
    endpoint: tuple
    start: tuple = None

    def __str__(self):
        steps = ','.join(f'({i + 1},{m})' for i, m in self.steps)
        return f'[{steps}] -> ({",".join(map(str, self.endpoint))})'


def find_path(A, beta, S, G=None):
    """
    Greedy walk of beta towards 0 keeping every shifted copy beta - A s, s in S, inside N_0 A.

    beta is first written as A u with u standard; at each step the column with the largest
    admissible multiplicity m <= u_i is taken (smallest index on ties).

    Raises:
        NotInSemigroup: If beta is not in N_0 A.
    """
    beta = tuple(int(b) for b in beta)
    u = semigroup_member(A, beta, G)
    if u is None:
        raise NotInSemigroup(f'beta = {beta} is not in the semigroup N_0 A')
    counts = list(u)
    shifts = [A.apply(s) for s in S]
    current = beta
    steps = []
    while any(current):
        best = None
        for i in range(A.n):
            column = A.column(i)
            m = 0
            while m < counts[i]:
                after = tuple(b - (m + 1) * a for b, a in zip(current, column))
                if not all(is_member(A, tuple(x - g for x, g in zip(after, gamma))) for gamma in shifts):
                    break
                m += 1
            if m and (best is None or m > best[1]):
                best = (i, m)
        if best is None:
            break
        i, m = best
        steps.append(best)
        counts[i] -= m
        current = tuple(b - m * a for b, a in zip(current, A.column(i)))
    path = Path(steps, current, beta)
    logger.info(f'Path from {beta}: {path}')
    return path
