"""
Macaulay type matrices of the A-hypergeometric system.

A row is the toric normal form of d^u (E_j - c_j), written as a map from derivation monomials to
coefficients affine in x and c. Rows stay symbolic until ``specialize`` substitutes x = X and
c = beta + k H, which leaves entries of degree at most one in k.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, combinations_with_replacement
import logging
import math

import numpy as np
from scipy.spatial import ConvexHull

from ahg_hgm import settings
from ahg_hgm.exact import FieldMatrix, UniPolyK, echelon, format_rational
from ahg_hgm.exceptions import BasisNotIrreducible, GenericityFailure
from ahg_hgm.polynomials import TermOrder, monomial_normal_form, toric_gb

logger = logging.getLogger(__name__)


def monomial_label(e):
    """Column label of a derivation monomial: "d1d4", "d4d4" or "1"."""
    label = ''.join(f'd{i + 1}' * power for i, power in enumerate(e))
    return label or '1'


def monomials_up_to(n, T):
    """All exponent vectors in n variables of total degree at most T, by degree."""
    for degree in range(T + 1):
        for combo in combinations_with_replacement(range(n), degree):
            e = [0] * n
            for i in combo:
                e[i] += 1
            yield tuple(e)


class CoeffCX:
    """
    A coefficient sum_m q_m x_m + alpha + sum_j gamma_j c_j of a Macaulay row.
    """
    __slots__ = ('x', 'constant', 'c')

    def __init__(self, x=None, constant=0, c=None):
        self.x = {m: Fraction(q) for m, q in (x or {}).items() if q}
        self.constant = Fraction(constant)
        self.c = {j: Fraction(g) for j, g in (c or {}).items() if g}

    def __add__(self, other):
        x = dict(self.x)
        for m, q in other.x.items():
            x[m] = x.get(m, 0) + q
        c = dict(self.c)
        for j, g in other.c.items():
            c[j] = c.get(j, 0) + g
        return CoeffCX(x, self.constant + other.constant, c)

    def __bool__(self):
        return bool(self.x or self.constant or self.c)

    def __eq__(self, other):
        if not isinstance(other, CoeffCX):
            return NotImplemented
        return (self.x, self.constant, self.c) == (other.x, other.constant, other.c)

    def specialize(self, X, beta, H):
        """Substitutes x = X and c = beta + k H."""
        value = sum((q * X[m] for m, q in self.x.items()), self.constant)
        value += sum(g * beta[j] for j, g in self.c.items())
        slope = sum((g * H[j] for j, g in self.c.items()), Fraction(0))
        return UniPolyK.affine(value, slope)

    def evaluate(self, X, c):
        """Substitutes numbers for both x and c."""
        value = sum((q * X[m] for m, q in self.x.items()), self.constant)
        return value + sum((g * c[j] for j, g in self.c.items()), Fraction(0))

    def __str__(self):
        parts = [(q, f'x{m + 1}') for m, q in sorted(self.x.items())]
        if self.constant:
            parts.append((self.constant, ''))
        parts += [(g, f'c{j + 1}') for j, g in sorted(self.c.items())]
        if not parts:
            return '0'
        text = ''
        for q, name in parts:
            magnitude = abs(q)
            if not name:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = name
            else:
                body = f'{format_rational(magnitude)}*{name}'
            sign = '-' if q < 0 else ('+' if text else '')
            text += sign + body
        return text

    __repr__ = __str__


def euler_times_monomial(A, j, u):
    """
    Normally ordered expansion of d^u (E_j - c_j).

    d^u (E_j - c_j) = sum_k a_jk x_k d^(u + e_k) + ((sum_k a_jk u_k) - c_j) d^u,
    from the commutation rule d_k x_k = x_k d_k + 1.

    Args:
        A (ConfigMatrix): The configuration.
        j (int): Row index of the Euler operator, 0-based.
        u (tuple): The exponent of the left factor.

    Returns:
        dict: Column exponent -> CoeffCX.
    """
    row_a = A.rows[j]
    u = tuple(u)
    row = {}
    for k, a in enumerate(row_a):
        if a:
            row[tuple(x + (1 if i == k else 0) for i, x in enumerate(u))] = CoeffCX({k: a})
    shift = sum(a * x for a, x in zip(row_a, u))
    row[u] = CoeffCX(constant=shift, c={j: -1})
    return row


def reduce_row(row, G, cache=None):
    """
    Replaces every column label by its toric normal form, adding coefficients that collide.

    Args:
        row (dict): Column exponent -> CoeffCX.
        G (GroebnerBasis): A binomial basis of I_A.
        cache (dict): Optional memo of normal forms shared between rows.
    """
    cache = {} if cache is None else cache
    reduced = {}
    for e, coeff in row.items():
        target = cache.get(e)
        if target is None:
            target = monomial_normal_form(e, G) if len(G) else e
            cache[e] = target
        reduced[target] = reduced[target] + coeff if target in reduced else coeff
    return {e: coeff for e, coeff in reduced.items() if coeff}


@dataclass
class MacaulayMatrix:
    """
    The Macaulay type matrix F'_T.

    Attributes:
        rows (list): Toric-reduced rows, column exponent -> CoeffCX.
        row_keys (list): The (j, u) each row comes from.
        columns (list): The M' columns, descending by degree then term order.
        basis (list): The S columns, placed after M'.
        T (int): The degree.
        order (TermOrder): The ambient term order.
    """
    rows: list
    row_keys: list
    columns: list
    basis: list
    T: int
    order: TermOrder = field(repr=False)

    @property
    def all_columns(self):
        return list(self.columns) + list(self.basis)

    @property
    def shape(self):
        return len(self.rows), len(self.columns) + len(self.basis)


def build_macaulay(A, G, S, T, threads=None):
    """
    Builds F'_T: the reduced rows d^u (E_j - c_j) for every j and every |u| <= T.

    Args:
        A (ConfigMatrix): The configuration.
        G (GroebnerBasis): Toric basis of A; its order is the ambient term order.
        S (list): Basis monomials, all standard for G.
        T (int): The degree.
        threads (int): Worker threads for row construction, settings.THREADS by default.

    Returns:
        MacaulayMatrix: d * C(n + T, n) rows.

    Raises:
        BasisNotIrreducible: If some element of S is reducible by G.
    """
    S = [tuple(s) for s in S]
    for s in S:
        if not G.is_standard(s):
            raise BasisNotIrreducible(f'basis element {monomial_label(s)} is reducible by the toric Groebner basis')
    order = G.order
    keys = [(j, u) for u in monomials_up_to(A.n, T) for j in range(A.d)]
    cache = {}

    def build(key):
        j, u = key
        return reduce_row(euler_times_monomial(A, j, u), G, cache)

    threads = settings.THREADS if threads is None else threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            rows = list(executor.map(build, keys))
    else:
        rows = [build(key) for key in keys]

    basis = set(S)
    labels = {e for row in rows for e in row} - basis
    columns = sorted(labels, key=lambda e: (sum(e), order.key(e)), reverse=True)
    matrix = MacaulayMatrix(rows, keys, columns, S, T, order)
    logger.info(f'Macaulay matrix of degree {T} built with {len(rows)} rows x {len(columns) + len(S)} columns')
    return matrix


def specialize(Fp, X, beta, H):
    """
    Substitutes x = X and c = beta + k H in every entry.

    Returns:
        FieldMatrix: Entries UniPolyK of degree at most one, columns M' then S.
    """
    X = [Fraction(v) for v in X]
    rows = [{e: coeff.specialize(X, beta, H) for e, coeff in row.items()} for row in Fp.rows]
    return FieldMatrix(Fp.all_columns, rows)


def evaluate(Fp, X, c):
    """Substitutes numbers for x and c, giving a matrix over Q."""
    X = [Fraction(v) for v in X]
    c = [Fraction(v) for v in c]
    rows = [{e: coeff.evaluate(X, c) for e, coeff in row.items()} for row in Fp.rows]
    return FieldMatrix(Fp.all_columns, rows)


def normalized_volume(A):
    """
    The normalized volume of A: d! vol(conv(0, a_1, ..., a_n)) divided by the index of the
    lattice spanned by the columns. It is the holonomic rank for generic parameters.

    Args:
        A (ConfigMatrix): The configuration.

    Returns:
        int: The normalized volume.
    """
    M = np.array(A)
    d, n = M.shape
    minors = [int(round(np.linalg.det(M[:, list(cols)]))) for cols in combinations(range(n), d)]
    index = reduce(math.gcd, (abs(m) for m in minors))
    if d == 1:
        return int(np.abs(M).max()) // index
    points = np.vstack([np.zeros(d), M.T])
    volume = int(round(ConvexHull(points).volume * math.factorial(d)))
    return volume // index


def standard_basis(A, G=None, T_max=None, seed=None):
    """
    Reads a basis S of standard monomials off the Macaulay matrix at a random rational point.

    For T = 0, 1, ... the non-pivot columns of degree at most T are collected; the first time
    their number equals the normalized volume they are returned, 1 first.

    Args:
        A (ConfigMatrix): The configuration.
        G (GroebnerBasis): Toric basis, grevlex by default.
        T_max (int): Largest degree tried, settings.T_CAP by default.
        seed (int): Seed of the random point, settings.GENERIC_SEED by default.

    Raises:
        GenericityFailure: If no degree up to T_max gives the right count.
    """
    G = toric_gb(A) if G is None else G
    T_max = settings.T_CAP if T_max is None else T_max
    rng = np.random.default_rng(settings.GENERIC_SEED if seed is None else seed)
    X = [Fraction(int(rng.integers(1, 97)), int(rng.integers(1, 97))) for _ in range(A.n)]
    c = [Fraction(int(rng.integers(-97, 97)), int(rng.integers(2, 97))) for _ in range(A.d)]
    volume = normalized_volume(A)

    for T in range(T_max + 1):
        Fp = build_macaulay(A, G, [], T, threads=1)
        form = echelon(evaluate(Fp, X, c))
        candidates = [e for e in Fp.columns if sum(e) <= T and not form.is_pivot(e)]
        if len(candidates) == volume:
            candidates.sort(key=G.order.key)
            logger.info(f'Standard basis found at T = {T}: {", ".join(map(monomial_label, candidates))}')
            return candidates
        logger.debug(f'T = {T}: {len(candidates)} standard candidates, expected {volume}')
    raise GenericityFailure(T_max, f'no basis of {volume} standard monomials found up to T = {T_max}')

