"""
Enumeration of the fiber {u in N_0^n : A u = beta} of a nonnegative configuration.

The search picks d linearly independent pivot columns, walks the remaining n - d coordinates depth
first and solves for the pivot coordinates exactly with the integer adjugate of the pivot block.
The innermost coordinate is handled for all its values at once with numpy.
"""
from concurrent.futures import ThreadPoolExecutor
import logging

import numpy as np

from ahg_hgm import settings
from ahg_hgm.exact import determinant, invert

logger = logging.getLogger(__name__)


class FiberSolver:
    """
    Depth-first enumerator for one matrix A and one right-hand side beta.

    Attributes:
        pivots (list): The d columns solved for at the leaves, largest bound first.
        free (list): The other columns, tightest bound first.
    """

    def __init__(self, A, beta):
        if not A.is_nonnegative():
            raise ValueError('fiber enumeration needs a matrix with nonnegative entries')
        if len(beta) != A.d:
            raise ValueError(f'beta has {len(beta)} entries, A has {A.d} rows')
        self.A = A
        self.beta = tuple(int(b) for b in beta)
        self.columns = [np.array(A.column(i), dtype=np.int64) for i in range(A.n)]
        bounds = [A.column_bound(i, self.beta) for i in range(A.n)]

        pivots = []
        for i in sorted(range(A.n), key=lambda i: (-bounds[i], i)):
            candidate = pivots + [i]
            if np.linalg.matrix_rank(np.array(A)[:, candidate]) == len(candidate):
                pivots.append(i)
            if len(pivots) == A.d:
                break
        self.pivots = pivots
        self.free = sorted((i for i in range(A.n) if i not in pivots), key=lambda i: (bounds[i], i))

        block = [[A.rows[r][c] for c in pivots] for r in range(A.d)]
        det = int(determinant(block))
        inverse = invert(block)
        self.det = det
        self.adjugate = np.array([[int(v * det) for v in row] for row in inverse], dtype=np.int64)

    def bound(self, i, remaining):
        column = self.columns[i]
        return min(int(r) // int(a) for a, r in zip(column, remaining) if a > 0)

    def _solutions(self, remaining, prefix, last=None):
        """Yields fibers given the free values in ``prefix`` and, optionally, the last free column."""
        n = self.A.n
        if last is None:
            rem = np.array(remaining, dtype=np.int64).reshape(-1, 1)
            values = np.zeros(1, dtype=np.int64)
        else:
            values = np.arange(self.bound(last, remaining) + 1, dtype=np.int64)
            rem = np.array(remaining, dtype=np.int64).reshape(-1, 1) - np.outer(self.columns[last], values)
        scaled = self.adjugate @ rem
        exact = np.all(scaled % self.det == 0, axis=0)
        solved = scaled // self.det
        valid = exact & np.all(solved >= 0, axis=0)
        for index in np.nonzero(valid)[0]:
            u = [0] * n
            for column, value in prefix:
                u[column] = value
            if last is not None:
                u[last] = int(values[index])
            for row, column in enumerate(self.pivots):
                u[column] = int(solved[row, index])
            yield tuple(u)

    def walk(self, remaining, depth=0, prefix=()):
        if not self.free:
            yield from self._solutions(remaining, prefix)
            return
        column = self.free[depth]
        if depth == len(self.free) - 1:
            yield from self._solutions(remaining, prefix, last=column)
            return
        vector = self.columns[column]
        for t in range(self.bound(column, remaining) + 1):
            yield from self.walk(remaining - t * vector, depth + 1, prefix + ((column, t),))

    def __iter__(self):
        if any(b < 0 for b in self.beta):
            return iter(())
        return self.walk(np.array(self.beta, dtype=np.int64))


def iter_fiber(A, beta):
    """
    Lazily yields every u in N_0^n with A u = beta, in depth-first order.

    Args:
        A (ConfigMatrix): A nonnegative configuration without zero columns.
        beta (tuple): Integer vector of length d.
    """
    return iter(FiberSolver(A, beta))


def enumerate_fiber(A, beta, threads=None):
    """
    Returns the complete fiber of beta as a list of exponent tuples.

    With ``threads`` > 1 the values of the first free coordinate are split over a thread pool;
    the output order does not depend on the thread count.
    """
    solver = FiberSolver(A, beta)
    threads = settings.THREADS if threads is None else threads
    if threads <= 1 or len(solver.free) < 2 or any(b < 0 for b in solver.beta):
        fiber = list(solver)
    else:
        column = solver.free[0]
        start = np.array(solver.beta, dtype=np.int64)
        vector = solver.columns[column]

        def branch(t):
            return list(solver.walk(start - t * vector, 1, ((column, t),)))

        with ThreadPoolExecutor(max_workers=threads) as executor:
            parts = list(executor.map(branch, range(solver.bound(column, start) + 1)))
        fiber = [u for part in parts for u in part]
    logger.debug(f'Fiber of beta={tuple(beta)}: {len(fiber)} points')
    return fiber


def first_solution(A, beta):
    """Returns one element of the fiber, or None when it is empty."""
    return next(iter_fiber(A, beta), None)


def is_member(A, beta):
    """True when beta lies in the semigroup N_0 A."""
    return first_solution(A, beta) is not None
