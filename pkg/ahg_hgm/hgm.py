"""
The difference holonomic gradient method.

The state vector Y = (S . Z)(beta; X) is started from the fiber oracle and carried along each leg of
an evaluation plan with Y(k) = R(k)^-1 Y(k - 1). The module also holds the oracle itself, the
expectations E[U_i] and the shift of integer matrices to nonnegative ones.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
import datetime
import logging
import time

import humanize
import numpy as np

from ahg_hgm import settings
from ahg_hgm.exact import format_rational, invert, parse_rational
from ahg_hgm.exceptions import NoHyperplane, PoleAt, Singular, SingularStep, ZeroNormalizer
from ahg_hgm.fibers import enumerate_fiber, iter_fiber
from ahg_hgm.items import ConfigMatrix, Leg
from ahg_hgm.polynomials import toric_gb, unit_vector
from ahg_hgm.recurrence import extract_recurrence, pfaffian_matrix

logger = logging.getLogger(__name__)


@dataclass
class StateVector:
    """Exact values (s . Z)(beta; X) for s in the basis, 1 first."""
    beta: tuple
    X: tuple
    basis: list
    values: tuple

    @property
    def z(self):
        return self.values[0]

    def to_json(self):
        return {
            'beta': list(self.beta),
            'X': [format_rational(v) for v in self.X],
            'basis': [list(s) for s in self.basis],
            'values': [format_rational(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, data):
        return cls(tuple(data['beta']), tuple(parse_rational(v) for v in data['X']),
                   [tuple(s) for s in data['basis']], tuple(parse_rational(v) for v in data['values']))


@dataclass
class EvalPlan:
    """Start at ``base`` and follow each leg (H, steps) in turn."""
    A: ConfigMatrix
    base: tuple
    legs: list
    X: tuple
    basis: list
    order: str = settings.DEFAULT_ORDER
    weights: tuple = None

    @property
    def endpoint(self):
        beta = list(self.base)
        for leg in self.legs:
            beta = [b + leg.steps * h for b, h in zip(beta, leg.H)]
        return tuple(beta)

    @classmethod
    def from_problem(cls, problem):
        return cls(problem.A, problem.beta, list(problem.legs), problem.X, problem.S, problem.order, problem.weights)


def _power_tables(X, fiber):
    """tables[i][m] = X_i^m / m! for every exponent m the fiber can need."""
    tables = []
    for i, x in enumerate(X):
        top = max((u[i] for u in fiber), default=0)
        row = [Fraction(1)]
        for m in range(1, top + 1):
            row.append(row[-1] * x / m)
        tables.append(row)
    return tables


def oracle_vector(A, S, beta, X, fiber=None):
    """
    Evaluates (s . Z)(beta; X) for every s = d^v in S by summing over the fiber.

    d^v . x^u/u! = x^(u-v)/(u-v)! when u >= v and 0 otherwise.

    Args:
        A (ConfigMatrix): The configuration.
        S (list): Basis exponents.
        beta (tuple): The parameter.
        X (tuple): The evaluation point.
        fiber (list): A precomputed fiber of beta.

    Returns:
        StateVector: Exact values.
    """
    X = tuple(Fraction(x) for x in X)
    fiber = enumerate_fiber(A, beta) if fiber is None else fiber
    tables = _power_tables(X, fiber)
    values = []
    for v in S:
        total = Fraction(0)
        for u in fiber:
            if all(a >= b for a, b in zip(u, v)):
                term = Fraction(1)
                for i, (a, b) in enumerate(zip(u, v)):
                    if a > b:
                        term *= tables[i][a - b]
                total += term
        values.append(total)
    return StateVector(tuple(beta), X, [tuple(s) for s in S], tuple(values))


def hgm_eval(plan, G=None, T=None, threads=None):
    """
    Runs the difference HGM along a plan.

    Args:
        plan (EvalPlan): Base point, legs, evaluation point and basis.
        G (GroebnerBasis): Toric basis in the plan's order, computed when omitted.
        T (int): Initial Macaulay degree override.
        threads (int): Passed to the Macaulay construction.

    Returns:
        StateVector: Exact values at the plan's endpoint.

    Raises:
        SingularStep: If some R(k) has a pole or is not invertible at an integer step.
        GenericityFailure: From recurrence extraction.
    """
    A = plan.A
    G = toric_gb(A, plan.order) if G is None else G
    state = oracle_vector(A, plan.basis, plan.base, plan.X)
    values = np.array(state.values, dtype=object)
    beta = tuple(plan.base)
    for leg in plan.legs:
        if leg.steps == 0:
            continue
        start = time.perf_counter()
        R = extract_recurrence(A, plan.basis, beta, state.X, leg.H, G=G, weights=plan.weights, T=T, threads=threads)
        for k in range(1, leg.steps + 1):
            try:
                step = invert(R.at(k))
            except (PoleAt, Singular) as error:
                raise SingularStep(k, f'H = {tuple(leg.H)} from beta = {beta}: {error}') from error
            values = step.dot(values)
        beta = tuple(b + leg.steps * h for b, h in zip(beta, leg.H))
        elapsed = datetime.timedelta(seconds=time.perf_counter() - start)
        logger.info(f'HGM leg H={tuple(leg.H)} x {leg.steps} finished in {humanize.precisedelta(elapsed, minimum_unit="milliseconds")}')
    return StateVector(beta, state.X, list(state.basis), tuple(Fraction(v) for v in values))


def expectation(state, A, i, G=None):
    """
    E[U_i] = x_i (d_i . Z) / Z at the state's parameter.

    When d_i is not in the basis, d_i . Z is read from the first row of the step matrix along
    column i at k = 0.

    Args:
        state (StateVector): Values at (beta, X).
        A (ConfigMatrix): The configuration.
        i (int): Column index, 0-based.

    Raises:
        ZeroNormalizer: If Z = 0.
    """
    if state.z == 0:
        raise ZeroNormalizer(f'Z vanishes at beta = {state.beta}')
    e = unit_vector(i, A.n)
    if e in state.basis:
        derivative = state.values[state.basis.index(e)]
    else:
        P = pfaffian_matrix(A, state.basis, state.beta, state.X, i, G=G)
        derivative = sum((v * y for v, y in zip(P.at(0)[0], state.values)), Fraction(0))
    return state.X[i] * derivative / state.z


@dataclass
class Shift:
    """Result of shift_nonnegative: A' = (a_i + p) and the parameter map beta -> beta'."""
    config: ConfigMatrix
    p: tuple
    hform: tuple = field(repr=False)

    def transform(self, beta):
        """beta' = beta + (hform . beta) p."""
        scale = sum(Fraction(h) * b for h, b in zip(self.hform, beta))
        if scale.denominator != 1:
            raise ValueError(f'hform . beta = {scale} is not an integer')
        return tuple(int(b + scale * q) for b, q in zip(beta, self.p))


def shift_nonnegative(A, hform):
    """
    Shifts the columns of an integer matrix by p so every entry becomes nonnegative.

    p_i = max(0, -min_j a_ij); when hform . p = -1 the first unit vector e_r with hform_r != 0
    is added to p. The toric ideals of A and A' agree.

    Args:
        A (ConfigMatrix | list): Integer matrix, negative entries allowed.
        hform (tuple): Linear form with hform . a_i = 1 for every column.

    Raises:
        NoHyperplane: If some hform . a_i differs from 1.
    """
    if not isinstance(A, ConfigMatrix):
        A = ConfigMatrix(tuple(tuple(row) for row in A), allow_negative=True)
    hform = tuple(Fraction(h) for h in hform)
    if len(hform) != A.d:
        raise NoHyperplane(f'hform has {len(hform)} entries, A has {A.d} rows')
    for i, column in enumerate(A.columns):
        value = sum(h * a for h, a in zip(hform, column))
        if value != 1:
            raise NoHyperplane(f'hform . a_{i + 1} = {format_rational(value)}, expected 1')
    p = [max(0, -min(row)) for row in A.rows]
    if sum(h * q for h, q in zip(hform, p)) == -1:
        r = next(r for r, h in enumerate(hform) if h != 0)
        p[r] += 1
    shifted = ConfigMatrix(tuple(tuple(a + p[j] for a in row) for j, row in enumerate(A.rows)))
    logger.info(f'Shifted {A} by p = {tuple(p)} to {shifted}')
    return Shift(shifted, tuple(p), hform)


def plan_from_path(A, path, X, S, order=None):
    """An evaluation plan starting at the path's endpoint and walking its steps backwards."""
    legs = [Leg(A.column(i), m) for i, m in reversed(path.steps)]
    return EvalPlan(A, tuple(path.endpoint), legs, tuple(X), [tuple(s) for s in S], order or settings.DEFAULT_ORDER)


def verify_against_oracle(state, A, limit=None):
    """
    Compares a state vector with the fiber oracle at the same parameter.

    Raises:
        ValueError: If the fiber has more than ``limit`` points.
    """
    limit = settings.VERIFY_FIBER_LIMIT if limit is None else limit
    fiber = []
    for u in iter_fiber(A, state.beta):
        fiber.append(u)
        if len(fiber) > limit:
            raise ValueError(f'fiber of {state.beta} has more than {limit} points, oracle skipped')
    oracle = oracle_vector(A, state.basis, state.beta, state.X, fiber)
    return tuple(oracle.values) == tuple(state.values)


def fiber_moment(A, beta, X, i):
    """E[U_i] computed directly from the fiber, sum u_i x^u/u! over Z."""
    X = tuple(Fraction(x) for x in X)
    numerator = Fraction(0)
    denominator = Fraction(0)
    for u in iter_fiber(A, beta):
        weight = Fraction(1)
        for x, a in zip(X, u):
            weight *= x ** a / factorial(a)
        numerator += u[i] * weight
        denominator += weight
    if denominator == 0:
        raise ZeroNormalizer(f'Z vanishes at beta = {tuple(beta)}')
    return numerator / denominator
