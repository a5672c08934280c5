from fractions import Fraction

import pytest

from ahg_hgm.bench import run_benchmark
from ahg_hgm.exceptions import AhgError, GenericityFailure, NoHyperplane, SingularStep, ZeroNormalizer
from ahg_hgm.fibers import enumerate_fiber
from ahg_hgm.hgm import (EvalPlan, StateVector, expectation, fiber_moment, hgm_eval, oracle_vector,
                         plan_from_path, shift_nonnegative, verify_against_oracle)
from ahg_hgm.items import ConfigMatrix, Leg
from ahg_hgm.macaulay import standard_basis
from ahg_hgm.polynomials import toric_gb, unit_vector
from ahg_hgm.recurrence import find_path
from tests.conftest import E_U8_BENCH, Z_BENCH, random_config

S34 = [(0, 0, 0, 0), (0, 0, 0, 1)]


def _random_point(rng, n):
    return tuple(Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9))) for _ in range(n))


def test_oracle_values_of_the_3x4_example(A34, X34):
    state = oracle_vector(A34, S34, (3, 2, 1), X34)
    assert state.values == (Fraction(5, 4), Fraction(1))
    assert state.z == Fraction(5, 4)


def test_hgm_on_the_3x4_example(example_problem):
    state = hgm_eval(EvalPlan.from_problem(example_problem))
    assert state.beta == (4, 3, 2)
    assert state.values == (Fraction(3, 4), Fraction(5, 4))
    assert expectation(state, example_problem.A, 3) == Fraction(5, 3)
    assert verify_against_oracle(state, example_problem.A)


def test_benchmark_golden_value(bench_problem):
    G = toric_gb(bench_problem.A)
    state = hgm_eval(EvalPlan.from_problem(bench_problem), G=G)
    assert state.beta == (33, 12, 11, 11)
    assert state.z == Z_BENCH
    assert expectation(state, bench_problem.A, 7, G=G) == E_U8_BENCH


def test_expectation_outside_the_basis(A34, X34):
    state = oracle_vector(A34, S34, (3, 2, 1), X34)
    for i in range(4):
        assert expectation(state, A34, i) == fiber_moment(A34, (3, 2, 1), X34, i)


def test_expectation_of_an_empty_fiber(A34, X34):
    state = oracle_vector(A34, S34, (1, 2, 0), X34)
    with pytest.raises(ZeroNormalizer):
        expectation(state, A34, 3)


def test_empty_plan_returns_oracle_values(A34, X34):
    plan = EvalPlan(A34, (3, 2, 1), [], X34, S34)
    assert hgm_eval(plan).values == oracle_vector(A34, S34, (3, 2, 1), X34).values


def test_plan_from_path_reaches_the_start(A34, X34):
    path = find_path(A34, (3, 2, 1), S34)
    plan = plan_from_path(A34, path, X34, S34)
    assert plan.endpoint == (3, 2, 1)
    assert hgm_eval(plan).values == (Fraction(5, 4), Fraction(1))


def test_state_vector_json_round_trip(A34, X34):
    state = oracle_vector(A34, S34, (3, 2, 1), X34)
    assert StateVector.from_json(state.to_json()) == state


def test_contiguity_on_random_systems(rng):
    checked = 0
    while checked < 50:
        d = int(rng.integers(1, 4))
        n = int(rng.integers(d + 1, 6))
        A = random_config(rng, d, n)
        if A is None:
            continue
        u = tuple(int(v) for v in rng.integers(0, 3, size=n))
        beta = A.apply(u)
        X = _random_point(rng, n)
        fiber = enumerate_fiber(A, beta)
        for i in range(n):
            left = oracle_vector(A, [unit_vector(i, n)], beta, X, fiber).z
            shifted = tuple(b - a for b, a in zip(beta, A.column(i)))
            assert left == oracle_vector(A, [(0,) * n], shifted, X).z
        checked += 1


def _random_system(rng):
    """(A, G, S) for a random configuration with a basis found at T <= 4, or None."""
    d = int(rng.integers(1, 4))
    n = int(rng.integers(d + 1, 6))
    A = random_config(rng, d, n)
    if A is None:
        return None
    G = toric_gb(A)
    try:
        return A, G, standard_basis(A, G, T_max=4)
    except GenericityFailure:
        return None


def _column_legs(rng, A):
    i = int(rng.integers(0, A.n))
    return [Leg(A.column(i), int(rng.integers(1, 4)))]


def _combined_legs(rng, A):
    # each leg follows a sum of two distinct columns
    legs = []
    for _ in range(2):
        i, j = (int(v) for v in rng.choice(A.n, size=2, replace=False))
        H = tuple(a + b for a, b in zip(A.column(i), A.column(j)))
        legs.append(Leg(H, int(rng.integers(1, 3))))
    return legs


@pytest.mark.usefixtures('small_t_cap')
@pytest.mark.parametrize('make_legs', [_column_legs, _combined_legs])
def test_hgm_matches_the_oracle_on_random_systems(rng, make_legs):
    successes = 0
    failures = 0
    for _ in range(300):
        if successes >= 50:
            break
        system = _random_system(rng)
        if system is None:
            continue
        A, G, S = system
        u = tuple(int(v) for v in rng.integers(0, 3, size=A.n))
        plan = EvalPlan(A, A.apply(u), make_legs(rng, A), _random_point(rng, A.n), S)
        if len(enumerate_fiber(A, plan.endpoint)) > 500:
            continue
        try:
            state = hgm_eval(plan, G=G)
        except (SingularStep, GenericityFailure):
            failures += 1
            continue
        assert state.values == oracle_vector(A, S, plan.endpoint, plan.X).values
        successes += 1
    assert successes >= 50
    assert failures < successes


def test_shift_nonnegative_example():
    shift = shift_nonnegative([[1, 1], [-1, 0]], (1, 0))
    assert shift.p == (0, 1)
    assert shift.config.rows == ((1, 1), (0, 1))
    assert shift.transform((2, -1)) == (2, 1)


def test_shift_preserves_fibers_and_values():
    A = ConfigMatrix(((1, 1, 1), (-1, 0, 1)), allow_negative=True)
    shift = shift_nonnegative(A, (1, 0))
    beta = shift.transform((3, 1))
    X = (Fraction(1), Fraction(1, 2), Fraction(3))
    fiber = enumerate_fiber(shift.config, beta)
    assert sorted(fiber) == [(0, 2, 1), (1, 0, 2)]
    assert oracle_vector(shift.config, [(0, 0, 0)], beta, X).z == Fraction(1, 8) * 3 + Fraction(9, 2)


def test_shift_keeps_the_toric_ideal(rng):
    checked = 0
    while checked < 10:
        d = int(rng.integers(2, 4))
        n = int(rng.integers(d + 1, 6))
        rows = [(1,) * n] + [tuple(int(v) for v in rng.integers(-2, 3, size=n)) for _ in range(d - 1)]
        try:
            A = ConfigMatrix(tuple(rows), allow_negative=True)
        except ValueError:
            continue
        shift = shift_nonnegative(A, (1,) + (0,) * (d - 1))
        assert shift.config.is_nonnegative()
        assert toric_gb(A).to_strings() == toric_gb(shift.config).to_strings()
        checked += 1


def test_shift_needs_a_hyperplane():
    with pytest.raises(NoHyperplane):
        shift_nonnegative([[1, 2], [-1, 0]], (1, 0))


def test_errors_carry_exit_codes():
    assert SingularStep(3).exit_code == 5
    assert isinstance(SingularStep(3), AhgError)
    assert 'k = 3' in str(SingularStep(3))


def test_benchmark_records_agree(example_problem):
    records = run_benchmark(example_problem, [0, 1, 2])
    assert [r.method for r in records] == ['hgm', 'enumerate'] * 3
    for hgm, enumerated in zip(records[::2], records[1::2]):
        assert hgm.k == enumerated.k
        assert hgm.value == enumerated.value
        assert hgm.fiber_count is None
    assert records[1].fiber_count == 2


@pytest.mark.slow
def test_benchmark_crossover(bench_problem):
    records = run_benchmark(bench_problem, [0, 100])
    by_method = {(r.method, r.k): r for r in records}
    assert by_method[('enumerate', 100)].fiber_count == 7124155
    per_k = (by_method[('hgm', 100)].wall_seconds - by_method[('hgm', 0)].wall_seconds) / 100
    assert by_method[('enumerate', 100)].wall_seconds > 10 * per_k
