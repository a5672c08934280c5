from fractions import Fraction

import pytest

from ahg_hgm.exact import RatFuncK, UniPolyK
from ahg_hgm.exceptions import BasisNotIrreducible, NotInSemigroup
from ahg_hgm.hgm import oracle_vector
from ahg_hgm.items import ConfigMatrix
from ahg_hgm.polynomials import semigroup_member, toric_gb
from ahg_hgm.recurrence import (RecurrenceMatrix, decompose_direction, extract_recurrence, find_path,
                                pfaffian_matrix)

S34 = [(0, 0, 0, 0), (0, 0, 0, 1)]


@pytest.fixture
def R34(A34, X34):
    return extract_recurrence(A34, S34, (3, 2, 1), X34, (1, 1, 1))


def test_recurrence_of_the_3x4_example(R34):
    M = R34.matrix
    assert M[0, 0] == 0 and M[0, 1] == 1
    assert M[1, 0] == RatFuncK(UniPolyK((-4, -6, -2)))
    assert M[1, 1] == RatFuncK(UniPolyK((5, 3)))
    assert R34.entry_strings() == [['(0)/1', '(1)/1'], ['(-2*k^2-6*k-4)/1', '(3*k+5)/1']]
    assert R34.h == (0, 0, 0, 1)


def test_recurrence_links_oracle_values(A34, X34, R34):
    Y0 = oracle_vector(A34, S34, (3, 2, 1), X34)
    Y_prev = oracle_vector(A34, S34, (2, 1, 0), X34)
    assert Y0.values == (Fraction(5, 4), Fraction(1))
    assert Y_prev.values == (Fraction(1), Fraction(0))
    assert tuple(R34.at(0).dot(list(Y0.values))) == Y_prev.values


def test_recurrence_holds_along_the_direction(A34, X34, R34):
    for k in range(1, 6):
        beta = tuple(b + k for b in (3, 2, 1))
        before = tuple(b + k - 1 for b in (3, 2, 1))
        Y = oracle_vector(A34, S34, beta, X34).values
        assert tuple(R34.at(k).dot(list(Y))) == oracle_vector(A34, S34, before, X34).values


def test_recurrence_is_invertible_for_k_up_to_50(R34):
    det = R34.determinant()
    assert det == RatFuncK(UniPolyK((4, 6, 2)))
    assert all(det(k) != 0 for k in range(51))


def test_recurrence_json_round_trip(R34):
    assert RecurrenceMatrix.from_json(R34.to_json()) == R34


def test_zero_direction_gives_the_identity(A34, X34):
    R = extract_recurrence(A34, S34, (3, 2, 1), X34, (0, 0, 0))
    assert R.entry_strings() == [['(1)/1', '(0)/1'], ['(0)/1', '(1)/1']]
    assert R.T == 0


def test_step_matrix_of_the_identity_configuration():
    A = ConfigMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    X = (Fraction(1, 2), Fraction(3), Fraction(2, 5))
    P = pfaffian_matrix(A, [(0, 0, 0)], (2, 1, 3), X, 0)
    # Z(beta - e1) / Z(beta) = beta_1 / x_1
    assert P.matrix[0, 0] == RatFuncK(UniPolyK((4, 2)))


def test_reducible_basis_is_refused(A34, X34):
    with pytest.raises(BasisNotIrreducible):
        extract_recurrence(A34, [(0, 0, 0, 0), (0, 1, 1, 0)], (3, 2, 1), X34, (1, 1, 1))


def test_decompose_direction(A34, A48):
    assert decompose_direction(A34, (1, 1, 1)).h == (0, 0, 0, 1)
    assert decompose_direction(A48, (3, 1, 1, 1), G=toric_gb(A48)).h == (2, 0, 0, 0, 0, 0, 0, 1)
    assert decompose_direction(A34, (2, 1, 1), w=(1, 1, 1, 5)).h == (0, 1, 1, 0)
    with pytest.raises(NotInSemigroup):
        decompose_direction(A34, (1, 2, 0))


def test_find_path(A34):
    path = find_path(A34, (3, 2, 1), S34)
    assert str(path) == '[(1,1),(2,1)] -> (1,1,1)'
    assert path.steps == [(0, 1), (1, 1)]
    assert str(find_path(A34, (0, 0, 0), S34)) == '[] -> (0,0,0)'
    with pytest.raises(NotInSemigroup):
        find_path(A34, (1, 2, 0), S34)


def test_path_endpoint_keeps_basis_shifts_in_the_semigroup(A48):
    S = [(0,) * 8, (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 0, 0, 2)]
    path = find_path(A48, (9, 4, 3, 3), S)
    beta = (9, 4, 3, 3)
    for i, m in path.steps:
        beta = tuple(b - m * a for b, a in zip(beta, A48.column(i)))
    assert beta == path.endpoint


def _replay_path(A, path, S):
    current = path.start
    shifts = [A.apply(s) for s in S]
    for i, m in path.steps:
        for _ in range(m):
            current = tuple(b - a for b, a in zip(current, A.column(i)))
            for gamma in shifts:
                assert semigroup_member(A, tuple(x - g for x, g in zip(current, gamma))) is not None
    return current


def test_column_directions_match_step_matrices(A34, X34):
    for i in range(A34.n):
        R = extract_recurrence(A34, S34, (3, 2, 1), X34, A34.column(i))
        assert R.h == tuple(1 if j == i else 0 for j in range(A34.n))
        assert R == pfaffian_matrix(A34, S34, (3, 2, 1), X34, i)


def test_recurrence_does_not_depend_on_a_larger_degree(A34, X34, R34):
    assert extract_recurrence(A34, S34, (3, 2, 1), X34, (1, 1, 1), T=R34.T + 1) == R34
    P = pfaffian_matrix(A34, S34, (3, 2, 1), X34, 0)
    assert pfaffian_matrix(A34, S34, (3, 2, 1), X34, 0, T=P.T + 1) == P


def test_paths_stay_in_the_semigroup(A34, A48):
    path = find_path(A34, (3, 2, 1), S34)
    assert _replay_path(A34, path, S34) == path.endpoint == (1, 1, 1)
    S = [(0,) * 8, (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 0, 0, 2)]
    for beta in [(9, 4, 3, 3), (6, 3, 2, 2), (12, 5, 4, 4)]:
        path = find_path(A48, beta, S)
        assert path.start == beta
        assert _replay_path(A48, path, S) == path.endpoint


def test_path_on_a_one_dimensional_chain():
    path = find_path(ConfigMatrix(((1,),)), (3,), [(0,)])
    assert path.steps == [(0, 3)]
    assert path.endpoint == (0,)
