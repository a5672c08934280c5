import itertools

import pytest

from ahg_hgm.fibers import enumerate_fiber, first_solution, is_member, iter_fiber
from ahg_hgm.items import ConfigMatrix


def _endpoint(k):
    # base (3,2,1,1), k steps along (1,1,1,1) and 2k along (1,0,0,0)
    return (3 + 3 * k, 2 + k, 1 + k, 1 + k)


def _loop_count(beta):
    # free coordinates u5..u8 of the columns (1,1,1,0), (1,1,0,1), (1,0,1,1), (1,1,1,1)
    b0, b1, b2, b3 = beta
    top = max(b1, b2, b3)
    count = 0
    for u5, u6, u7, u8 in itertools.product(range(top + 1), repeat=4):
        u2 = b1 - u5 - u6 - u8
        u3 = b2 - u5 - u7 - u8
        u4 = b3 - u6 - u7 - u8
        u1 = b0 - u2 - u3 - u4 - u5 - u6 - u7 - u8
        if min(u1, u2, u3, u4) >= 0:
            count += 1
    return count


# u1 = -1 + u5 + u6 + u7 + 2*u8 along the whole path, so the all-zero choice of the free
# coordinates is never a solution
@pytest.mark.parametrize('k, count', [(0, 5), (10, 1945)])
def test_benchmark_fiber_counts(A48, k, count):
    fiber = enumerate_fiber(A48, _endpoint(k))
    assert len(fiber) == count
    assert _loop_count(_endpoint(k)) == count


def test_loop_count_agrees_with_the_enumerator(A48):
    for k in range(8):
        assert len(enumerate_fiber(A48, _endpoint(k))) == _loop_count(_endpoint(k))


@pytest.mark.slow
def test_benchmark_fiber_count_at_k20(A48):
    assert len(enumerate_fiber(A48, _endpoint(20))) == 18435
    assert _loop_count(_endpoint(20)) == 18435


def test_fiber_points_solve_the_system(A48):
    beta = _endpoint(3)
    fiber = enumerate_fiber(A48, beta)
    assert len(set(fiber)) == len(fiber)
    for u in fiber:
        assert min(u) >= 0
        assert A48.apply(u) == beta


def test_threads_do_not_change_the_fiber(A48):
    beta = _endpoint(4)
    assert enumerate_fiber(A48, beta, threads=4) == enumerate_fiber(A48, beta, threads=1)


def test_small_fibers(A34):
    assert sorted(enumerate_fiber(A34, (3, 2, 1))) == [(0, 2, 1, 0), (1, 1, 0, 1)]
    assert enumerate_fiber(A34, (0, 0, 0)) == [(0, 0, 0, 0)]
    one_by_two = ConfigMatrix(((1, 1),))
    assert sorted(enumerate_fiber(one_by_two, (5,))) == [(i, 5 - i) for i in range(6)]


def test_empty_fibers(A34):
    assert enumerate_fiber(A34, (1, 2, 0)) == []
    assert enumerate_fiber(A34, (-1, 0, 0)) == []
    assert list(iter_fiber(A34, (2, 0, 3))) == []
    assert first_solution(A34, (1, 2, 0)) is None
    assert is_member(A34, (2, 1, 1))
    assert is_member(A34, (1, 1, 1))


def test_negative_matrix_is_refused():
    A = ConfigMatrix(((1, 1), (-1, 0)), allow_negative=True)
    with pytest.raises(ValueError):
        enumerate_fiber(A, (2, -1))
