from fractions import Fraction
import os

import numpy as np
import pytest

from ahg_hgm import settings
from ahg_hgm.items import ConfigMatrix, ProblemFile

PROBLEMS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'problems')

Z_BENCH = Fraction(30318066527332447242457, 89619251224349337722522492794306560000)
E_U8_BENCH = Fraction(52047189429143224956864, 30318066527332447242457)


def problem_path(name):
    return os.path.join(PROBLEMS, name)


def random_config(rng, d, n, top=2):
    """A d x n matrix with a row of ones and other entries in 0..top, or None if rank < d."""
    rows = [(1,) * n] + [tuple(int(v) for v in rng.integers(0, top + 1, size=n)) for _ in range(d - 1)]
    try:
        return ConfigMatrix(tuple(rows))
    except ValueError:
        return None


@pytest.fixture
def A34():
    return ConfigMatrix(((1, 1, 1, 1), (0, 1, 0, 1), (0, 0, 1, 1)))


@pytest.fixture
def A48():
    return ConfigMatrix((
        (1, 1, 1, 1, 1, 1, 1, 1),
        (0, 1, 0, 0, 1, 1, 0, 1),
        (0, 0, 1, 0, 1, 0, 1, 1),
        (0, 0, 0, 1, 0, 1, 1, 1),
    ))


@pytest.fixture
def X34():
    return (Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1))


@pytest.fixture
def example_problem():
    return ProblemFile.load(problem_path('example_3x4.json'))


@pytest.fixture
def bench_problem():
    return ProblemFile.load(problem_path('c111c.json'))


@pytest.fixture
def rng():
    return np.random.default_rng(20140409)


@pytest.fixture
def small_t_cap(monkeypatch):
    monkeypatch.setattr(settings, 'T_CAP', 4)
    return 4


@pytest.fixture
def log_dir(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, 'LOG_DIR', str(tmp_path / 'logs'))
    monkeypatch.setattr(settings, 'LOG_FILE', str(tmp_path / 'logs' / 'ahg_hgm.log'))
    return tmp_path
