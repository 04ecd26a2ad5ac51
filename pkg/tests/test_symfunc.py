'''
Tests for the six-point symmetric functions
Startup: python -m pytest tests/test_symfunc.py -v
'''
import os
import sys

import numpy as np
import pytest
from sympy import QQ

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from polynomial import VariableSpace
from symfunc import (SixPoint, elementary_symmetric, igusa_member, monic_from_roots_disc, power_sum,
                     random_point, symbolic_discriminant_identity, vandermonde_disc)

ON_QUARTIC = SixPoint(1, 1, -1, -1, 0, 0)
STANDARD = SixPoint(0, 1, 2, 3, 4, 5)


def test_igusa_membership():
    assert igusa_member(ON_QUARTIC), '(sum x^2)^2 = 16 = 4 * 4'
    assert not igusa_member(SixPoint(1, -1, 0, 0, 0, 0)), '4 != 8'
    assert igusa_member(SixPoint(0, 0, 0, 0, 0, 0))
    assert not igusa_member(SixPoint(1, 1, 1, 1, 1, 1)), 'Zero sum is required'


def test_igusa_symmetries():
    rng = np.random.default_rng(3)
    for _ in range(10):
        order = rng.permutation(6)
        assert igusa_member(ON_QUARTIC.permuted(order))
        assert igusa_member(ON_QUARTIC.permuted(order).negated())


def test_vandermonde_values():
    assert vandermonde_disc(STANDARD) == 34560 ** 2
    assert vandermonde_disc(SixPoint(1, 2, 3, 1, 5, 6)) == 0
    rng = np.random.default_rng(4)
    p = random_point(rng)
    assert vandermonde_disc(p) == vandermonde_disc(p.permuted(rng.permutation(6)))


def test_discriminant_routes_agree():
    assert monic_from_roots_disc(STANDARD) == 34560 ** 2
    assert monic_from_roots_disc(SixPoint(1, 1, 2, 3, 4, 5)) == 0
    rng = np.random.default_rng(9)
    for _ in range(20):
        p = random_point(rng)
        assert vandermonde_disc(p) == monic_from_roots_disc(p), f'Routes disagree at {list(p)}'
    print('vandermonde cross-check passed')


@pytest.mark.parametrize('n', [2, 3, 4])
def test_symbolic_identity(n):
    assert symbolic_discriminant_identity(n)


def test_symmetric_functions():
    assert elementary_symmetric(ON_QUARTIC, 1) == 0
    assert power_sum(ON_QUARTIC, 2) == 4
    assert elementary_symmetric(STANDARD, 6) == 0
    assert elementary_symmetric(SixPoint(1, 1, 1, 1, 1, 1), 3) == 20
    with pytest.raises(ValueError):
        elementary_symmetric(STANDARD, 7)
    with pytest.raises(ValueError):
        power_sum(STANDARD, 0)


def test_newton_identity():
    rng = np.random.default_rng(12)
    for _ in range(20):
        p = random_point(rng)
        e1, e2 = elementary_symmetric(p, 1), elementary_symmetric(p, 2)
        assert power_sum(p, 2) == e1 * power_sum(p, 1) - 2 * e2


def test_symbolic_inputs():
    a, b, c = VariableSpace(['a', 'b', 'c']).gens()
    disc = vandermonde_disc([a, b, c])
    assert disc == ((a - b) * (a - c) * (b - c)) ** 2
    assert disc.total_degree() == 6 and disc.is_quasi_homogeneous()
    e2 = elementary_symmetric(None, 2)
    assert len(e2) == 15
    assert SixPoint('1/2', 0, 0, 0, 0, 0).coords[0] == QQ(1, 2)


def test_six_coordinates_required():
    with pytest.raises(ValueError):
        SixPoint(1, 2, 3)
    with pytest.raises(ValueError):
        SixPoint([0] * 7)
    with pytest.raises(ValueError):
        power_sum(STANDARD, 7)
    assert power_sum(STANDARD, 6) == sum(i ** 6 for i in range(6))
