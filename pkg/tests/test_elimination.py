'''
Tests for determinants, resultants and discriminants
Startup: python -m pytest tests/test_elimination.py -v
'''
import os
import sys

import numpy as np
import pytest
from sympy import QQ

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from elimination import (XW_SPACE, DegreeError, DimensionGuardError, NotSquareError, PolyMatrix,
                         bareiss_det, binary_discriminant, cofactor_det, discriminant_via_partials,
                         partials_constant, resultant, sylvester_matrix)
from polynomial import VariableSpace

XY = VariableSpace(['x', 'y'])
X = VariableSpace(['x'])
ABC = VariableSpace(['a', 'b', 'c', 'x', 'w'], [1, 1, 1, 0, 0])


def random_entry(rng):
    x, y = XY.gens()
    a, b, c = (int(v) for v in rng.integers(-3, 4, size=3))
    return a * x + b * y + c


def random_binary_form(rng, n):
    x, w = XW_SPACE.gens()
    coeffs = [int(v) for v in rng.integers(-9, 10, size=n + 1)]
    coeffs[n] = coeffs[n] or 1
    return sum((c * x ** i * w ** (n - i) for i, c in enumerate(coeffs)), XW_SPACE.zero())


def test_bareiss_matches_cofactor_oracle():
    '''100 random 4x4 matrices with linear entries'''
    rng = np.random.default_rng(11)
    for _ in range(100):
        M = PolyMatrix(4, 4, [random_entry(rng) for _ in range(16)], XY)
        assert bareiss_det(M) == cofactor_det(M), 'Bareiss and cofactor expansion disagree'
    print('determinant oracle test passed')


def test_bareiss_pivoting_and_zero_determinant():
    x, y = XY.gens()
    swapped = PolyMatrix.from_rows([[0, x], [y, 0]], XY)
    assert bareiss_det(swapped) == -x * y, 'Row swap must flip the sign'
    zero_column = PolyMatrix.from_rows([[0, x, 1], [0, y, 2], [0, 1, x]], XY)
    assert bareiss_det(zero_column).is_zero()
    assert bareiss_det(PolyMatrix.identity(5, XY)) == XY.one()


def test_determinant_errors():
    with pytest.raises(NotSquareError):
        bareiss_det(PolyMatrix(2, 3, [0] * 6, XY))
    with pytest.raises(DimensionGuardError):
        cofactor_det(PolyMatrix.identity(9, XY))


def test_sylvester_resultants():
    x = X.gen('x')
    assert resultant(x ** 2 - 1, x - 1, 'x', 2, 1).is_zero(), 'Common root must give zero'
    assert resultant(x ** 2 + 1, x, 'x', 2, 1) == X.one()
    M = sylvester_matrix(x ** 2 + 1, x, 'x', 2, 1)
    assert (M.rows, M.cols) == (3, 3)
    with pytest.raises(DegreeError):
        sylvester_matrix(x ** 3, x, 'x', 2, 1)


def test_quadratic_discriminant_both_routes():
    a, b, c, x, w = ABC.gens()
    f = a * x ** 2 + b * x * w + c * w ** 2
    expected = b ** 2 - 4 * a * c
    assert binary_discriminant(f, 'x', 'w', 2, method='direct') == expected
    assert binary_discriminant(f, 'x', 'w', 2, method='generic') == expected


def test_cubic_discriminant():
    space = VariableSpace(['p', 'q', 'x', 'w'], [2, 3, 0, 0])
    p, q, x, w = space.gens()
    f = x ** 3 + p * x * w ** 2 + q * w ** 3
    assert binary_discriminant(f, 'x', 'w', 3) == -4 * p ** 3 - 27 * q ** 2


@pytest.mark.parametrize('n', [2, 3, 4, 5])
def test_discriminant_routes_agree(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(5):
        f = random_binary_form(rng, n)
        direct = binary_discriminant(f, 'x', 'w', n, method='direct')
        generic = binary_discriminant(f, 'x', 'w', n, method='generic')
        assert direct == generic, f'Routes disagree in degree {n} for {f}'


@pytest.mark.slow
def test_discriminant_routes_agree_sextic():
    rng = np.random.default_rng(106)
    for _ in range(3):
        f = random_binary_form(rng, 6)
        assert (binary_discriminant(f, 'x', 'w', 6, method='direct')
                == binary_discriminant(f, 'x', 'w', 6, method='generic'))


def test_discriminant_of_monic_with_known_roots():
    '''prod (x - r w) over r = 0, 1, 2 has discriminant (1*2*1)^2 = 4'''
    x, w = XW_SPACE.gens()
    f = x * (x - w) * (x - 2 * w)
    assert binary_discriminant(f, 'x', 'w', 3).constant_value() == 4


def test_partials_route():
    assert partials_constant(2) == -1
    rng = np.random.default_rng(7)
    for n in (3, 4):
        ratio = partials_constant(n)
        for _ in range(3):
            f = random_binary_form(rng, n)
            assert discriminant_via_partials(f, 'x', 'w', n) == binary_discriminant(f, 'x', 'w', n).scale(ratio)


def test_degree_errors():
    x, w = XW_SPACE.gens()
    with pytest.raises(DegreeError):
        binary_discriminant(x ** 2 + w, 'x', 'w', 2)
    with pytest.raises(DegreeError):
        binary_discriminant(x * w + w ** 2, 'x', 'w', 2)
    with pytest.raises(DegreeError):
        discriminant_via_partials(x, 'x', 'w', 1)


def random_in_x(rng, degree):
    '''Polynomial of exact degree `degree` in x with coefficients linear in y'''
    x, y = XY.gens()
    f = XY.zero()
    for i in range(degree + 1):
        a, b = (int(v) for v in rng.integers(-4, 5, size=2))
        if i == degree and a == 0:
            a = 1
        f = f + (a + b * y) * x ** i
    return f


def generic_form(n):
    names = [f'a_{i}' for i in range(n + 1)]
    space = VariableSpace(names + ['x', 'w'], [1] * (n + 1) + [0, 0])
    x, w = space.gen('x'), space.gen('w')
    return sum((space.gen(a) * x ** i * w ** (n - i) for i, a in enumerate(names)), space.zero())


def test_resultant_antisymmetry():
    '''Res(f, g) = (-1)^(mn) Res(g, f)'''
    rng = np.random.default_rng(21)
    for m, n in [(1, 1), (2, 1), (2, 3), (3, 3)]:
        for _ in range(3):
            f, g = random_in_x(rng, m), random_in_x(rng, n)
            sign = -1 if (m * n) % 2 else 1
            assert resultant(f, g, 'x', m, n) == sign * resultant(g, f, 'x', n, m), \
                f'Antisymmetry fails for degrees {m}, {n}'


def test_resultant_commutes_with_specialization():
    rng = np.random.default_rng(22)
    for _ in range(10):
        f, g = random_in_x(rng, 3), random_in_x(rng, 2)
        y0 = QQ(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
        lhs = resultant(f, g, 'x', 3, 2).substitute({'y': y0})
        rhs = resultant(f.substitute({'y': y0}), g.substitute({'y': y0}), 'x', 3, 2)
        assert lhs == rhs, f'Specialization at y = {y0} does not commute with Res'


def test_repeated_factor_kills_discriminant():
    '''(x - w)^2 times a generic quadratic has identically zero discriminant'''
    a, b, c, x, w = ABC.gens()
    f = (x - w) ** 2 * (a * x ** 2 + b * x * w + c * w ** 2)
    assert binary_discriminant(f, 'x', 'w', 4, method='generic').is_zero()
    assert binary_discriminant(f, 'x', 'w', 4, method='direct').is_zero()


def test_pure_power_has_zero_discriminant():
    x, w = XW_SPACE.gens()
    for n in (2, 3, 4):
        assert binary_discriminant(x ** n, 'x', 'w', n).is_zero(), f'Disc(x^{n}) must vanish'


def test_partials_constants():
    expected = {2: -1, 3: -3, 4: 16, 5: 125, 6: -1296}
    for n, value in expected.items():
        assert partials_constant(n) == value, f'Partials constant for degree {n}'


@pytest.mark.parametrize('n', [2, 3, 4])
def test_partials_route_on_generic_forms(n):
    f = generic_form(n)
    assert discriminant_via_partials(f, 'x', 'w', n) == \
        binary_discriminant(f, 'x', 'w', n).scale(partials_constant(n))


@pytest.mark.slow
@pytest.mark.parametrize('n', [5, 6])
def test_partials_route_on_generic_forms_high_degree(n):
    f = generic_form(n)
    assert discriminant_via_partials(f, 'x', 'w', n) == \
        binary_discriminant(f, 'x', 'w', n).scale(partials_constant(n))
