'''
Tests for the sparse polynomial kernel
Startup: python -m pytest tests/test_polynomial.py -v
'''
import os
import sys

import numpy as np
import pytest
from sympy import QQ

sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from polynomial import (CacheFormatError, NotDivisibleError, ParseError, SpaceMismatchError,
                        UnboundVariableError, VariableSpace, from_binary, mul_schoolbook, parse, product)

XY = VariableSpace(['x', 'y'])
XYZ = VariableSpace(['x', 'y', 'z'], [1, 2, 3])


def random_poly(rng, space, terms=5, degree=3):
    out = {}
    for _ in range(terms):
        m = tuple(int(e) for e in rng.integers(0, degree + 1, size=len(space)))
        out[m] = int(rng.integers(-5, 6))
    return space.from_dict(out)


def test_ring_axioms():
    '''Associativity, distributivity and commutativity on random polynomials'''
    rng = np.random.default_rng(1)
    for _ in range(30):
        f, g, h = (random_poly(rng, XYZ) for _ in range(3))
        assert (f + g) + h == f + (g + h), 'Addition is not associative'
        assert f * (g + h) == f * g + f * h, 'Multiplication does not distribute'
        assert f * g == g * f, 'Multiplication is not commutative'
        assert (f - f).is_zero(), 'f - f is not zero'
    print('ring axioms test passed')


def test_exact_div_recovers_factor():
    rng = np.random.default_rng(2)
    for _ in range(30):
        f, g = random_poly(rng, XYZ), random_poly(rng, XYZ)
        if g.is_zero():
            continue
        assert (f * g).exact_div(g) == f, f'(f*g)/g != f for g = {g}'


def test_schoolbook_agrees_with_default_product():
    rng = np.random.default_rng(3)
    for _ in range(20):
        f, g = random_poly(rng, XY), random_poly(rng, XY)
        assert mul_schoolbook(f, g) == f * g, 'Schoolbook product differs'


def test_not_divisible_reports_monomial():
    '''x^2 + 1 is not a multiple of x: the leftover is the constant term'''
    x = XY.gen('x')
    with pytest.raises(NotDivisibleError) as err:
        (x ** 2 + 1).exact_div(x)
    assert err.value.monomial == (0, 0)


def test_division_by_zero_polynomial():
    with pytest.raises(ZeroDivisionError):
        XY.gen('x').exact_div(XY.zero())


def test_space_mismatch():
    with pytest.raises(SpaceMismatchError):
        XY.gen('x') + XYZ.gen('x')


def test_canonical_text():
    x, y = XY.gens()
    assert parse('x^2 - 1', XY).to_text() == 'x^2 - 1'
    assert ((x + y) ** 2).to_text() == 'x^2 + 2*x*y + y^2'
    assert (x.scale(QQ(-3, 2)) + 5).to_text() == '-3/2*x + 5'
    assert XY.zero().to_text() == '0'


def test_text_round_trip():
    rng = np.random.default_rng(4)
    for _ in range(10):
        f = random_poly(rng, XYZ).scale(QQ(int(rng.integers(1, 9)), int(rng.integers(1, 9))))
        assert parse(f.to_text(), XYZ) == f, f'Text round trip failed for {f.to_text()}'


def test_integer_text_form():
    x, y = XY.gens()
    f = 6 * x + 4 * y
    assert f.to_text(integer=True) == '2 * (3*x + 2*y)'
    assert parse(f.to_text(integer=True), XY) == f


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as err:
        parse('x + * y', XY)
    assert err.value.position == 4
    with pytest.raises(ParseError) as err:
        parse('x + q', XY)
    assert err.value.position == 4


def test_binary_form():
    x, y = XY.gens()
    f = x ** 3 * y.scale(QQ(-7, 3)) + 2 ** 70 * y ** 2 - 1
    assert from_binary(f.to_binary(), XY) == f, 'Binary form does not decode to the same polynomial'
    with pytest.raises(CacheFormatError):
        from_binary(b'XXXX' + f.to_binary()[4:], XY)
    with pytest.raises(CacheFormatError):
        from_binary(f.to_binary()[:-3], XY)


def test_weighted_degree_and_homogeneity():
    x, y, z = XYZ.gens()
    assert (x * y * z).weighted_degree() == 6
    assert (x ** 3 + x * y + z).is_quasi_homogeneous()
    assert not (x + y).is_quasi_homogeneous()
    assert XYZ.zero().weighted_degree() is None


def test_substitute_and_evaluate():
    x, y = XY.gens()
    f = x ** 2 + y
    assert f.substitute({'x': y + 1}) == y ** 2 + 3 * y + 1
    assert f.evaluate({'x': QQ(1, 2), 'y': 3}) == QQ(13, 4)
    only_x = VariableSpace(['x'])
    with pytest.raises(UnboundVariableError):
        f.substitute({'x': only_x.gen('x')}, only_x)
    with pytest.raises(UnboundVariableError):
        f.evaluate({'x': 1})


def test_normal_form():
    '''-x/2 + y/3 = (-1/6) * (3x - 2y)'''
    x, y = XY.gens()
    scale, p = (x.scale(QQ(-1, 2)) + y.scale(QQ(1, 3))).normalized()
    assert scale == QQ(-1, 6)
    assert p == 3 * x - 2 * y
    assert p.is_primitive()


def test_diff_and_coefficients():
    x, y = XY.gens()
    f = x ** 2 * y + 3 * x
    assert f.diff('x') == 2 * x * y + 3
    parts = f.coefficients('x')
    assert parts == {2: y, 1: XY.constant(3)}


def test_hash_independent_of_construction_order():
    x, y = XY.gens()
    f = product([x + 1, y - 2], XY)
    g = x * y - 2 * x + y - 2
    assert f == g and f.content_hash() == g.content_hash()


def quasi_homogeneous(rng, space, degree):
    '''Random polynomial whose terms all have the given weighted degree'''
    bound = degree + 1
    out = {}
    for m in np.ndindex(*(bound // max(w, 1) + 1 for w in space.weights)):
        if space.monomial_weight(m) == degree:
            out[m] = int(rng.integers(1, 7)) * (1 if rng.integers(0, 2) else -1)
    return space.from_dict(out)


def test_thousand_term_round_trip():
    '''Every monomial x^i y^j z^k with i, j, k < 10, with rational coefficients'''
    rng = np.random.default_rng(5)
    terms = {m: QQ(int(rng.integers(1, 50)) * (1 if rng.integers(0, 2) else -1), int(rng.integers(1, 12)))
             for m in np.ndindex(10, 10, 10)}
    f = XYZ.from_dict(terms)
    assert len(f) == 1000
    assert parse(f.serialize().decode('utf-8'), XYZ) == f, 'Text round trip lost terms'
    assert from_binary(f.to_binary(), XYZ) == f, 'Binary round trip lost terms'


def test_weighted_degree_is_additive():
    rng = np.random.default_rng(6)
    for d1, d2 in [(3, 4), (6, 5), (2, 9)]:
        f, g = quasi_homogeneous(rng, XYZ, d1), quasi_homogeneous(rng, XYZ, d2)
        assert f.is_quasi_homogeneous() and g.is_quasi_homogeneous()
        assert (f * g).weighted_degree() == d1 + d2, f'wdeg(f*g) != {d1} + {d2}'
        assert (f * g).is_quasi_homogeneous()


def test_identity_substitution():
    rng = np.random.default_rng(8)
    identity = {name: XYZ.gen(name) for name in XYZ.names}
    for _ in range(10):
        f = random_poly(rng, XYZ)
        assert f.substitute(identity) == f, 'Identity bindings changed the polynomial'


def test_cube_of_binary_quadratic():
    '''(a x^2 + b x w + c w^2)^3 has 10 terms; x^4 w^2 carries 3a^2 c + 3a b^2'''
    space = VariableSpace(['a', 'b', 'c', 'x', 'w'], [1, 1, 1, 0, 0])
    a, b, c, x, w = space.gens()
    q = a * x ** 2 + b * x * w + c * w ** 2
    cube = q ** 3
    assert len(cube) == 10
    assert cube == mul_schoolbook(mul_schoolbook(q, q), q), 'Power differs from repeated schoolbook products'
    assert cube.coefficients('x')[4] == (3 * a ** 2 * c + 3 * a * b ** 2) * w ** 2


def test_exact_division_examples():
    x, y = XY.gens()
    assert (x ** 2 - 1).exact_div(x - 1) == x + 1
    with pytest.raises(NotDivisibleError) as err:
        (x ** 2 + 1).exact_div(x + 1)
    assert err.value.monomial == (0, 0), 'Remainder 2 leads with the constant monomial'
    assert not (x ** 2 + 1).divides_by(x + 1)
    assert (x ** 2 * y - y).divides_by(x + 1)


def test_content_and_partial_evaluation():
    x, y, z = XYZ.gens()
    f = x.scale(QQ(4, 3)) - y.scale(QQ(2, 9))
    assert f.content() == QQ(2, 9)
    assert (-f).content() == QQ(2, 9), 'Content is positive'
    assert (x ** 2 + 1).evaluate({'x': 3}) == 10, 'Variables that do not occur need no value'


def test_comparison_with_foreign_values():
    x = XY.gen('x')
    assert not (x == 'not a number')
    assert x != 'not a number'
    assert XY.constant(3) == 3


if __name__ == '__main__':
    test_ring_axioms()
    test_exact_div_recovers_factor()
    test_canonical_text()
    print('all polynomial tests passed!')
