'''
Symmetric functions module
Igusa quartic membership, Vandermonde discriminant and its agreement with
the discriminant of the monic polynomial with given roots
'''

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Optional, Sequence, Union

import numpy as np
from sympy import QQ

from elimination import XW_SPACE, binary_discriminant
from polynomial import Polynomial, VariableSpace, to_rational

X_SPACE = VariableSpace([f'x_{i}' for i in range(1, 7)], [1] * 6)
POINTS = 6


@dataclass(frozen=True)
class SixPoint:
    '''A configuration x_1..x_6 of exact rationals'''
    coords: tuple

    def __init__(self, *coords):
        if len(coords) == 1 and not isinstance(coords[0], (int, str)) and hasattr(coords[0], '__len__'):
            coords = tuple(coords[0])
        if len(coords) != POINTS:
            raise ValueError(f'A six-point configuration needs {POINTS} coordinates, got {len(coords)}')
        object.__setattr__(self, 'coords', tuple(to_rational(c) for c in coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def permuted(self, order: Sequence[int]) -> 'SixPoint':
        return SixPoint([self.coords[i] for i in order])

    def negated(self) -> 'SixPoint':
        return SixPoint([-c for c in self.coords])


Point = Optional[Union[SixPoint, Sequence]]


def _values(p: Point):
    if p is None:
        return list(X_SPACE.gens())
    if isinstance(p, SixPoint):
        return list(p)
    values = list(p)
    if any(isinstance(v, Polynomial) for v in values):
        return values
    return list(SixPoint(values))


def power_sum(p: Point, i: int):
    if not 1 <= i <= POINTS:
        raise ValueError(f'Power sums are indexed 1..{POINTS}, got {i}')
    values = _values(p)
    return reduce(lambda a, b: a + b, (v ** i for v in values))


def elementary_symmetric(p: Point, i: int):
    values = _values(p)
    if not 1 <= i <= len(values):
        raise ValueError(f'Index {i} outside 1..{len(values)}')
    total = None
    for subset in combinations(values, i):
        term = reduce(lambda a, b: a * b, subset)
        total = term if total is None else total + term
    return total


def igusa_member(p: Point) -> bool:
    '''Zero-sum point on (sum x^2)^2 = 4 sum x^4'''
    if power_sum(p, 1) != 0:
        return False
    return power_sum(p, 2) ** 2 == 4 * power_sum(p, 4)


def vandermonde_disc(p: Point = None):
    '''prod over i < j of (x_i - x_j)^2; a Polynomial over X_SPACE when p is None'''
    values = _values(p)
    return reduce(lambda a, b: a * b, ((a - b) ** 2 for a, b in combinations(values, 2)))


def monic_from_roots(p: Point, space: VariableSpace = XW_SPACE) -> Polynomial:
    '''Binary form prod(x - r_i w)'''
    x, w = space.gen('x'), space.gen('w')
    form = space.one()
    for r in _values(p):
        form = form * (x - w * r)
    return form


def monic_from_roots_disc(p: Point):
    values = _values(p)
    disc = binary_discriminant(monic_from_roots(values), 'x', 'w', len(values), method='direct')
    return disc.constant_value()


def symbolic_discriminant_identity(n: int) -> bool:
    '''Disc(prod(x - r_i w)) == prod (r_i - r_j)^2 as polynomials in r_1..r_n'''
    roots = [f'r_{i}' for i in range(1, n + 1)]
    space = VariableSpace(roots + ['x', 'w'], [1] * n + [0, 0])
    gens = [space.gen(r) for r in roots]
    disc = binary_discriminant(monic_from_roots(gens, space), 'x', 'w', n, method='generic')
    return disc == vandermonde_disc(gens)


def random_point(rng: np.random.Generator, box: int = 20) -> SixPoint:
    numerators = rng.integers(-box, box + 1, size=POINTS)
    denominators = rng.integers(1, 10, size=POINTS)
    return SixPoint([QQ(int(a), int(b)) for a, b in zip(numerators, denominators)])
