'''
Graded ring module
Hilbert series of weighted presentations: complete-intersection expansion
against direct enumeration of normal-form monomials
'''

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

from config import DEFAULT_TRUNCATION

logger = logging.getLogger(__name__)


class TruncationMismatchError(ValueError):
    '''Series compared at different truncation orders'''


class PresentationError(ValueError):
    '''Invalid weights, or relations the counting oracle cannot enumerate'''


@dataclass(frozen=True)
class WeightedPresentation:
    '''
    Free generators, square-root generators s (relation s^2 = Delta of weight 2w(s))
    and abstract relation weights
    '''
    name: str
    free_weights: Tuple[int, ...]
    sqrt_weights: Tuple[int, ...] = ()
    relation_weights: Tuple[int, ...] = ()

    def __post_init__(self):
        for w in self.free_weights + self.sqrt_weights + self.relation_weights:
            if int(w) <= 0:
                raise PresentationError(f'Weights must be positive, got {w} in {self.name}')

    @property
    def generator_weights(self) -> Tuple[int, ...]:
        return tuple(sorted(self.free_weights + self.sqrt_weights))

    @property
    def all_relation_weights(self) -> Tuple[int, ...]:
        return tuple(sorted(tuple(2 * w for w in self.sqrt_weights) + self.relation_weights))

    def with_sqrt(self, weight: int) -> 'WeightedPresentation':
        return WeightedPresentation(f'{self.name}+s{weight}', self.free_weights,
                                    self.sqrt_weights + (weight,), self.relation_weights)

    def to_dict(self) -> dict:
        return {'name': self.name, 'generators': list(self.generator_weights),
                'relations': list(self.all_relation_weights)}


@dataclass(frozen=True, eq=False)
class PowerSeries:
    '''Integer power series truncated at order N (coefficients c_0..c_N)'''
    coeffs: np.ndarray

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.order, tuple(self.to_list())))

    @classmethod
    def one(cls, N: int) -> 'PowerSeries':
        c = np.zeros(N + 1, dtype=np.int64)
        c[0] = 1
        return cls(c)

    @classmethod
    def from_polynomial(cls, exponents: Dict[int, int], N: int) -> 'PowerSeries':
        c = np.zeros(N + 1, dtype=np.int64)
        for k, v in exponents.items():
            if k <= N:
                c[k] += v
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return int(self.coeffs[k])

    def __mul__(self, other: 'PowerSeries') -> 'PowerSeries':
        if self.order != other.order:
            raise TruncationMismatchError(f'Orders {self.order} and {other.order}')
        return PowerSeries(np.convolve(self.coeffs, other.coeffs)[:self.order + 1])

    def to_list(self):
        return [int(v) for v in self.coeffs]

    def __repr__(self) -> str:
        head = ' + '.join(f'{v}T^{k}' for k, v in enumerate(self.to_list()[:8]) if v)
        return f'PowerSeries({head} + O(T^{self.order + 1}))'


def series_equal(a: PowerSeries, b: PowerSeries) -> bool:
    if a.order != b.order:
        raise TruncationMismatchError(f'Cannot compare series of orders {a.order} and {b.order}')
    return bool(np.array_equal(a.coeffs, b.coeffs))


def first_difference(a: PowerSeries, b: PowerSeries):
    '''(k, a_k, b_k) at the first differing coefficient, or None'''
    diff = np.nonzero(a.coeffs != b.coeffs)[0]
    if not len(diff):
        return None
    k = int(diff[0])
    return k, a[k], b[k]


def _divide_by_geometric(c: np.ndarray, w: int) -> np.ndarray:
    # multiplication by 1/(1 - T^w) = 1 + T^w + T^2w + ...
    c = c.copy()
    for k in range(w, len(c)):
        c[k] += c[k - w]
    return c


def hilbert_from_rational(p: WeightedPresentation, N: int = DEFAULT_TRUNCATION) -> PowerSeries:
    '''prod(1 - T^r) / prod(1 - T^w) expanded to order N'''
    if N < 0:
        raise ValueError('Truncation order must be nonnegative')
    numerator = np.array([1], dtype=np.int64)
    for r in p.all_relation_weights:
        factor = np.zeros(r + 1, dtype=np.int64)
        factor[0], factor[r] = 1, -1
        numerator = np.convolve(numerator, factor)
    c = np.zeros(N + 1, dtype=np.int64)
    head = numerator[:N + 1]
    c[:len(head)] = head
    for w in p.generator_weights:
        c = _divide_by_geometric(c, w)
    return PowerSeries(c)


def _free_monomial_weights(weights: Sequence[int], N: int) -> Iterable[int]:
    '''Weighted degree of every free monomial of degree <= N, enumerated one by one'''
    if not weights:
        yield 0
        return
    w, rest = weights[0], weights[1:]
    for e in range(N // w + 1):
        for tail in _free_monomial_weights(rest, N - e * w):
            yield e * w + tail


def hilbert_from_counting(p: WeightedPresentation, N: int = DEFAULT_TRUNCATION) -> PowerSeries:
    '''
    Counts normal-form monomials: free monomials times a squarefree product of
    square-root generators
    '''
    if p.relation_weights:
        raise PresentationError(f'{p.name}: abstract relations have no normal-form enumeration')
    if N < 0:
        raise ValueError('Truncation order must be nonnegative')
    free = np.bincount(np.fromiter(_free_monomial_weights(tuple(p.free_weights), N), dtype=np.int64),
                       minlength=N + 1)
    c = np.zeros(N + 1, dtype=np.int64)
    for size in range(len(p.sqrt_weights) + 1):
        for subset in itertools.combinations(p.sqrt_weights, size):
            shift = sum(subset)
            if shift <= N:
                c[shift:] += free[:N + 1 - shift]
    logger.debug('%s: %d normal-form monomials up to weight %d', p.name, int(c.sum()), N)
    return PowerSeries(c)


VINBERG = WeightedPresentation('vinberg', (4, 6, 8, 10, 12))
GAMMA1 = WeightedPresentation('gamma1', (4, 6, 8, 10, 12), (10,))
WITH_CHARACTERS = WeightedPresentation('characters', (4, 6, 8, 10, 12), (4, 10, 30))
PRESENTATIONS = {p.name: p for p in (WITH_CHARACTERS, GAMMA1, VINBERG)}


def character_factor_check(N: int = DEFAULT_TRUNCATION, extra_weights: Sequence[int] = (4, 30),
                           full: WeightedPresentation = WITH_CHARACTERS,
                           base: WeightedPresentation = GAMMA1) -> bool:
    '''hilbert(full) == hilbert(base) * prod(1 + T^w) up to order N'''
    rhs = hilbert_from_rational(base, N)
    for w in extra_weights:
        rhs = rhs * PowerSeries.from_polynomial({0: 1, w: 1}, N)
    return series_equal(hilbert_from_rational(full, N), rhs)


def a_invariant(p: WeightedPresentation) -> int:
    '''Sum of relation weights minus sum of generator weights (complete intersection)'''
    return sum(p.all_relation_weights) - sum(p.generator_weights)


def canonical_twist(p: WeightedPresentation) -> int:
    '''Degree d with canonical sheaf O(d) on Proj of a Gorenstein complete intersection'''
    return a_invariant(p)


def series_report(p: WeightedPresentation, N: int = DEFAULT_TRUNCATION) -> dict:
    rational = hilbert_from_rational(p, N)
    counted = hilbert_from_counting(p, N)
    return {'presentation': p.to_dict(), 'truncation': N,
            'coefficients': rational.to_list(),
            'match': series_equal(rational, counted),
            'first_difference': first_difference(rational, counted)}
