'''
Group module
Matrices over F2, form preservation and breadth-first group closure
'''

import hashlib
import logging
from collections import Counter, deque
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
from sympy.combinatorics.named_groups import SymmetricGroup

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    '''Matrices of different sizes combined'''


class NotInvertibleError(ValueError):
    '''Generator is singular over F2'''


class MatrixF2:
    '''Square matrix over the two-element field'''
    __slots__ = ('bits',)

    def __init__(self, rows):
        bits = np.asarray(rows, dtype=np.uint8) % 2
        if bits.ndim != 2 or bits.shape[0] != bits.shape[1]:
            raise DimensionMismatchError(f'Square matrix expected, got shape {bits.shape}')
        bits.setflags(write=False)
        self.bits = bits

    @classmethod
    def identity(cls, k: int) -> 'MatrixF2':
        return cls(np.eye(k, dtype=np.uint8))

    @property
    def dimension(self) -> int:
        return self.bits.shape[0]

    def __matmul__(self, other: 'MatrixF2') -> 'MatrixF2':
        if self.dimension != other.dimension:
            raise DimensionMismatchError(f'{self.dimension} vs {other.dimension}')
        return MatrixF2(self.bits.astype(np.int64) @ other.bits.astype(np.int64))

    @property
    def T(self) -> 'MatrixF2':
        return MatrixF2(self.bits.T)

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixF2) and np.array_equal(self.bits, other.bits)

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> bytes:
        return self.bits.tobytes()

    def rank(self) -> int:
        a = self.bits.copy()
        k = self.dimension
        r = 0
        for c in range(k):
            pivots = np.nonzero(a[r:, c])[0]
            if not len(pivots):
                continue
            p = r + pivots[0]
            a[[r, p]] = a[[p, r]]
            for i in range(k):
                if i != r and a[i, c]:
                    a[i] ^= a[r]
            r += 1
            if r == k:
                break
        return r

    def is_invertible(self) -> bool:
        return self.rank() == self.dimension

    def direct_sum(self, other: 'MatrixF2') -> 'MatrixF2':
        k, l = self.dimension, other.dimension
        out = np.zeros((k + l, k + l), dtype=np.uint8)
        out[:k, :k] = self.bits
        out[k:, k:] = other.bits
        return MatrixF2(out)

    def content_hash(self) -> str:
        return hashlib.sha256(bytes([self.dimension]) + self.key()).hexdigest()

    def to_rows(self):
        return self.bits.tolist()

    def __repr__(self) -> str:
        return f'MatrixF2({self.to_rows()})'


U = MatrixF2([[0, 1], [1, 0]])
I2 = MatrixF2.identity(2)
GRAM = U.direct_sum(U)


def preserves_form(M: MatrixF2, G: MatrixF2) -> bool:
    '''M^T G M == G'''
    if M.dimension != G.dimension:
        raise DimensionMismatchError(f'Matrix of size {M.dimension}, form of size {G.dimension}')
    return M.T @ G @ M == G


@dataclass(frozen=True)
class GroupClosure:
    generators: tuple
    elements: frozenset
    order: int
    histogram: Dict[int, int]

    def contains(self, M: MatrixF2) -> bool:
        return M in self.elements

    def report(self) -> dict:
        return {'dimension': self.generators[0].dimension if self.generators else 0,
                'generator_hashes': [g.content_hash() for g in self.generators],
                'order': self.order,
                'histogram': {str(k): v for k, v in sorted(self.histogram.items())}}


def element_order(M: MatrixF2) -> int:
    identity = MatrixF2.identity(M.dimension)
    power, n = M, 1
    while power != identity:
        power = power @ M
        n += 1
    return n


def generate_group(gens: Sequence[MatrixF2]) -> GroupClosure:
    '''Breadth-first closure of the generators under right multiplication'''
    if not gens:
        raise ValueError('At least one generator is required')
    k = gens[0].dimension
    for g in gens:
        if g.dimension != k:
            raise DimensionMismatchError(f'Generators of sizes {k} and {g.dimension}')
        if not g.is_invertible():
            raise NotInvertibleError(f'Singular generator {g!r}')
    identity = MatrixF2.identity(k)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for g in gens:
            product = current @ g
            if product not in seen:
                seen.add(product)
                queue.append(product)
    histogram = Counter(element_order(M) for M in seen)
    logger.info('Closure of %d generators in dimension %d: order %d', len(gens), k, len(seen))
    return GroupClosure(tuple(gens), frozenset(seen), len(seen), dict(sorted(histogram.items())))


def symmetric_histogram(n: int = 6) -> Dict[int, int]:
    '''Element-order histogram of S_n, tabulated over every permutation'''
    counts = Counter(perm.order() for perm in SymmetricGroup(n).generate())
    return dict(sorted(counts.items()))


def s6_signature_check(c: GroupClosure) -> bool:
    return c.order == 720 and c.histogram == symmetric_histogram(6)


DISPLAYED_GENERATORS = (
    MatrixF2([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    U.direct_sum(I2),
    MatrixF2([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]),
    I2.direct_sum(U),
    MatrixF2([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]),
)

# transvection x -> x + <x, e1+e3> (e1+e3); replaces the coordinate swap 2 <-> 3
MIXING_TRANSVECTION = MatrixF2([[1, 1, 0, 1], [0, 1, 0, 0], [0, 1, 1, 1], [0, 0, 0, 1]])

SYMPLECTIC_GENERATORS = DISPLAYED_GENERATORS[:2] + (MIXING_TRANSVECTION,) + DISPLAYED_GENERATORS[3:]

TAU = MatrixF2.identity(4).direct_sum(U)


def transvection(v: Sequence[int], G: MatrixF2 = GRAM) -> MatrixF2:
    '''Symplectic transvection along v for the alternating form G'''
    v = np.asarray(v, dtype=np.int64) % 2
    # column j is e_j + <e_j, v> v
    coupling = (G.bits.astype(np.int64) @ v) % 2
    return MatrixF2(np.eye(len(v), dtype=np.int64) + np.outer(v, coupling))


def extension_6x6(gens: Sequence[MatrixF2] = SYMPLECTIC_GENERATORS) -> List[MatrixF2]:
    '''Each generator padded by eta_2 = I_2, together with tau = I_4 + U'''
    return [g.direct_sum(I2) for g in gens] + [TAU]


def audit_generators(gens: Sequence[MatrixF2] = DISPLAYED_GENERATORS, G: MatrixF2 = GRAM) -> List[dict]:
    '''Form preservation of each generator, with the failing product for a counterexample'''
    audit = []
    for i, g in enumerate(gens):
        ok = preserves_form(g, G)
        entry = {'index': i, 'preserves_form': ok}
        if not ok:
            entry['MtGM'] = (g.T @ G @ g).to_rows()
        audit.append(entry)
    return audit


def is_central(M: MatrixF2, gens: Sequence[MatrixF2]) -> bool:
    return all(M @ g == g @ M for g in gens)
