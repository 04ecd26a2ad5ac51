'''
Elimination module
Contains PolyMatrix, fraction-free (Bareiss) and cofactor determinants,
Sylvester resultants and discriminants of binary forms
'''

import logging
import time
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from polynomial import Polynomial, SpaceMismatchError, VariableSpace

logger = logging.getLogger(__name__)

COFACTOR_LIMIT = 8
XW_SPACE = VariableSpace(['x', 'w'], [1, 1])


class NotSquareError(ValueError):
    '''Determinant of a non-square matrix'''


class DegreeError(ValueError):
    '''Actual degree disagrees with a declared degree'''


class DimensionGuardError(ValueError):
    '''Cofactor expansion refused above COFACTOR_LIMIT'''


class PolyMatrix:
    '''Dense row-major matrix with Polynomial entries over one space'''
    def __init__(self, rows: int, cols: int, entries: Sequence, space: VariableSpace):
        if rows <= 0 or cols <= 0:
            raise ValueError(f'Matrix dimensions must be positive: {rows}x{cols}')
        if len(entries) != rows * cols:
            raise ValueError(f'Expected {rows * cols} entries, got {len(entries)}')
        converted = []
        for e in entries:
            if isinstance(e, Polynomial):
                if e.space != space:
                    raise SpaceMismatchError(f'Entry over {e.space!r}, matrix over {space!r}')
                converted.append(e)
            else:
                converted.append(space.constant(e))
        self.rows = rows
        self.cols = cols
        self.space = space
        self.entries = tuple(converted)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], space: Optional[VariableSpace] = None) -> 'PolyMatrix':
        if not rows:
            raise ValueError('Empty matrix')
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError('Ragged rows')
        if space is None:
            found = [e.space for r in rows for e in r if isinstance(e, Polynomial)]
            if not found:
                raise ValueError('Cannot infer the variable space of a constant matrix')
            space = found[0]
        return cls(len(rows), width, [e for r in rows for e in r], space)

    @classmethod
    def identity(cls, n: int, space: VariableSpace) -> 'PolyMatrix':
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)], space)

    def __getitem__(self, key) -> Polynomial:
        i, j = key
        return self.entries[i * self.cols + j]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def to_rows(self) -> List[List[Polynomial]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def __repr__(self) -> str:
        return f'PolyMatrix({self.rows}x{self.cols} over {self.space!r})'


def bareiss_det(M: PolyMatrix) -> Polynomial:
    '''Determinant by Bareiss fraction-free elimination; every division is exact'''
    if not M.is_square():
        raise NotSquareError(f'Determinant of a {M.rows}x{M.cols} matrix')
    n = M.rows
    a = M.to_rows()
    sign = 1
    previous = M.space.one()
    started = time.perf_counter()
    for k in range(n - 1):
        # first nonzero pivot by row order
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return M.space.zero()
        pivot = a[k][k]
        for i in range(k + 1, n):
            lead = a[i][k]
            for j in range(k + 1, n):
                if lead.is_zero():
                    value = pivot * a[i][j]
                else:
                    value = pivot * a[i][j] - lead * a[k][j]
                if k:
                    value = value.exact_div(previous)
                a[i][j] = value
        previous = pivot
        logger.debug('Bareiss step %d/%d, pivot has %d terms', k + 1, n - 1, len(pivot))
    det = a[n - 1][n - 1]
    if n > 4:
        logger.info('Bareiss %dx%d determinant: %d terms in %.2fs',
                    n, n, len(det), time.perf_counter() - started)
    return det if sign > 0 else -det


def cofactor_det(M: PolyMatrix) -> Polynomial:
    '''Laplace expansion along rows, memoised on the remaining columns'''
    if not M.is_square():
        raise NotSquareError(f'Determinant of a {M.rows}x{M.cols} matrix')
    n = M.rows
    if n > COFACTOR_LIMIT:
        raise DimensionGuardError(f'Cofactor expansion limited to {COFACTOR_LIMIT}x{COFACTOR_LIMIT}')
    rows = M.to_rows()
    memo: Dict[tuple, Polynomial] = {}

    def expand(cols: tuple) -> Polynomial:
        if not cols:
            return M.space.one()
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        total = M.space.zero()
        for idx, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero():
                continue
            term = entry * expand(cols[:idx] + cols[idx + 1:])
            total = total + term if idx % 2 == 0 else total - term
        memo[cols] = total
        return total

    return expand(tuple(range(n)))


def _coefficient_list(f: Polynomial, var: str, declared: int) -> List[Polynomial]:
    coeffs = f.coefficients(var)
    actual = max(coeffs) if coeffs else 0
    if actual > declared:
        raise DegreeError(f'Degree {actual} in {var} exceeds declared degree {declared}')
    zero = f.space.zero()
    return [coeffs.get(k, zero) for k in range(declared, -1, -1)]


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str, m: int, n: int) -> PolyMatrix:
    '''(m+n)x(m+n) Sylvester matrix of f, g of declared degrees m, n in var'''
    if f.space != g.space:
        raise SpaceMismatchError(f'{f.space!r} vs {g.space!r}')
    if m < 0 or n < 0 or m + n == 0:
        raise DegreeError(f'Declared degrees must be nonnegative with positive sum: {m}, {n}')
    fc = _coefficient_list(f, var, m)
    gc = _coefficient_list(g, var, n)
    size = m + n
    zero = f.space.zero()
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - i - m - 1))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - i - n - 1))
    return PolyMatrix.from_rows(rows, f.space)


def resultant(f: Polynomial, g: Polynomial, var: str, m: int, n: int) -> Polynomial:
    return bareiss_det(sylvester_matrix(f, g, var, m, n))


def binary_coefficients(f: Polynomial, x: str, w: str, n: int) -> List[Polynomial]:
    '''[c_0, ..., c_n] with f = sum c_i x^i w^(n-i); x and w do not occur in c_i'''
    ix, iw = f.space.index(x), f.space.index(w)
    buckets: List[dict] = [dict() for _ in range(n + 1)]
    for m, c in f.as_dict().items():
        if m[ix] + m[iw] != n:
            raise DegreeError(f'Term of (x,w)-degree {m[ix] + m[iw]} in a binary form of degree {n}')
        rest = list(m)
        rest[ix] = rest[iw] = 0
        buckets[m[ix]][tuple(rest)] = c
    return [f.space.from_dict(b) for b in buckets]


def _discriminant_direct(f: Polynomial, x: str, w: str, n: int, lead: Polynomial) -> Polynomial:
    affine = f.substitute({w: 1})
    res = resultant(affine, affine.diff(x), x, n, n - 1)
    disc = res.exact_div(lead)
    return -disc if (n * (n - 1) // 2) % 2 else disc


@lru_cache(maxsize=None)
def generic_discriminant(n: int) -> Polynomial:
    '''Discriminant of sum a_i x^i w^(n-i) over Q[a_0..a_n], computed once per n'''
    names = [f'a_{i}' for i in range(n + 1)]
    space = VariableSpace(names + ['x', 'w'], [1] * (n + 1) + [0, 0])
    form = space.zero()
    for i, name in enumerate(names):
        form = form + space.gen(name) * space.gen('x') ** i * space.gen('w') ** (n - i)
    started = time.perf_counter()
    disc = _discriminant_direct(form, 'x', 'w', n, space.gen(f'a_{n}'))
    logger.info('Generic discriminant of degree %d: %d terms in %.2fs',
                n, len(disc), time.perf_counter() - started)
    return disc.embed(VariableSpace(names, [1] * (n + 1)))


def binary_discriminant(f: Polynomial, x: str, w: str, n: int,
                        method: Optional[str] = None) -> Polynomial:
    '''
    Disc(f) = (-1)^(n(n-1)/2) * Res(f(x,1), f_x(x,1)) / c_n.

    method 'direct' runs Bareiss on the Sylvester matrix of f itself;
    'generic' specializes the cached generic discriminant of degree n.
    Default: direct for constant coefficients, generic otherwise.
    '''
    if n < 1:
        raise DegreeError('Binary forms of degree at least 1 are required')
    coeffs = binary_coefficients(f, x, w, n)
    if coeffs[n].is_zero():
        raise DegreeError(f'Coefficient of {x}^{n} vanishes identically')
    if method is None:
        method = 'direct' if all(c.is_constant() for c in coeffs) else 'generic'
    if method == 'direct':
        return _discriminant_direct(f, x, w, n, coeffs[n])
    if method == 'generic':
        generic = generic_discriminant(n)
        return generic.substitute({f'a_{i}': c for i, c in enumerate(coeffs)}, f.space)
    raise ValueError(f'Unknown discriminant method {method!r}')


def discriminant_via_partials(f: Polynomial, x: str, w: str, n: int) -> Polynomial:
    '''Res(f_x, f_w) as binary forms of degree n-1; a multiple of Disc(f) fixed by n'''
    if n < 2:
        raise DegreeError('The partials route needs degree at least 2')
    coeffs = binary_coefficients(f, x, w, n)
    if coeffs[n].is_zero():
        raise DegreeError(f'Coefficient of {x}^{n} vanishes identically')
    fx = f.diff(x).substitute({w: 1})
    fw = f.diff(w).substitute({w: 1})
    return resultant(fx, fw, x, n - 1, n - 1)


@lru_cache(maxsize=None)
def partials_constant(n: int):
    '''Rational r with discriminant_via_partials = r * binary_discriminant in degree n'''
    x, w = XW_SPACE.gen('x'), XW_SPACE.gen('w')
    reference = x ** n - w ** n
    ratio = (discriminant_via_partials(reference, 'x', 'w', n).constant_value()
             / binary_discriminant(reference, 'x', 'w', n).constant_value())
    return ratio
