'''
Irreducibility module
Certifies irreducibility over Q: dehomogenize, restrict to a random integer
line, then test the univariate restriction modulo a prime
'''

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ, ZZ, Poly, Symbol, primefactors
from sympy.polys.galoistools import gf_ddf_zassenhaus, gf_gcd, gf_monic, gf_pow_mod, gf_rem, gf_sqf_p, gf_sub

from config import COEFFICIENT_BOX, DEFAULT_ATTEMPTS, DEFAULT_PRIMES, DEFAULT_SEED, PATTERN_PRIMES_PER_LINE
from polynomial import Polynomial, VariableSpace

logger = logging.getLogger(__name__)

LINE_SPACE = VariableSpace(['s'], [1])


class PreconditionError(ValueError):
    '''Input outside the domain of the certificate; reason names the failed check'''
    def __init__(self, reason: str, detail: str = ''):
        self.reason = reason
        super().__init__(f'{reason}: {detail}' if detail else reason)


class DenominatorError(ValueError):
    '''A coefficient denominator vanishes modulo p'''


@dataclass(frozen=True)
class ModPPoly:
    '''Univariate polynomial over F_p, coefficients in descending order'''
    p: int
    coeffs: Tuple[int, ...]
    source_degree: Optional[int] = None

    def __post_init__(self):
        if self.coeffs and self.coeffs[0] % self.p == 0:
            raise ValueError('Leading coefficient must be nonzero mod p')

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def degree_dropped(self) -> bool:
        return self.source_degree is not None and self.degree != self.source_degree


def univariate_coefficients(f: Polynomial) -> List[object]:
    '''Ascending rational coefficients of a polynomial in at most one variable'''
    used = f.variables()
    if len(used) > 1:
        raise ValueError(f'Not univariate: {used}')
    if f.is_zero():
        return []
    i = f.space.index(used[0]) if used else 0
    coeffs = [QQ.zero] * ((f.total_degree() or 0) + 1)
    for m, c in f.as_dict().items():
        coeffs[m[i]] = c
    return coeffs


def modp_reduce(f: Polynomial, p: int) -> ModPPoly:
    '''Coefficient-wise reduction of a univariate rational polynomial'''
    coeffs = univariate_coefficients(f)
    reduced = []
    for c in reversed(coeffs):
        num, den = int(QQ.numer(c)), int(QQ.denom(c))
        if den % p == 0:
            raise DenominatorError(f'Denominator {den} is divisible by {p}')
        reduced.append(num * pow(den, -1, p) % p)
    while reduced and reduced[0] == 0:
        reduced.pop(0)
    return ModPPoly(p, tuple(reduced), len(coeffs) - 1 if coeffs else None)


def modp_irreducible(g: ModPPoly) -> bool:
    '''
    g irreducible over F_p iff x^(p^n) = x mod g and
    gcd(x^(p^(n/q)) - x, g) = 1 for every prime q | n
    '''
    n = g.degree
    if n is None or n < 1:
        raise ValueError('Irreducibility is tested for degree >= 1')
    p = g.p
    _, f = gf_monic(list(g.coeffs), p, ZZ)
    x = gf_rem([1, 0], f, p, ZZ)
    frobenius = {0: x}
    h = x
    for k in range(1, n + 1):
        h = gf_pow_mod(h, p, f, p, ZZ)
        frobenius[k] = h
    if gf_rem(gf_sub(frobenius[n], x, p, ZZ), f, p, ZZ):
        return False
    for q in primefactors(n):
        d = gf_gcd(gf_sub(frobenius[n // q], x, p, ZZ), f, p, ZZ)
        if d != [1]:
            return False
    return True


def factor_degrees(g: ModPPoly) -> Optional[List[int]]:
    '''Degrees of the irreducible factors mod p; None if g is not squarefree mod p'''
    _, f = gf_monic(list(g.coeffs), g.p, ZZ)
    if not gf_sqf_p(f, g.p, ZZ):
        return None
    degrees = []
    for factor, d in gf_ddf_zassenhaus(f, g.p, ZZ):
        degrees.extend([d] * ((len(factor) - 1) // d))
    return sorted(degrees)


def _proper_subset_sums(degrees: Sequence[int]) -> set:
    total = sum(degrees)
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return {s for s in sums if 0 < s < total}


def dehomogenize(f: Polynomial, pivot: str) -> Polynomial:
    '''Sets pivot = 1 in a quasi-homogeneous f not divisible by pivot'''
    if not f.is_quasi_homogeneous():
        raise PreconditionError('not-quasi-homogeneous')
    if f.divides_by(f.space.gen(pivot)):
        raise PreconditionError('divisible-by-pivot', pivot)
    return f.substitute({pivot: 1})


def choose_pivot(f: Polynomial) -> str:
    '''Occurring variable whose dehomogenization has the smallest total degree'''
    best = None
    for name in f.variables():
        i = f.space.index(name)
        degree = max(sum(m) - m[i] for m in f.as_dict())
        if best is None or degree < best[0]:
            best = (degree, name)
    if best is None:
        raise PreconditionError('constant')
    return best[1]


def restrict_to_line(g: Polynomial, variables: Sequence[str],
                     direction: Sequence[int], offset: Sequence[int]) -> Polynomial:
    '''g(direction*s + offset) as a polynomial in s'''
    s = LINE_SPACE.gen('s')
    bindings = {name: int(a) * s + int(b) for name, a, b in zip(variables, direction, offset)}
    return g.substitute(bindings, LINE_SPACE)


def draw_line(seed: int, attempt: int, k: int, box: int = COEFFICIENT_BOX) -> Tuple[List[int], List[int]]:
    '''Direction entries nonzero in [-box, box], offsets in [-box, box]'''
    rng = np.random.default_rng([seed, attempt])
    magnitude = rng.integers(1, box + 1, size=k)
    signs = rng.choice(np.array([-1, 1]), size=k)
    offset = rng.integers(-box, box + 1, size=k)
    return [int(v) for v in magnitude * signs], [int(v) for v in offset]


@dataclass
class IrreducibilityCertificate:
    '''Replayable record of one irreducibility run'''
    target_hash: str
    verdict: str
    seed: int
    attempts: int
    attempt_index: Optional[int] = None
    pivot: Optional[str] = None
    prime: Optional[int] = None
    line: dict = field(default_factory=dict)
    restricted_degree: Optional[int] = None
    method: Optional[str] = None
    patterns: list = field(default_factory=list)

    @property
    def is_positive(self) -> bool:
        return self.verdict == 'irreducible'

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _check_preconditions(f: Polynomial):
    if f.is_zero() or f.is_constant():
        raise PreconditionError('constant')
    if not f.is_primitive():
        raise PreconditionError('not-primitive', f'content {f.content()}')
    if not f.is_quasi_homogeneous():
        raise PreconditionError('not-quasi-homogeneous')
    for name in f.space.names:
        if f.divides_by(f.space.gen(name)):
            raise PreconditionError('divisible-by-variable', name)


def _try_line(g: Polynomial, variables: List[str], direction, offset, primes: Sequence[int],
              target_degree: int) -> Tuple[Optional[str], list]:
    '''Runs the prime tests on one line; returns (method, patterns) on success'''
    restricted = restrict_to_line(g, variables, direction, offset)
    if restricted.total_degree() != target_degree:
        return None, []
    lead = univariate_coefficients(restricted)[-1]
    patterns = []
    possible = None
    for p in primes:
        if int(QQ.numer(lead)) % p == 0:
            continue
        reduced = modp_reduce(restricted, p)
        if modp_irreducible(reduced):
            return 'single-prime', [[p, [target_degree]]]
        degrees = factor_degrees(reduced)
        if degrees is None:
            continue
        patterns.append([p, degrees])
        sums = _proper_subset_sums(degrees)
        possible = sums if possible is None else possible & sums
        if not possible:
            return 'degree-patterns', patterns
    return None, patterns


def certify_irreducible(f: Polynomial, attempts: int = DEFAULT_ATTEMPTS, seed: int = DEFAULT_SEED,
                        primes: Sequence[int] = DEFAULT_PRIMES, box: int = COEFFICIENT_BOX,
                        pivot: Optional[str] = None,
                        patterns_per_line: int = PATTERN_PRIMES_PER_LINE) -> IrreducibilityCertificate:
    '''
    Attempt i draws a line from (seed, i) and uses primes[i] first. A restriction
    of preserved degree that is irreducible mod p (or whose factor-degree patterns
    over several primes admit no common proper factor degree) proves f irreducible
    over Q. Otherwise the attempt proves nothing and the next one runs.
    '''
    _check_preconditions(f)
    pivot = pivot or choose_pivot(f)
    g = dehomogenize(f, pivot)
    variables = g.variables()
    target_degree = g.total_degree()
    cert = IrreducibilityCertificate(target_hash=f.content_hash(), verdict='inconclusive',
                                     seed=seed, attempts=attempts, pivot=pivot,
                                     restricted_degree=target_degree)
    if not variables:
        raise PreconditionError('constant', 'nothing left after dehomogenization')
    for i in range(attempts):
        direction, offset = draw_line(seed, i, len(variables), box)
        line_primes = [primes[(i + j) % len(primes)] for j in range(1 + patterns_per_line)]
        method, patterns = _try_line(g, variables, direction, offset, line_primes, target_degree)
        logger.debug('attempt %d: line %s + s*%s -> %s', i, offset, direction, method)
        if method:
            cert.verdict = 'irreducible'
            cert.attempt_index = i
            cert.prime = patterns[0][0]
            cert.line = {'variables': variables, 'direction': direction, 'offset': offset}
            cert.method = method
            cert.patterns = patterns
            logger.info('Irreducibility certified at attempt %d (%s, p=%d)', i, method, cert.prime)
            return cert
    logger.warning('Irreducibility inconclusive after %d attempts', attempts)
    return cert


def replay_certificate(f: Polynomial, cert: IrreducibilityCertificate) -> bool:
    '''Re-runs the recorded line and primes; True iff the recorded verdict is reproduced'''
    if f.content_hash() != cert.target_hash:
        return False
    if not cert.is_positive:
        return certify_irreducible(f, cert.attempts, cert.seed, pivot=cert.pivot).verdict == cert.verdict
    g = dehomogenize(f, cert.pivot)
    primes = [p for p, _ in cert.patterns]
    method, patterns = _try_line(g, cert.line['variables'], cert.line['direction'],
                                 cert.line['offset'], primes, cert.restricted_degree)
    return method == cert.method and patterns == cert.patterns


def is_squarefree_on_line(f: Polynomial, seed: int = DEFAULT_SEED, box: int = COEFFICIENT_BOX) -> bool:
    '''Squarefreeness over Q of the restriction of the dehomogenized f to a random line'''
    pivot = choose_pivot(f)
    g = dehomogenize(f, pivot)
    variables = g.variables()
    direction, offset = draw_line(seed, 0, len(variables), box)
    coeffs = univariate_coefficients(restrict_to_line(g, variables, direction, offset))
    s = Symbol('s')
    G = Poly(list(reversed(coeffs)), s, domain=QQ)
    return G.gcd(G.diff(s)).degree() == 0
