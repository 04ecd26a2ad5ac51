'''
Weierstrass pipeline module
From the six parameters u of the Weierstrass model to g2, g3, the invariants
t, s10, the discriminant factor h, the resultant r20, the discriminant k120
and the quotient Delta60 = k120 / r20^3
'''

import logging
import threading
import time
from dataclasses import dataclass, fields
from typing import Dict, Optional, Tuple, Union

from sympy import QQ

from elimination import PolyMatrix, bareiss_det, binary_coefficients, binary_discriminant, sylvester_matrix
from polynomial import Polynomial, VariableSpace, to_rational

logger = logging.getLogger(__name__)

U_NAMES = ('u_53', 'u_44', 'u_35', 'u_75', 'u_66', 'u_57')
U_WEIGHTS = (4, 4, 4, 6, 6, 6)
U_SPACE = VariableSpace(U_NAMES, U_WEIGHTS)
UXW_SPACE = VariableSpace(U_NAMES + ('x', 'w'), U_WEIGHTS + (0, 0))

T_NAMES = ('t_4', 't_6', 't_8', 't_10', 't_12')
T_SPACE = VariableSpace(T_NAMES, (4, 6, 8, 10, 12))
TS_SPACE = VariableSpace(T_NAMES + ('s_10',), (4, 6, 8, 10, 12, 10))

# lambda acts by lambda^((i+j)/2), mu by mu^(i-j) on u_ij; mu also moves x, w
LAMBDA_WEIGHTS = dict(zip(U_NAMES + ('x', 'w'), U_WEIGHTS + (0, 0)))
MU_WEIGHTS = {'u_53': 2, 'u_44': 0, 'u_35': -2, 'u_75': 2, 'u_66': 0, 'u_57': -2, 'x': -1, 'w': 1}
SWAP = {'u_53': 'u_35', 'u_35': 'u_53', 'u_75': 'u_57', 'u_57': 'u_75'}

Value = Union[Polynomial, object]


class NotBalancedError(ValueError):
    '''Polynomial is not invariant under the mu-action'''


class NotHomogeneousError(ValueError):
    '''Polynomial is not homogeneous for the requested action'''


class NumericModeError(ValueError):
    '''Operation needs generic (symbolic) parameters'''


@dataclass(frozen=True)
class WeierstrassData:
    '''Parameters u_ij of g2 = u53 x^5w^3 + u44 x^4w^4 + u35 x^3w^5, g3 = u75 x^7w^5 + ...'''
    u_53: Value
    u_44: Value
    u_35: Value
    u_75: Value
    u_66: Value
    u_57: Value

    @classmethod
    def generic(cls) -> 'WeierstrassData':
        return cls(*(U_SPACE.gen(name) for name in U_NAMES))

    @classmethod
    def numeric(cls, values) -> 'WeierstrassData':
        values = list(values)
        if len(values) != 6:
            raise ValueError('Six parameters are required')
        return cls(*(to_rational(v) for v in values))

    def values(self) -> Tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def is_generic(self) -> bool:
        return all(isinstance(v, Polynomial) for v in self.values())

    def swapped(self) -> 'WeierstrassData':
        '''sigma_1: u_ij -> u_ji'''
        return WeierstrassData(self.u_35, self.u_44, self.u_53, self.u_57, self.u_66, self.u_75)

    def point(self) -> Dict[str, object]:
        if self.is_generic():
            raise NumericModeError('Generic parameters have no numeric point')
        return dict(zip(U_NAMES, self.values()))

    def _lift(self, space: VariableSpace):
        out = []
        for v in self.values():
            out.append(v.embed(space) if isinstance(v, Polynomial) else space.constant(v))
        return out


@dataclass(frozen=True)
class InvariantSet:
    '''t4, t6, t8, t10, t12, s10 as polynomials in u or as rationals'''
    t_4: Value
    t_6: Value
    t_8: Value
    t_10: Value
    t_12: Value
    s_10: Value

    def as_dict(self) -> Dict[str, Value]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def relation_residual(self) -> Value:
        '''s10^2 - (t10^2 - 4 t8 t12); zero identically'''
        return self.s_10 ** 2 - (self.t_10 ** 2 - 4 * self.t_8 * self.t_12)


def build_g2(u: WeierstrassData) -> Polynomial:
    u53, u44, u35 = u._lift(UXW_SPACE)[:3]
    x, w = UXW_SPACE.gen('x'), UXW_SPACE.gen('w')
    return u53 * x ** 5 * w ** 3 + u44 * x ** 4 * w ** 4 + u35 * x ** 3 * w ** 5


def build_g3(u: WeierstrassData) -> Polynomial:
    u75, u66, u57 = u._lift(UXW_SPACE)[3:]
    x, w = UXW_SPACE.gen('x'), UXW_SPACE.gen('w')
    return u75 * x ** 7 * w ** 5 + u66 * x ** 6 * w ** 6 + u57 * x ** 5 * w ** 7


def invariants_from_u(u: WeierstrassData) -> InvariantSet:
    u53, u44, u35, u75, u66, u57 = u.values()
    return InvariantSet(
        t_4=u44,
        t_6=u66,
        t_8=u53 * u35,
        t_10=u53 * u57 + u35 * u75,
        t_12=u75 * u57,
        s_10=u53 * u57 - u35 * u75,
    )


def is_valid_parameter(u: WeierstrassData) -> bool:
    '''False on the excluded locus {u35 = u57 = 0} or {u53 = u75 = 0}'''
    if u.is_generic():
        raise NumericModeError('Validity is defined for numeric parameters')
    return not ((u.u_35 == 0 and u.u_57 == 0) or (u.u_53 == 0 and u.u_75 == 0))


def compute_h(u: WeierstrassData) -> Polynomial:
    '''h = (4 g2^3 + 27 g3^2) / (x^9 w^9), a sextic binary form in (x, w)'''
    x, w = UXW_SPACE.gen('x'), UXW_SPACE.gen('w')
    disc_y = 4 * build_g2(u) ** 3 + 27 * build_g3(u) ** 2
    return disc_y.exact_div(x ** 9 * w ** 9)


def h_coefficients(h: Polynomial) -> list:
    '''[c_0..c_6] over U_SPACE with h = sum c_i x^i w^(6-i)'''
    return [c.embed(U_SPACE) for c in binary_coefficients(h, 'x', 'w', 6)]


def cofactors(u: WeierstrassData) -> Tuple[Polynomial, Polynomial]:
    '''A = g2/(x^3 w^3), B = g3/(x^5 w^5): the quadratic cofactors'''
    x, w = UXW_SPACE.gen('x'), UXW_SPACE.gen('w')
    return (build_g2(u).exact_div(x ** 3 * w ** 3),
            build_g3(u).exact_div(x ** 5 * w ** 5))


def r20_matrix(u: WeierstrassData) -> PolyMatrix:
    '''The 4x4 Sylvester matrix of the two cofactors in x (w set to 1)'''
    a, b = cofactors(u)
    return sylvester_matrix(a.substitute({'w': 1}), b.substitute({'w': 1}), 'x', 2, 2)


def compute_r20(u: WeierstrassData) -> Polynomial:
    det = bareiss_det(r20_matrix(u))
    return det.embed(U_SPACE) if u.is_generic() else det


def r20_closed_form() -> Polynomial:
    u53, u44, u35, u75, u66, u57 = U_SPACE.gens()
    return (u53 * u57 - u35 * u75) ** 2 - (u53 * u66 - u44 * u75) * (u44 * u57 - u35 * u66)


def compute_k120(u: WeierstrassData, method: Optional[str] = None) -> Polynomial:
    '''Discriminant of h as a binary sextic; lambda-weight 120'''
    if not u.is_generic():
        raise NumericModeError('k120 is computed for generic parameters')
    started = time.perf_counter()
    k120 = binary_discriminant(compute_h(u), 'x', 'w', 6, method).embed(U_SPACE)
    logger.info('k120: %d terms in %.1fs', len(k120), time.perf_counter() - started)
    return k120


def numeric_k120(u: WeierstrassData):
    '''Discriminant of the numeric sextic h(u), by direct elimination'''
    if u.is_generic():
        raise NumericModeError('Numeric parameters are required')
    return binary_discriminant(compute_h(u), 'x', 'w', 6, 'direct').constant_value()


def sigma1_swap(f: Polynomial) -> Polynomial:
    '''u_ij <-> u_ji; u44, u66 (and x, w) fixed'''
    bindings = {name: f.space.gen(image) for name, image in SWAP.items() if name in f.space}
    return f.substitute(bindings)


def action_weight(f: Polynomial, action: str) -> Optional[int]:
    '''Common weight of f under the lambda- or mu-action; None for zero'''
    if action in ('lambda', 'λ'):
        weights = LAMBDA_WEIGHTS
    elif action in ('mu', 'μ'):
        weights = MU_WEIGHTS
    else:
        raise ValueError(f'Unknown action {action!r}')
    if f.is_zero():
        return None
    degrees = f.degrees_under(weights)
    if len(degrees) != 1:
        raise NotHomogeneousError(f'Terms of {action}-weights {sorted(degrees)}')
    return degrees.pop()


def torus_action(f: Polynomial, action: str, scale) -> Polynomial:
    '''
    Substitutes u_ij -> scale^weight * u_ij (and x, w for mu).
    lambda accepts a Polynomial scale; mu needs a nonzero rational (negative weights).
    '''
    weights = LAMBDA_WEIGHTS if action in ('lambda', 'λ') else MU_WEIGHTS
    if isinstance(scale, Polynomial):
        if weights is MU_WEIGHTS:
            raise ValueError('The mu-action has negative weights; use a rational scale')
        space = scale.space
        bindings = {name: scale ** weights[name] * space.gen(name)
                    for name in f.space.names if name in weights}
        return f.embed(space).substitute(bindings)
    c = to_rational(scale)
    if not c:
        raise ValueError('Scale must be nonzero')
    bindings = {name: c ** weights[name] * f.space.gen(name)
                for name in f.space.names if name in weights}
    return f.substitute(bindings)


def reduce_s10(f: Polynomial) -> Polynomial:
    '''Rewrites s10^2 -> t10^2 - 4 t8 t12 until s10 has degree <= 1'''
    delta20 = TS_SPACE.gen('t_10') ** 2 - 4 * TS_SPACE.gen('t_8') * TS_SPACE.gen('t_12')
    s = TS_SPACE.gen('s_10')
    result = TS_SPACE.zero()
    for e, part in f.coefficients('s_10').items():
        result = result + part * delta20 ** (e // 2) * s ** (e % 2)
    return result


class _PairPowers:
    '''Cached ((t10 +- s10)/2)^m reduced mod the s10 relation, as term lists'''
    def __init__(self, sign: int):
        t10, s10 = TS_SPACE.gen('t_10'), TS_SPACE.gen('s_10')
        self.base = (t10 + sign * s10).scale(QQ(1, 2))
        self.cache = [TS_SPACE.one()]
        self.items = [list(TS_SPACE.one().as_dict().items())]
        self.lock = threading.Lock()

    def __getitem__(self, m: int):
        with self.lock:
            while len(self.cache) <= m:
                nxt = reduce_s10(self.cache[-1] * self.base)
                self.cache.append(nxt)
                self.items.append(list(nxt.as_dict().items()))
            return self.items[m]


_PLUS = _PairPowers(1)
_MINUS = _PairPowers(-1)


def rewrite_u_to_ts(f: Polynomial) -> Polynomial:
    '''
    Expresses a mu-invariant polynomial in u through t4..t12 and s10.
    u44 -> t4, u66 -> t6, u53 u35 -> t8, u75 u57 -> t12,
    u53 u57 -> (t10 + s10)/2, u35 u75 -> (t10 - s10)/2; s10-degree <= 1 in the result.
    '''
    f = f.embed(U_SPACE)
    out: Dict[tuple, object] = {}
    for m, c in f.as_dict().items():
        a, b, cc, d, e, g = m  # u53, u44, u35, u75, u66, u57
        if a + d != cc + g:
            raise NotBalancedError(f'Monomial {m} has mu-weight {2 * (a + d - cc - g)}')
        m8 = min(a, cc)
        m12 = min(d, g)
        a, cc, d, g = a - m8, cc - m8, d - m12, g - m12
        if a:
            pairs = _PLUS[a]      # remaining (u53 u57)^a
        elif cc:
            pairs = _MINUS[cc]    # remaining (u35 u75)^cc
        else:
            pairs = _PLUS[0]
        base = (b, e, m8, 0, m12, 0)
        for pm, pc in pairs:
            key = tuple(x + y for x, y in zip(base, pm))
            out[key] = out.get(key, QQ.zero) + c * pc
    return TS_SPACE.from_dict(out)


def ts_to_u(f: Polynomial) -> Polynomial:
    '''Substitutes the u-expressions of t4..t12, s10 back'''
    inv = invariants_from_u(WeierstrassData.generic())
    return f.embed(TS_SPACE).substitute(inv.as_dict(), U_SPACE)


def drop_s10(f: Polynomial) -> Polynomial:
    '''Moves an s10-free polynomial from TS_SPACE to T_SPACE'''
    if f.degree('s_10'):
        raise ValueError('Polynomial still involves s10')
    return f.embed(T_SPACE)


def delta8() -> Polynomial:
    return T_SPACE.gen('t_8')


def delta20() -> Polynomial:
    t = {name: T_SPACE.gen(name) for name in T_NAMES}
    return t['t_10'] ** 2 - 4 * t['t_8'] * t['t_12']


def compute_delta60(u: WeierstrassData, k120: Optional[Polynomial] = None,
                    r20: Optional[Polynomial] = None, with_scale: bool = False):
    '''
    k120 / r20^3, rewritten into Q[t] and normalized to a primitive integer polynomial.
    With with_scale, returns (quotient in u, scale, Delta60) where quotient = scale*Delta60 in t.
    '''
    if not u.is_generic():
        raise NumericModeError('Delta60 is computed for generic parameters')
    k120 = k120 if k120 is not None else compute_k120(u)
    r20 = r20 if r20 is not None else compute_r20(u)
    started = time.perf_counter()
    quotient = k120.exact_div(r20 ** 3)
    logger.info('k120 / r20^3: %d terms in %.1fs', len(quotient), time.perf_counter() - started)
    scale, published = drop_s10(rewrite_u_to_ts(quotient)).normalized()
    if with_scale:
        return quotient, scale, published
    return published


def factorization_in_t(k120: Polynomial, r20: Polynomial, delta60: Polynomial, scale) -> dict:
    '''
    Re-checks k120 = r20^3 * Delta60 after moving both sides into Q[t, s10] / (s10^2 - Delta20)
    '''
    k120_ts = rewrite_u_to_ts(k120)
    rhs = reduce_s10(rewrite_u_to_ts(r20) ** 3 * delta60.scale(scale).embed(TS_SPACE))
    return {'k120_s10_degree': k120_ts.degree('s_10'),
            'k120_weighted_degree': k120_ts.weighted_degree(),
            'identity': k120_ts == rhs}


@dataclass(frozen=True)
class PipelineArtifacts:
    '''Every object of the chain; polynomials in u over U_SPACE, in t over T_SPACE'''
    g2: Polynomial
    g3: Polynomial
    h: Polynomial
    r20: Polynomial
    k120: Polynomial
    quotient_u: Polynomial
    delta60: Polynomial
    delta60_scale: object
    delta8: Polynomial
    delta20: Polynomial

    def delta88(self) -> Polynomial:
        return self.delta8 * self.delta20 * self.delta60

    def factorization_in_t(self) -> dict:
        return factorization_in_t(self.k120, self.r20, self.delta60, self.delta60_scale)

    def as_dict(self) -> Dict[str, Polynomial]:
        return {'g2': self.g2, 'g3': self.g3, 'h': self.h, 'r20': self.r20,
                'k120': self.k120, 'delta60': self.delta60}


def run_pipeline(k120: Optional[Polynomial] = None, method: Optional[str] = None) -> PipelineArtifacts:
    '''Computes (or completes from a cached k120) the full chain'''
    u = WeierstrassData.generic()
    h = compute_h(u)
    r20 = compute_r20(u)
    if k120 is None:
        k120 = compute_k120(u, method)
    quotient, scale, published = compute_delta60(u, k120, r20, with_scale=True)
    return PipelineArtifacts(
        g2=build_g2(u), g3=build_g3(u), h=h, r20=r20, k120=k120,
        quotient_u=quotient, delta60=published, delta60_scale=scale,
        delta8=delta8(), delta20=delta20(),
    )
