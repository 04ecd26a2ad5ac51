'''
Sparse polynomial module
Contains VariableSpace and Polynomial: exact rational coefficients, weighted
degrees, graded-reverse-lexicographic order, text and binary serialization
'''

import hashlib
import logging
import re
import struct
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ, symbols
from sympy.polys.monomials import monomial_mul
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyRing

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

BINARY_MAGIC = b'OFPB'
BINARY_VERSION = 1


class SpaceMismatchError(ValueError):
    '''Operands live over different variable spaces'''


class NotDivisibleError(ArithmeticError):
    '''Exact division left a nonzero remainder'''
    def __init__(self, monomial: Monomial, names: Sequence[str] = ()):
        self.monomial = monomial
        shown = _format_monomial(monomial, names) if names else str(monomial)
        super().__init__(f'not divisible: remainder leads with {shown}')


class UnboundVariableError(ValueError):
    '''A variable occurring in a polynomial has no binding'''


class ParseError(ValueError):
    '''Malformed polynomial text'''
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f'{message} at position {position}')


class CacheFormatError(ValueError):
    '''Malformed binary polynomial data'''


def to_rational(value) -> 'QQ.dtype':
    '''Converts int, Fraction, str or a QQ element to an exact QQ element'''
    if isinstance(value, str):
        value = Fraction(value.strip())
    try:
        return QQ(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise TypeError(f'not an exact rational: {value!r}') from None


def rational_text(c) -> str:
    num, den = int(QQ.numer(c)), int(QQ.denom(c))
    return str(num) if den == 1 else f'{num}/{den}'


def _format_monomial(m: Monomial, names: Sequence[str]) -> str:
    factors = []
    for name, e in zip(names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f'{name}^{e}')
    return '*'.join(factors)


class VariableSpace:
    '''Ordered set of named variables, one nonnegative integer weight each'''
    def __init__(self, names: Sequence[str], weights: Optional[Sequence[int]] = None):
        names = tuple(names)
        if not names:
            raise ValueError('A variable space needs at least one variable')
        if len(set(names)) != len(names):
            raise ValueError(f'Variable names must be distinct: {names}')
        weights = tuple(int(w) for w in weights) if weights is not None else (1,) * len(names)
        if len(weights) != len(names):
            raise ValueError('One weight per variable is required')
        if any(w < 0 for w in weights):
            raise ValueError(f'Weights must be nonnegative: {weights}')
        self.names = names
        self.weights = weights
        self.ring = PolyRing(symbols(list(names)), QQ, grevlex)
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (isinstance(other, VariableSpace)
                and self.names == other.names and self.weights == other.weights)

    def __hash__(self) -> int:
        return hash((self.names, self.weights))

    def __repr__(self) -> str:
        pairs = ', '.join(f'{n}:{w}' for n, w in zip(self.names, self.weights))
        return f'VariableSpace({pairs})'

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnboundVariableError(f'Unknown variable {name!r} in {self!r}') from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def monomial_weight(self, m: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, m))

    def gen(self, name: str) -> 'Polynomial':
        m = [0] * len(self.names)
        m[self.index(name)] = 1
        return self.from_dict({tuple(m): 1})

    def gens(self) -> List['Polynomial']:
        return [self.gen(name) for name in self.names]

    def constant(self, value) -> 'Polynomial':
        return Polynomial(self, self.ring.ground_new(to_rational(value)))

    def zero(self) -> 'Polynomial':
        return Polynomial(self, self.ring.zero)

    def one(self) -> 'Polynomial':
        return Polynomial(self, self.ring.one)

    def from_dict(self, terms: Mapping[Monomial, object]) -> 'Polynomial':
        '''Builds a polynomial from monomial -> coefficient, dropping zeros'''
        n = len(self.names)
        clean = {}
        for m, c in terms.items():
            m = tuple(int(e) for e in m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f'Bad exponent vector {m} for {self!r}')
            c = to_rational(c)
            if c:
                clean[m] = c
        return Polynomial(self, self.ring.from_dict(clean))


class Polynomial:
    '''Immutable sparse polynomial; terms are kept by the underlying sympy ring'''
    __slots__ = ('space', '_poly')

    def __init__(self, space: VariableSpace, poly):
        self.space = space
        self._poly = poly

    # --- inspection ---

    def __len__(self) -> int:
        return len(self._poly)

    def is_zero(self) -> bool:
        return not self._poly

    def is_constant(self) -> bool:
        zero = (0,) * len(self.space)
        return all(m == zero for m in self._poly)

    def constant_value(self):
        '''Value of a constant polynomial'''
        if not self.is_constant():
            raise ValueError('Polynomial is not constant')
        return self._poly.get((0,) * len(self.space), QQ.zero)

    def terms(self) -> List[Tuple[Monomial, object]]:
        '''Terms in descending grevlex order'''
        return self._poly.terms()

    def as_dict(self) -> Dict[Monomial, object]:
        return dict(self._poly)

    def monomials(self) -> set:
        return set(self._poly)

    def leading_term(self) -> Tuple[Monomial, object]:
        if self.is_zero():
            raise ValueError('The zero polynomial has no leading term')
        return self._poly.LT

    def variables(self) -> List[str]:
        '''Names of variables that occur'''
        used = set()
        for m in self._poly:
            used.update(i for i, e in enumerate(m) if e)
        return [self.space.names[i] for i in sorted(used)]

    def degree(self, name: str) -> Optional[int]:
        '''Degree in one variable; None for the zero polynomial'''
        if self.is_zero():
            return None
        i = self.space.index(name)
        return max(m[i] for m in self._poly)

    def total_degree(self) -> Optional[int]:
        if self.is_zero():
            return None
        return max(sum(m) for m in self._poly)

    def weighted_degree(self) -> Optional[int]:
        if self.is_zero():
            return None
        return max(self.space.monomial_weight(m) for m in self._poly)

    def degrees_under(self, weights: Mapping[str, int]) -> set:
        '''Set of weighted degrees of the terms under an external weight map'''
        vector = [weights.get(name, 0) for name in self.space.names]
        return {sum(w * e for w, e in zip(vector, m)) for m in self._poly}

    def is_quasi_homogeneous(self) -> bool:
        return len({self.space.monomial_weight(m) for m in self._poly}) <= 1

    # --- arithmetic ---

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.space != self.space:
                raise SpaceMismatchError(f'{self.space!r} vs {other.space!r}')
            return other._poly
        return self.space.ring.ground_new(to_rational(other))

    def _wrap(self, poly) -> 'Polynomial':
        return Polynomial(self.space, poly)

    def __add__(self, other):
        return self._wrap(self._poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self._poly - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self._poly)

    def __neg__(self):
        return self._wrap(-self._poly)

    def __mul__(self, other):
        return self._wrap(self._poly * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError('Only nonnegative integer powers are supported')
        return self._wrap(self._poly ** n)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.space == other.space and dict(self._poly) == dict(other._poly)
        try:
            return dict(self._poly) == dict(self._coerce(other))
        except (TypeError, ValueError, ZeroDivisionError):
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self._poly.items())))

    def __repr__(self) -> str:
        text = self.to_text()
        if len(text) > 120:
            text = text[:117] + '...'
        return f'Polynomial({text})'

    def scale(self, c) -> 'Polynomial':
        return self._wrap(self._poly * to_rational(c))

    def exact_div(self, divisor) -> 'Polynomial':
        '''
        Multivariate division in the grevlex ring.
        Returns q with self = q*divisor, raises NotDivisibleError otherwise.
        '''
        g = divisor if isinstance(divisor, Polynomial) else self.space.constant(divisor)
        if g.space != self.space:
            raise SpaceMismatchError(f'{self.space!r} vs {g.space!r}')
        if g.is_zero():
            raise ZeroDivisionError('Division by the zero polynomial')
        if self.is_zero():
            return self
        # single divisor: zero remainder iff g divides self
        q, r = self._poly.div(g._poly)
        if r:
            raise NotDivisibleError(r.LM, self.space.names)
        return self._wrap(q)

    def divides_by(self, divisor) -> bool:
        try:
            self.exact_div(divisor)
        except NotDivisibleError:
            return False
        return True

    def diff(self, name: str) -> 'Polynomial':
        return self._wrap(self._poly.diff(self.space.ring.gens[self.space.index(name)]))

    def coefficients(self, name: str) -> Dict[int, 'Polynomial']:
        '''Splits by powers of one variable: {k: coefficient of name^k}'''
        i = self.space.index(name)
        x = self.space.ring.gens[i]
        return {k: self._wrap(self._poly.coeff_wrt(x, k)) for k in sorted({m[i] for m in self._poly})}

    # --- integer normal form ---

    def content(self):
        '''Positive rational c with self/c primitive with integer coefficients'''
        if self.is_zero():
            return QQ.zero
        return abs(self._poly.content())

    def primitive(self) -> Tuple[object, 'Polynomial']:
        if self.is_zero():
            return QQ.zero, self
        c, p = self._poly.primitive()
        if c < 0:
            c, p = -c, -p
        return c, self._wrap(p)

    def is_primitive(self) -> bool:
        return not self.is_zero() and self.content() == 1

    def normalized(self) -> Tuple[object, 'Polynomial']:
        '''(scale, p) with self = scale*p, p primitive with positive leading coefficient'''
        c, p = self.primitive()
        if not p.is_zero() and p.leading_term()[1] < 0:
            c, p = -c, -p
        return c, p

    # --- substitution and evaluation ---

    def substitute(self, bindings: Mapping[str, object],
                   target: Optional[VariableSpace] = None) -> 'Polynomial':
        '''
        Simultaneous substitution name -> Polynomial (over target) or rational.
        Unbound variables map to the same-named variable of the target space.
        '''
        target = target or self.space
        for name in bindings:
            if name not in self.space:
                raise UnboundVariableError(f'Binding for unknown variable {name!r}')
        images = []
        for name in self.space.names:
            if name in bindings:
                images.append(_as_polynomial(bindings[name], target)._poly)
            elif name in target:
                images.append(target.gen(name)._poly)
            else:
                images.append(None)
        for i, image in enumerate(images):
            if image is None and any(m[i] for m in self._poly):
                raise UnboundVariableError(
                    f'Variable {self.space.names[i]!r} has no binding in {target!r}')
        if all(image is None or len(image) <= 1 for image in images):
            poly = _substitute_monomial(self._poly, images, target)
        else:
            poly = _substitute_horner(self._poly, images, target)
        return Polynomial(target, poly)

    def embed(self, target: VariableSpace) -> 'Polynomial':
        '''Same polynomial over another space, matched by variable names'''
        if target == self.space:
            return self
        return self.substitute({}, target)

    def evaluate(self, point: Mapping[str, object]):
        '''Exact value at a point given as name -> rational'''
        values = []
        for i, name in enumerate(self.space.names):
            if name in point:
                values.append(to_rational(point[name]))
            elif any(m[i] for m in self._poly):
                raise UnboundVariableError(f'Missing value for {name!r}')
            else:
                values.append(QQ.zero)
        return self._poly.evaluate(list(zip(self.space.ring.gens, values)))

    # --- serialization ---

    def to_text(self, integer: bool = False) -> str:
        '''Canonical text: descending grevlex terms, "x^2 - 1" spacing'''
        if integer:
            c, p = self.primitive()
            return f'{rational_text(c)} * ({p.to_text()})'
        if self.is_zero():
            return '0'
        parts = []
        for k, (m, c) in enumerate(self.terms()):
            negative = c < 0
            magnitude = -c if negative else c
            factors = _format_monomial(m, self.space.names)
            if not factors:
                body = rational_text(magnitude)
            elif magnitude == 1:
                body = factors
            else:
                body = f'{rational_text(magnitude)}*{factors}'
            if k == 0:
                parts.append(f'-{body}' if negative else body)
            else:
                parts.append(f'- {body}' if negative else f'+ {body}')
        return ' '.join(parts)

    def serialize(self, integer: bool = False) -> bytes:
        return self.to_text(integer).encode('utf-8')

    def to_binary(self) -> bytes:
        '''Versioned binary form: little-endian exponents, sign-magnitude integers'''
        out = [BINARY_MAGIC, struct.pack('<BH', BINARY_VERSION, len(self.space))]
        for name, weight in zip(self.space.names, self.space.weights):
            raw = name.encode('utf-8')
            out.append(struct.pack('<BI', len(raw), weight))
            out.append(raw)
        terms = self.terms()
        out.append(struct.pack('<I', len(terms)))
        fmt = '<' + 'I' * len(self.space)
        for m, c in terms:
            out.append(struct.pack(fmt, *m))
            out.append(_pack_int(int(QQ.numer(c))))
            out.append(_pack_int(int(QQ.denom(c))))
        return b''.join(out)

    def content_hash(self) -> str:
        return hashlib.sha256(self.serialize()).hexdigest()


def _as_polynomial(value, space: VariableSpace) -> Polynomial:
    if isinstance(value, Polynomial):
        if value.space != space:
            raise SpaceMismatchError(f'Image over {value.space!r}, expected {space!r}')
        return value
    return space.constant(value)


def _substitute_monomial(poly, images, target: VariableSpace):
    # every image is zero or a single term: map exponents directly
    zero = (0,) * len(target)
    single = []
    for image in images:
        if image is None or not image:
            single.append(None)
        else:
            ((m, c),) = image.items()
            single.append((m, c))
    out: Dict[Monomial, object] = {}
    for m, c in poly.items():
        exps = list(zero)
        coeff = c
        vanished = False
        for i, e in enumerate(m):
            if not e:
                continue
            if single[i] is None:
                vanished = True
                break
            im, ic = single[i]
            if ic != 1:
                coeff = coeff * ic ** e
            for j, f in enumerate(im):
                if f:
                    exps[j] += f * e
        if vanished:
            continue
        key = tuple(exps)
        out[key] = out.get(key, QQ.zero) + coeff
    return target.ring.from_dict(out)


def _substitute_horner(poly, images, target: VariableSpace):
    # recursive Horner scheme in the variable order; shares work across terms
    ring = target.ring
    n = len(images)
    powers: Dict[Tuple[int, int], object] = {}

    def power(k, e):
        key = (k, e)
        if key not in powers:
            powers[key] = images[k] ** e
        return powers[key]

    def horner(items, k):
        if k == n:
            return ring.ground_new(sum((c for _, c in items), QQ.zero))
        buckets = defaultdict(list)
        for m, c in items:
            buckets[m[k]].append((m, c))
        if list(buckets) == [0]:
            return horner(items, k + 1)
        result = None
        previous = 0
        for e in sorted(buckets, reverse=True):
            part = horner(buckets[e], k + 1)
            if result is None:
                result = part
            else:
                result = result * power(k, previous - e) + part
            previous = e
        if previous:
            result = result * power(k, previous)
        return result

    if not poly:
        return ring.zero
    return horner(list(poly.items()), 0)


def _pack_int(value: int) -> bytes:
    magnitude = abs(value)
    raw = magnitude.to_bytes(max(1, (magnitude.bit_length() + 7) // 8), 'little')
    return struct.pack('<BI', 1 if value < 0 else 0, len(raw)) + raw


def _unpack_int(data: bytes, offset: int) -> Tuple[int, int]:
    sign, length = struct.unpack_from('<BI', data, offset)
    offset += 5
    raw = data[offset:offset + length]
    if len(raw) != length:
        raise CacheFormatError('Truncated integer')
    value = int.from_bytes(raw, 'little')
    return (-value if sign else value), offset + length


def from_binary(data: bytes, space: Optional[VariableSpace] = None) -> Polynomial:
    '''Inverse of Polynomial.to_binary; checks the header against space if given'''
    try:
        if data[:4] != BINARY_MAGIC:
            raise CacheFormatError('Bad magic header')
        version, nvars = struct.unpack_from('<BH', data, 4)
        if version != BINARY_VERSION:
            raise CacheFormatError(f'Unsupported binary version {version}')
        offset = 7
        names, weights = [], []
        for _ in range(nvars):
            length, weight = struct.unpack_from('<BI', data, offset)
            offset += 5
            names.append(data[offset:offset + length].decode('utf-8'))
            weights.append(weight)
            offset += length
        header_space = VariableSpace(names, weights)
        if space is not None and space != header_space:
            raise CacheFormatError(f'Space mismatch: {header_space!r} vs {space!r}')
        (nterms,) = struct.unpack_from('<I', data, offset)
        offset += 4
        fmt = '<' + 'I' * nvars
        step = struct.calcsize(fmt)
        terms = {}
        for _ in range(nterms):
            m = struct.unpack_from(fmt, data, offset)
            offset += step
            num, offset = _unpack_int(data, offset)
            den, offset = _unpack_int(data, offset)
            terms[tuple(m)] = QQ(num, den)
    except struct.error as exc:
        raise CacheFormatError(f'Truncated binary polynomial: {exc}') from None
    if offset != len(data):
        raise CacheFormatError('Trailing bytes after polynomial')
    return (space or header_space).from_dict(terms)


_TOKEN = re.compile(r'\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))')


class _Parser:
    '''Reader for the canonical text form (and sums of terms in general)'''
    def __init__(self, text: str, space: VariableSpace):
        self.space = space
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            match = _TOKEN.match(text, pos)
            if not match or match.end() == pos:
                raise ParseError(f'Unexpected character {text[pos]!r}', pos)
            kind = match.lastgroup
            start = match.start(kind)
            self.tokens.append((kind, match.group(kind), start))
            pos = match.end()
        self.tokens.append(('end', '', len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        token = self.peek()
        if (kind and token[0] != kind) or (value and token[1] != value):
            want = value or kind
            raise ParseError(f'Expected {want!r}, found {token[1] or "end of input"!r}', token[2])
        self.i += 1
        return token

    def parse(self) -> Polynomial:
        scale = None
        # optional explicit content prefix: "c * (sum)"
        save = self.i
        if self.peek()[0] == 'num':
            c = self.coefficient()
            if self.peek()[1] == '*' and self.tokens[self.i + 1][1] == '(':
                self.take('op', '*')
                self.take('op', '(')
                scale = c
            else:
                self.i = save
        poly = self.sum()
        if scale is not None:
            self.take('op', ')')
            poly = poly.scale(scale)
        self.take('end')
        return poly

    def coefficient(self):
        num = int(self.take('num')[1])
        if self.peek()[1] == '/':
            self.take('op', '/')
            token = self.take('num')
            den = int(token[1])
            if den == 0:
                raise ParseError('Zero denominator', token[2])
            return QQ(num, den)
        return QQ(num)

    def sum(self) -> Polynomial:
        terms: Dict[Monomial, object] = {}
        sign = 1
        if self.peek()[1] == '-':
            self.take('op', '-')
            sign = -1
        while True:
            m, c = self.term()
            terms[m] = terms.get(m, QQ.zero) + sign * c
            if self.peek()[1] in ('+', '-'):
                sign = 1 if self.take('op')[1] == '+' else -1
            else:
                break
        return self.space.from_dict(terms)

    def term(self) -> Tuple[Monomial, object]:
        exps = [0] * len(self.space)
        coeff = QQ.one
        kind = self.peek()[0]
        if kind == 'num':
            coeff = self.coefficient()
            if self.peek()[1] != '*':
                return tuple(exps), coeff
            self.take('op', '*')
        elif kind != 'name':
            token = self.peek()
            raise ParseError(f'Expected a term, found {token[1] or "end of input"!r}', token[2])
        while True:
            kind, name, pos = self.take('name')
            if name not in self.space:
                raise ParseError(f'Unknown variable {name!r}', pos)
            e = 1
            if self.peek()[1] == '^':
                self.take('op', '^')
                e = int(self.take('num')[1])
            exps[self.space.index(name)] += e
            if self.peek()[1] == '*' and self.tokens[self.i + 1][0] == 'name':
                self.take('op', '*')
            else:
                break
        return tuple(exps), coeff


# module-level operations

def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def mul_schoolbook(f: Polynomial, g: Polynomial) -> Polynomial:
    '''Product by repeated addition of single-term products'''
    if f.space != g.space:
        raise SpaceMismatchError(f'{f.space!r} vs {g.space!r}')
    result = f.space.zero()
    for m1, c1 in f.terms():
        for m2, c2 in g.terms():
            result = result + f.space.from_dict({monomial_mul(m1, m2): c1 * c2})
    return result


def exact_div(f: Polynomial, g: Polynomial) -> Polynomial:
    return f.exact_div(g)


def weighted_degree(f: Polynomial) -> Optional[int]:
    return f.weighted_degree()


def is_quasi_homogeneous(f: Polynomial) -> bool:
    return f.is_quasi_homogeneous()


def substitute(f: Polynomial, bindings: Mapping[str, object],
               target: Optional[VariableSpace] = None) -> Polynomial:
    return f.substitute(bindings, target)


def evaluate(f: Polynomial, point: Mapping[str, object]):
    return f.evaluate(point)


def serialize(f: Polynomial, integer: bool = False) -> bytes:
    return f.serialize(integer)


def parse(text: Union[bytes, str], space: VariableSpace) -> Polynomial:
    if isinstance(text, bytes):
        text = text.decode('utf-8')
    return _Parser(text, space).parse()


def product(factors: Iterable[Polynomial], space: VariableSpace) -> Polynomial:
    result = space.one()
    for f in factors:
        result = result * f
    return result
