"""
Scalar arithmetic over the idempotent semirings used throughout tropkit.

Raw values are exact Fractions; the semiring zero is represented by None for
every tag so that max-plus -inf, min-plus +inf, max-times 0 and boolean false
share one encoding. Booleans store true as Fraction(1).
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core.errors import TagMismatch, UnsupportedSemiring, DivisionByBottom, Divergent

class Semiring(Enum):
    MAX_PLUS = 'max-plus'
    MIN_PLUS = 'min-plus'
    MAX_TIMES = 'max-times'
    BOOLEAN = 'boolean'

    @property
    def one(self):
        return Fraction(0) if self.additive else Fraction(1)

    @property
    def zero(self):
        return None

    @property
    def additive(self):
        """
        True when multiplication is ordinary addition.
        """
        return self in (Semiring.MAX_PLUS, Semiring.MIN_PLUS)

    @property
    def bottom_token(self):
        return '+inf' if self is Semiring.MIN_PLUS else '-inf'

def coerce(tag, value):
    """
    Normalise a Python value to the raw representation of tag.
    """
    if value is None:
        return None

    if isinstance(value, str):
        token = value.strip()
        if token in ('-inf', '+inf', 'inf'):
            if token != tag.bottom_token and not (token == 'inf' and tag is Semiring.MIN_PLUS):
                raise ValueError('%s is not the zero of %s' % (token, tag.value))
            return None
        value = Fraction(token)

    if isinstance(value, float):
        raise TypeError('floating point values are not accepted: %r' % value)

    if tag is Semiring.BOOLEAN:
        return Fraction(1) if value else None

    value = Fraction(value)

    if tag is Semiring.MAX_TIMES:
        if value < 0:
            raise ValueError('max-times values must be nonnegative, got %s' % value)
        if value == 0:
            return None

    return value

def _mirrored(op, a, b):
    """
    Min-plus op through the negation isomorphism onto max-plus.
    """
    return negate(op(Semiring.MAX_PLUS, negate(a), negate(b)))

def add(tag, a, b):
    """
    a (+) b on raw values.
    """
    if tag is Semiring.MIN_PLUS:
        return _mirrored(add, a, b)
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)

def mul(tag, a, b):
    """
    a (x) b on raw values; zero is absorbing.
    """
    if tag is Semiring.MIN_PLUS:
        return _mirrored(mul, a, b)
    if a is None or b is None:
        return None
    if tag.additive:
        return a + b
    return a * b

def le(tag, a, b):
    """
    Canonical order: a <= b iff a (+) b == b.
    """
    return add(tag, a, b) == b

def lt(tag, a, b):
    return a != b and le(tag, a, b)

def oplus(tag, values):
    total = None
    for value in values:
        total = add(tag, total, value)
    return total

def otimes(tag, values):
    product = tag.one
    for value in values:
        product = mul(tag, product, value)
        if product is None:
            return None
    return product

def power(tag, a, k):
    """
    k-fold product of a, k >= 0.
    """
    if k == 0:
        return tag.one
    if a is None:
        return None
    if tag.additive:
        return a * k
    if tag is Semiring.BOOLEAN:
        return a
    return a ** k

def residual(tag, x, y):
    """
    Greatest l with l (x) y <= x.
    """
    if tag is Semiring.BOOLEAN:
        raise UnsupportedSemiring('residuation is not defined over the boolean semiring')
    if y is None:
        raise DivisionByBottom('residual by the zero of %s' % tag.value)
    if tag is Semiring.MIN_PLUS:
        return _mirrored(residual, x, y)
    if x is None:
        return None
    if tag.additive:
        return x - y
    return x / y

def star(tag, a):
    """
    1 (+) a (+) a^2 (+) ...
    """
    if tag is Semiring.BOOLEAN:
        return Fraction(1)
    if tag is Semiring.MAX_TIMES:
        raise UnsupportedSemiring('star is not provided over max-times')
    if a is None or le(tag, a, tag.one):
        return tag.one
    raise Divergent('star of %s diverges over %s' % (a, tag.value))

def negate(a):
    return None if a is None else -a

def fmt(tag, a):
    if a is None:
        return tag.bottom_token
    if a.denominator == 1:
        return str(a.numerator)
    return '%d/%d' % (a.numerator, a.denominator)

def check_tags(*tags):
    first = tags[0]
    for tag in tags[1:]:
        if tag is not first:
            raise TagMismatch('%s against %s' % (first.value, tag.value))
    return first

@dataclass(frozen=True)
class TropScalar(object):
    """
    Element of a tagged semiring. `+` is (+), `*` is (x), `/` is the residual
    and `<=` the canonical order.
    """
    value: object
    tag: Semiring = Semiring.MAX_PLUS

    def __post_init__(self):
        object.__setattr__(self, 'value', coerce(self.tag, self.value))

    @classmethod
    def zero(cls, tag=Semiring.MAX_PLUS):
        return cls(None, tag)

    @classmethod
    def one(cls, tag=Semiring.MAX_PLUS):
        return cls(tag.one, tag)

    @property
    def is_zero(self):
        return self.value is None

    def _other(self, other):
        if not isinstance(other, TropScalar):
            other = TropScalar(other, self.tag)
        check_tags(self.tag, other.tag)
        return other

    def __add__(self, other):
        other = self._other(other)
        return TropScalar(add(self.tag, self.value, other.value), self.tag)

    def __mul__(self, other):
        other = self._other(other)
        return TropScalar(mul(self.tag, self.value, other.value), self.tag)

    def __truediv__(self, other):
        other = self._other(other)
        return TropScalar(residual(self.tag, self.value, other.value), self.tag)

    def __pow__(self, k):
        if k < 0:
            raise ValueError('negative powers need the residual')
        return TropScalar(power(self.tag, self.value, k), self.tag)

    def __le__(self, other):
        return le(self.tag, self.value, self._other(other).value)

    def __lt__(self, other):
        return lt(self.tag, self.value, self._other(other).value)

    def __ge__(self, other):
        return self._other(other) <= self

    def __gt__(self, other):
        return self._other(other) < self

    def star(self):
        return TropScalar(star(self.tag, self.value), self.tag)

    def __str__(self):
        return fmt(self.tag, self.value)

def sr_add(a, b):
    return a + b

def sr_mul(a, b):
    return a * b

def sr_residual(x, y):
    return x / y

def sr_star(a):
    return a.star()

@dataclass(frozen=True)
class Interval(object):
    """
    Closed interval [lo, hi] in the canonical order of one semiring.
    """
    lo: TropScalar
    hi: TropScalar

    def __post_init__(self):
        check_tags(self.lo.tag, self.hi.tag)
        if not self.lo <= self.hi:
            raise ValueError('interval endpoints out of order: [%s, %s]' % (self.lo, self.hi))

    @classmethod
    def of(cls, lo, hi, tag=Semiring.MAX_PLUS):
        return cls(TropScalar(lo, tag), TropScalar(hi, tag))

    @classmethod
    def point(cls, a):
        return cls(a, a)

    @property
    def tag(self):
        return self.lo.tag

    def __contains__(self, x):
        if not isinstance(x, TropScalar):
            x = TropScalar(x, self.tag)
        return self.lo <= x <= self.hi

    def __str__(self):
        return '[%s, %s]' % (self.lo, self.hi)

def iv_binary(op, a, b):
    """
    Exact image of an interval pair under add, mul or residual. Add and mul
    are isotone in both arguments; the residual is isotone in the first and
    antitone in the second.
    """
    check_tags(a.tag, b.tag)

    if op == 'add':
        return Interval(a.lo + b.lo, a.hi + b.hi)
    if op == 'mul':
        return Interval(a.lo * b.lo, a.hi * b.hi)
    if op == 'residual':
        if b.lo.is_zero:
            raise DivisionByBottom('interval residual by an interval containing zero')
        return Interval(a.lo / b.hi, a.hi / b.lo)

    raise ValueError('unknown interval operation %r' % op)
