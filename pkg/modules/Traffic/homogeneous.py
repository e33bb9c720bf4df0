"""
Degree-one homogeneous min-plus maps.

Each coordinate of f(x) is a minimum of terms c + sum_k e_k x_k with
rational exponents summing to one, so f(c + x) = c + f(x). A term may also
read coordinates already updated in the same step ("fresh" exponents),
which is how priority rules at crossings are written.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import BadConfig, Diverged
from modules.Algebra.semiring import Semiring
from modules.Algebra.tropmat import TropMatrix

def exact(value):
    """
    Rational with integral values reduced to int, which keeps integer
    dynamics on fast integer arithmetic.
    """
    value = Fraction(value)
    return value.numerator if value.denominator == 1 else value

def _sparse(exponents):
    return dict((int(k), exact(e)) for k, e in exponents.items() if e != 0)

@dataclass(frozen=True)
class Term(object):
    constant: object
    exponents: dict = field(default_factory=dict, hash=False)
    fresh: dict = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'constant', exact(self.constant))
        object.__setattr__(self, 'exponents', _sparse(self.exponents))
        object.__setattr__(self, 'fresh', _sparse(self.fresh))

    @property
    def degree(self):
        return sum(self.exponents.values()) + sum(self.fresh.values())

    def evaluate(self, x, y=None):
        value = self.constant
        for k, e in self.exponents.items():
            value += e * x[k]
        for k, e in self.fresh.items():
            value += e * y[k]
        return value

class HomogeneousMap(object):
    """
    Coordinates are evaluated in the given order; fresh exponents may only
    refer to coordinates evaluated before.
    """
    def __init__(self, dim, terms, order=None):
        if dim < 1:
            raise BadConfig('maps need at least one coordinate')
        if len(terms) != dim:
            raise BadConfig('%d term lists for a map of dimension %d' % (len(terms), dim))
        self.dim = dim
        self.terms = tuple(tuple(t) for t in terms)
        self.order = tuple(range(dim)) if order is None else tuple(order)

        if sorted(self.order) != list(range(dim)):
            raise BadConfig('evaluation order must be a permutation of the coordinates')

        done = set()
        for i in self.order:
            if not self.terms[i]:
                raise BadConfig('coordinate %d has no term' % i)
            for term in self.terms[i]:
                if term.degree != 1:
                    raise BadConfig('term of coordinate %d has degree %s, not 1' % (i, term.degree))
                for k in list(term.exponents) + list(term.fresh):
                    if not 0 <= k < dim:
                        raise BadConfig('term of coordinate %d reads coordinate %d' % (i, k))
                for k in term.fresh:
                    if k not in done:
                        raise BadConfig('coordinate %d reads %d before it is updated' % (i, k))
            done.add(i)

    def __call__(self, x):
        y = [None] * self.dim
        for i in self.order:
            y[i] = min(term.evaluate(x, y) for term in self.terms[i])
        return tuple(y)

    def is_linear(self):
        """
        Min-plus linear: every term reads one old coordinate with exponent one.
        """
        return all(not t.fresh and list(t.exponents.values()) == [1]
                   for terms in self.terms for t in terms)

    def to_matrix(self):
        if not self.is_linear():
            raise BadConfig('map is not min-plus linear')
        rows = [[None] * self.dim for _ in range(self.dim)]
        for i, terms in enumerate(self.terms):
            for t in terms:
                k = next(iter(t.exponents))
                if rows[i][k] is None or t.constant < rows[i][k]:
                    rows[i][k] = t.constant
        return TropMatrix(Semiring.MIN_PLUS, tuple(tuple(row) for row in rows))

    @classmethod
    def from_matrix(cls, A):
        if A.tag is not Semiring.MIN_PLUS or not A.square:
            raise BadConfig('min-plus square matrix expected')
        return cls(A.rows, [[Term(v, {j: 1}) for j, v in enumerate(row) if v is not None]
                            for row in A.data])

@dataclass
class HomIteration(object):
    trajectory: list
    throughput: Fraction
    rate: Fraction = None
    period: int = None
    max_denominator: int = None

    @property
    def exact(self):
        """
        Growth rate over one detected period, else the averaged estimate
        snapped to the nearest rational with denominator at most
        max_denominator. Orbits converging geometrically to a periodic
        regime never repeat exactly but still have a rational rate.
        """
        if self.rate is not None:
            return self.rate
        if self.max_denominator is None:
            return self.throughput
        return exact(self.throughput.limit_denominator(self.max_denominator))

def _spread(x):
    return max(x) - min(x)

def hom_iterate(f, x0, K, max_denominator=None):
    """
    x^{k+1} = f(x^k) for K steps. The throughput is the mean over the
    coordinates of (x^K - x^h) / (K - h) with h = K // 2; when the shape
    x - min x repeats in the second half, the exact rate over that period
    is reported too. max_denominator bounds the denominator of the rate
    reported by exact when no period shows up.
    """
    if K < 2:
        raise ValueError('at least two steps are needed')
    if len(x0) != f.dim:
        raise BadConfig('initial vector of length %d for a map of dimension %d' % (len(x0), f.dim))

    half = K // 2
    x = tuple(exact(v) for v in x0)
    trajectory = [x]
    seen = {}
    rate, period = None, None

    for k in range(1, K + 1):
        x = f(x)
        if _spread(x) > config.DIVERGENCE_BOUND:
            raise Diverged('coordinate spread %s exceeds %s after %d steps'
                           % (_spread(x), config.DIVERGENCE_BOUND, k))
        trajectory.append(x)

        if k >= half and rate is None:
            low = min(x)
            key = tuple(v - low for v in x)
            if key in seen:
                start = seen[key]
                period = k - start
                rate = Fraction(x[0] - trajectory[start][0], period)
            else:
                seen[key] = k

    first = trajectory[half]
    throughput = Fraction(sum(a - b for a, b in zip(x, first)), f.dim * (K - half))
    log.debug('throughput %s after %d steps (period %s)' % (throughput, K, period))
    return HomIteration(trajectory, throughput, rate, period, max_denominator)

def cw_bracket(f, u):
    """
    (min_i (f(u) - u)_i, max_i (f(u) - u)_i); any eigenvalue of a monotone
    homogeneous map lies in between.
    """
    gaps = [a - b for a, b in zip(f(u), u)]
    return min(gaps), max(gaps)

class ReducedMap(object):
    """
    Fixed-point form of the eigenproblem of f: the pivot coordinate is set to
    zero, y holds the others, g(y) = f(x) - f(x)_pivot on the others and the
    eigenvalue is f(x)_pivot at a fixed point.
    """
    def __init__(self, f, pivot=0):
        if not 0 <= pivot < f.dim:
            raise BadConfig('pivot %d outside dimension %d' % (pivot, f.dim))
        self.f = f
        self.pivot = pivot
        self.others = [i for i in range(f.dim) if i != pivot]

    @property
    def dim(self):
        return len(self.others)

    def lift(self, y):
        x = [0] * self.f.dim
        for i, v in zip(self.others, y):
            x[i] = v
        return tuple(x)

    def __call__(self, y):
        image = self.f(self.lift(y))
        return tuple(image[i] - image[self.pivot] for i in self.others)

    def eigenvalue(self, y):
        return self.f(self.lift(y))[self.pivot]

    def is_fixed_point(self, y):
        return self(y) == tuple(exact(v) for v in y)

def eigen_reduce(f, pivot=0):
    return ReducedMap(f, pivot)
