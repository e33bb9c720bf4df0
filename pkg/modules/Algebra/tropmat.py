"""
Dense matrices and vectors over a tagged semiring.
"""
from dataclasses import dataclass
import logging
log = logging.getLogger(__name__)

from core.errors import DimensionMismatch, ZeroColumn, Divergent, UnsupportedSemiring, EmptySupport
from modules.Algebra import semiring as sr
from modules.Algebra.semiring import Semiring, TropScalar, Interval
from modules.Algebra.graph import karp

def meet(tag, a, b):
    """
    Greatest lower bound in the canonical order.
    """
    return a if sr.le(tag, a, b) else b

@dataclass(frozen=True)
class TropVector(object):
    tag: Semiring
    data: tuple

    def __post_init__(self):
        if not isinstance(self.tag, Semiring):
            raise TypeError('vector tag must be a Semiring, got %r' % (self.tag,))
        object.__setattr__(self, 'data', tuple(sr.coerce(self.tag, v) for v in self.data))

    @classmethod
    def of(cls, values, tag=Semiring.MAX_PLUS):
        return cls(tag, tuple(values))

    @classmethod
    def zeros(cls, n, tag=Semiring.MAX_PLUS):
        return cls(tag, (None,) * n)

    @classmethod
    def unit(cls, n, j, tag=Semiring.MAX_PLUS):
        return cls(tag, tuple(tag.one if i == j else None for i in range(n)))

    def __len__(self):
        return len(self.data)

    def __getitem__(self, i):
        return self.data[i]

    def __iter__(self):
        return iter(self.data)

    def scalar(self, i):
        return TropScalar(self.data[i], self.tag)

    def support(self):
        return frozenset(i for i, v in enumerate(self.data) if v is not None)

    @property
    def is_zero(self):
        return all(v is None for v in self.data)

    def __add__(self, other):
        sr.check_tags(self.tag, other.tag)
        check_length(self, other)
        return TropVector(self.tag, tuple(sr.add(self.tag, a, b) for a, b in zip(self.data, other.data)))

    def shift(self, c):
        """
        c (x) x for a raw scalar c.
        """
        return TropVector(self.tag, tuple(sr.mul(self.tag, c, v) for v in self.data))

    def __le__(self, other):
        sr.check_tags(self.tag, other.tag)
        check_length(self, other)
        return all(sr.le(self.tag, a, b) for a, b in zip(self.data, other.data))

    def __str__(self):
        return '(%s)' % ', '.join(sr.fmt(self.tag, v) for v in self.data)

def check_length(x, y):
    if len(x) != len(y):
        raise DimensionMismatch('vector lengths %d and %d' % (len(x), len(y)))

@dataclass(frozen=True)
class TropMatrix(object):
    """
    Row-major matrix of raw semiring values.
    """
    tag: Semiring
    data: tuple

    def __post_init__(self):
        if not isinstance(self.tag, Semiring):
            raise TypeError('matrix tag must be a Semiring, got %r' % (self.tag,))
        rows = tuple(tuple(sr.coerce(self.tag, v) for v in row) for row in self.data)
        if not rows or not rows[0]:
            raise DimensionMismatch('matrices must have at least one row and column')
        if any(len(row) != len(rows[0]) for row in rows):
            raise DimensionMismatch('ragged matrix rows')
        object.__setattr__(self, 'data', rows)

    @classmethod
    def of(cls, rows, tag=Semiring.MAX_PLUS):
        return cls(tag, tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n, tag=Semiring.MAX_PLUS):
        return cls(tag, tuple(tuple(tag.one if i == j else None for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows, cols, tag=Semiring.MAX_PLUS):
        return cls(tag, ((None,) * cols,) * rows)

    @classmethod
    def from_columns(cls, columns, tag=None):
        """
        Matrix whose columns are the given vectors.
        """
        columns = list(columns)
        if not columns:
            raise DimensionMismatch('no columns given')
        tag = tag or columns[0].tag
        for column in columns:
            sr.check_tags(tag, column.tag)
            check_length(columns[0], column)
        return cls(tag, tuple(zip(*[c.data for c in columns])))

    @property
    def rows(self):
        return len(self.data)

    @property
    def cols(self):
        return len(self.data[0])

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def square(self):
        return self.rows == self.cols

    def __getitem__(self, index):
        i, j = index
        return self.data[i][j]

    def row(self, i):
        return TropVector(self.tag, self.data[i])

    def column(self, j):
        return TropVector(self.tag, tuple(row[j] for row in self.data))

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return TropMatrix(self.tag, tuple(zip(*self.data)))

    def map(self, function):
        return TropMatrix(self.tag, tuple(tuple(function(v) for v in row) for row in self.data))

    def shift(self, c):
        """
        c (x) A for a raw scalar c.
        """
        return self.map(lambda v: sr.mul(self.tag, c, v))

    def __add__(self, other):
        sr.check_tags(self.tag, other.tag)
        if self.shape != other.shape:
            raise DimensionMismatch('%dx%d against %dx%d' % (self.shape + other.shape))
        return TropMatrix(self.tag, tuple(
            tuple(sr.add(self.tag, a, b) for a, b in zip(r, s))
            for r, s in zip(self.data, other.data)))

    def __matmul__(self, other):
        if isinstance(other, TropVector):
            return mat_vec(self, other)
        return mat_mul(self, other)

    def __le__(self, other):
        sr.check_tags(self.tag, other.tag)
        if self.shape != other.shape:
            raise DimensionMismatch('%dx%d against %dx%d' % (self.shape + other.shape))
        return all(sr.le(self.tag, a, b)
                   for r, s in zip(self.data, other.data) for a, b in zip(r, s))

    def __str__(self):
        return '\n'.join(' '.join(sr.fmt(self.tag, v) for v in row) for row in self.data)

def mat_mul(A, B):
    """
    C_ik = (+)_j A_ij (x) B_jk.
    """
    tag = sr.check_tags(A.tag, B.tag)
    if A.cols != B.rows:
        raise DimensionMismatch('cannot multiply %dx%d by %dx%d' % (A.shape + B.shape))

    columns = list(zip(*B.data))
    return TropMatrix(tag, tuple(
        tuple(sr.oplus(tag, (sr.mul(tag, a, b) for a, b in zip(row, column)))
              for column in columns)
        for row in A.data))

def mat_vec(A, x):
    tag = sr.check_tags(A.tag, x.tag)
    if A.cols != len(x):
        raise DimensionMismatch('cannot apply %dx%d to a vector of length %d' % (A.shape + (len(x),)))
    return TropVector(tag, tuple(
        sr.oplus(tag, (sr.mul(tag, a, b) for a, b in zip(row, x.data))) for row in A.data))

def mat_power(A, k):
    if not A.square:
        raise DimensionMismatch('power of a non-square matrix')
    result = TropMatrix.identity(A.rows, A.tag)
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        k >>= 1
    return result

def vec_residual(x, y):
    """
    x / y: the greatest scalar l with l (x) y <= x.
    """
    tag = sr.check_tags(x.tag, y.tag)
    check_length(x, y)

    result = None
    found = False
    for a, b in zip(x.data, y.data):
        if b is None:
            continue
        value = sr.residual(tag, a, b)
        result = value if not found else meet(tag, result, value)
        found = True

    if not found:
        raise EmptySupport('residual by the zero vector')
    return result

def mat_residual_left(V, x):
    """
    V \\ x: the greatest l with V (x) l <= x.
    """
    tag = sr.check_tags(V.tag, x.tag)
    if V.rows != len(x):
        raise DimensionMismatch('%dx%d matrix against vector of length %d' % (V.shape + (len(x),)))

    result = []
    for j, column in enumerate(V.columns()):
        if column.is_zero:
            raise ZeroColumn('column %d is zero' % j)
        result.append(vec_residual(x, column))
    return TropVector(tag, tuple(result))

def _closure(A):
    """
    (I (+) A)^(n-1) by repeated squaring.
    """
    closure = TropMatrix.identity(A.rows, A.tag) + A
    length = 1
    while length < A.rows - 1:
        closure = mat_mul(closure, closure)
        length *= 2
    return closure

def kleene_star(A):
    """
    A* = I (+) A (+) A^2 (+) ..., the optimal path closure of A.
    """
    if not A.square:
        raise DimensionMismatch('star of a %dx%d matrix' % A.shape)

    if A.tag is Semiring.MAX_TIMES:
        raise UnsupportedSemiring('star is not provided over max-times')

    if A.tag.additive:
        data = A.data
        if A.tag is Semiring.MIN_PLUS:
            data = tuple(tuple(sr.negate(v) for v in row) for row in data)

        mean = karp(data)
        if mean is not None and mean > 0:
            raise Divergent('matrix has a cycle of weight above the unit (cycle mean %s)'
                            % sr.fmt(A.tag, mean if A.tag is Semiring.MAX_PLUS else -mean))

    star = _closure(A)
    log.debug('star of %dx%d matrix computed' % A.shape)
    return star

def kleene_plus(A):
    """
    A (x) A*.
    """
    return mat_mul(A, kleene_star(A))

@dataclass(frozen=True)
class IntervalMatrix(object):
    lo: TropMatrix
    hi: TropMatrix

    def __post_init__(self):
        sr.check_tags(self.lo.tag, self.hi.tag)
        if self.lo.shape != self.hi.shape:
            raise DimensionMismatch('endpoint matrices differ in shape')
        if not self.lo <= self.hi:
            raise ValueError('interval matrix endpoints out of order')

    @property
    def tag(self):
        return self.lo.tag

    @property
    def shape(self):
        return self.lo.shape

    def __getitem__(self, index):
        i, j = index
        return Interval(TropScalar(self.lo[i, j], self.tag), TropScalar(self.hi[i, j], self.tag))

    def __contains__(self, A):
        return self.lo <= A and A <= self.hi

def iv_kleene_star(A):
    """
    Entrywise [lo*, hi*]; star is isotone, so the endpoints are exact.
    """
    hi = kleene_star(A.hi)
    return IntervalMatrix(kleene_star(A.lo), hi)

def iv_mat_mul(A, B):
    return IntervalMatrix(mat_mul(A.lo, B.lo), mat_mul(A.hi, B.hi))
