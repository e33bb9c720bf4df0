"""
Matrix invariants over a commutative idempotent semiring: bideterminant,
permanent, rook coefficients and singularity tests, plus the standard
transformations X -> P D X E Q that preserve them.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import TooLarge, DimensionMismatch
from modules.Algebra import semiring as sr
from modules.Algebra.semiring import TropScalar
from modules.Algebra.tropmat import TropMatrix, mat_mul

@dataclass(frozen=True)
class Bideterminant(object):
    """
    (+)-sums of the diagonal products over even and odd permutations.
    """
    plus: TropScalar
    minus: TropScalar

class PatternSingularity(Enum):
    NONE = 'none'
    RIGHT = 'right'
    LEFT = 'left'
    BOTH = 'both'

def parity(perm):
    """
    0 for even permutations, 1 for odd ones.
    """
    inversions = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inversions += 1
    return inversions % 2

def _square(A, cap, what):
    if not A.square:
        raise DimensionMismatch('%s of a %dx%d matrix' % ((what,) + A.shape))
    if A.rows > cap:
        raise TooLarge('%s enumerates n! permutations, n = %d exceeds %d' % (what, A.rows, cap))

def _weights(A):
    """
    (permutation, diagonal product) for every permutation of the columns.
    """
    n = A.rows
    for perm in permutations(range(n)):
        yield perm, sr.otimes(A.tag, (A.data[i][perm[i]] for i in range(n)))

def bideterminant(A):
    _square(A, config.PERM_CAP, 'bideterminant')

    sums = [None, None]
    for perm, weight in _weights(A):
        side = parity(perm)
        sums[side] = sr.add(A.tag, sums[side], weight)
    return Bideterminant(TropScalar(sums[0], A.tag), TropScalar(sums[1], A.tag))

def permanent(A):
    _square(A, config.PERM_CAP, 'permanent')
    return TropScalar(sr.oplus(A.tag, (w for _, w in _weights(A))), A.tag)

def rook_coefficients(A):
    """
    p_0 = 1 and p_j = (+) of the permanents of all j x j submatrices.
    """
    m, n = A.shape
    if m > config.ROOK_CAP or n > config.ROOK_CAP:
        raise TooLarge('rook coefficients of a %dx%d matrix exceed the cap of %d' % (m, n, config.ROOK_CAP))

    coefficients = [TropScalar.one(A.tag)]
    for j in range(1, min(m, n) + 1):
        total = None
        for rows in combinations(range(m), j):
            for cols in permutations(range(n), j):
                total = sr.add(A.tag, total, sr.otimes(A.tag, (A.data[r][c] for r, c in zip(rows, cols))))
        coefficients.append(TropScalar(total, A.tag))
    return coefficients

def _best_attained_twice(A):
    best = None
    count = 0
    for _, weight in _weights(A):
        if count and weight == best:
            count += 1
        elif not count or sr.lt(A.tag, best, weight):
            best, count = weight, 1
    return count >= 2

def _balanced_subset(A):
    """
    Some nonempty proper subset T of the permutations with
    (+)_{T} w = (+)_{not T} w.
    """
    weights = [w for _, w in _weights(A)]
    total = len(weights)
    for mask in range(1, (1 << total) - 1):
        inside = sr.oplus(A.tag, (w for k, w in enumerate(weights) if mask >> k & 1))
        outside = sr.oplus(A.tag, (w for k, w in enumerate(weights) if not mask >> k & 1))
        if inside == outside:
            return True
    return False

def is_trop_singular(A, exhaustive=False):
    """
    True when the (+)-best permutation weight is attained at least twice.
    The exhaustive variant searches for a balancing set of permutations.
    """
    if exhaustive:
        _square(A, config.SUBSET_SINGULAR_CAP, 'subset singularity')
        return _balanced_subset(A)
    _square(A, config.PERM_CAP, 'tropical singularity')
    return _best_attained_twice(A)

def is_pattern_singular(A):
    """
    Zero-pattern singularity: right when a column is entirely zero, left when
    a row is.
    """
    right = any(all(v is None for v in column) for column in zip(*A.data))
    left = any(all(v is None for v in row) for row in A.data)
    if right and left:
        return PatternSingularity.BOTH
    if right:
        return PatternSingularity.RIGHT
    if left:
        return PatternSingularity.LEFT
    return PatternSingularity.NONE

def permutation_matrix(perm, tag):
    n = len(perm)
    return TropMatrix(tag, tuple(tuple(tag.one if perm[i] == j else None for j in range(n)) for i in range(n)))

def diagonal_matrix(values, tag):
    n = len(values)
    return TropMatrix(tag, tuple(tuple(values[i] if i == j else None for j in range(n)) for i in range(n)))

def _is_permutation(M):
    if not M.square:
        return False
    one = M.tag.one
    for line in list(M.data) + list(zip(*M.data)):
        if sorted(v for v in line if v is not None) != [one]:
            return False
    return True

def _is_invertible_diagonal(M):
    if not M.square:
        return False
    return all((M[i, j] is not None) == (i == j) for i in range(M.rows) for j in range(M.cols))

@dataclass(frozen=True)
class StandardTransform(object):
    """
    X -> P D X E Q, or P D X^T E Q when transpose is set.
    """
    P: TropMatrix
    D: TropMatrix
    E: TropMatrix
    Q: TropMatrix
    transpose: bool = False

    def __post_init__(self):
        sr.check_tags(self.P.tag, self.D.tag, self.E.tag, self.Q.tag)
        for name in ('P', 'Q'):
            if not _is_permutation(getattr(self, name)):
                raise ValueError('%s must be a permutation matrix' % name)
        for name in ('D', 'E'):
            if not _is_invertible_diagonal(getattr(self, name)):
                raise ValueError('%s must be diagonal without zero entries' % name)

    @classmethod
    def identity(cls, rows, cols, tag, transpose=False):
        I, J = TropMatrix.identity(rows, tag), TropMatrix.identity(cols, tag)
        return cls(I, I, J, J, transpose)

def apply_standard_transform(A, T):
    X = A.transpose() if T.transpose else A
    return mat_mul(mat_mul(mat_mul(mat_mul(T.P, T.D), X), T.E), T.Q)
