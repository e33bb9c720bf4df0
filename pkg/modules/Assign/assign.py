"""
Finite idempotent assignment: the Galois pair (B, B^T), sub-differentials,
strong regularity with dual certificates, the strongly normal form, and
optimal distances and potentials of an assignment.

Vectors here are ordinary rational tuples; matrix entries may be None (-inf).
"""
from dataclasses import dataclass
from itertools import permutations
import numpy as np
from scipy.optimize import linear_sum_assignment
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import BadConfig, NotStronglyRegular, CertificateInvalid, ImprovingCycle, Divergent
from modules.Algebra.semiring import Semiring
from modules.Algebra.tropmat import TropMatrix, kleene_star
from modules.Algebra.graph import karp

@dataclass(frozen=True)
class AssignMatrix(object):
    """
    Square max-plus matrix with a finite entry in every row and column.
    """
    matrix: TropMatrix

    def __post_init__(self):
        A = self.matrix
        if A.tag is not Semiring.MAX_PLUS:
            raise BadConfig('assignment matrices are max-plus, got %s' % A.tag.value)
        if not A.square:
            raise BadConfig('assignment matrices are square, got %dx%d' % A.shape)
        for i, row in enumerate(A.data):
            if all(v is None for v in row):
                raise BadConfig('row %d has no finite entry' % i)
        for j, column in enumerate(zip(*A.data)):
            if all(v is None for v in column):
                raise BadConfig('column %d has no finite entry' % j)

    @classmethod
    def of(cls, rows):
        return cls(TropMatrix.of(rows))

    @property
    def n(self):
        return self.matrix.rows

    def __getitem__(self, index):
        return self.matrix[index]

    def transpose(self):
        return AssignMatrix(self.matrix.transpose())

@dataclass(frozen=True)
class Subdifferential(object):
    sets: tuple
    inverse: tuple
    covering: bool
    minimal: bool

@dataclass(frozen=True)
class RegularityCertificate(object):
    bijection: tuple
    f: tuple
    g: tuple
    strongly_regular: bool = True
    # enumeration or solver; strong_regularity verifies both exactly
    search: str = 'enumeration'

def apply_B(B, f, transpose=False):
    """
    (B f)_i = max_j (b_ij - f_j); with transpose, b_ji replaces b_ij.
    """
    M = B.transpose() if transpose else B
    if len(f) != M.n:
        raise BadConfig('vector of length %d against a %d-matrix' % (len(f), M.n))
    return tuple(max(b - fj for b, fj in zip(row, f) if b is not None) for row in M.matrix.data)

def subdifferential(B, g, transpose=False):
    """
    d g(i) = {k : (B^T g)_k = b_ik - g_i}, the inverse family and whether
    the inverse family is a (minimal) covering. With transpose the roles of
    B and B^T are exchanged, giving the sub-differential of f under B.
    """
    M = B.transpose() if transpose else B
    image = apply_B(M, g, transpose=True)
    n = M.n

    sets = []
    for i in range(n):
        sets.append(frozenset(k for k in range(n)
                              if M[i, k] is not None and image[k] == M[i, k] - g[i]))
    inverse = tuple(frozenset(i for i in range(n) if j in sets[i]) for j in range(n))

    covering = all(sets)
    minimal = covering and all(any(s == frozenset([j]) for s in sets) for j in range(n))
    return Subdifferential(tuple(sets), inverse, covering, minimal)

def _value(B, perm):
    total = 0
    for i, j in enumerate(perm):
        if B[i, j] is None:
            return None
        total += B[i, j]
    return total

def _brute_force(B):
    best, best_perm, runner_up = None, None, None
    for perm in permutations(range(B.n)):
        value = _value(B, perm)
        if value is None:
            continue
        if best is None or value > best:
            best, best_perm, runner_up = value, perm, None
        elif value == best and runner_up is None:
            runner_up = perm

    if best is None:
        raise NotStronglyRegular('no finite assignment exists')
    if runner_up is not None:
        raise NotStronglyRegular('optimal assignment is not unique', witness=runner_up)
    return best_perm

def _solver(B):
    """
    Optimal bijection from the scipy assignment solver on a float copy.
    """
    finite = [v for row in B.matrix.data for v in row if v is not None]
    penalty = float(min(finite)) - 1.0 - float(max(finite) - min(finite)) * B.n
    cost = np.array([[penalty if v is None else float(v) for v in row] for row in B.matrix.data])
    rows, cols = linear_sum_assignment(cost, maximize=True)
    perm = tuple(int(c) for _, c in sorted(zip(rows, cols)))
    if _value(B, perm) is None:
        raise NotStronglyRegular('no finite assignment exists')
    return perm

def _switch_matrix(B, F):
    """
    w_ij = b_iF(j) - b_iF(i) for i != j: the gain of moving i onto F(j).
    """
    n = B.n
    return tuple(tuple(None if i == j or B[i, F[j]] is None else B[i, F[j]] - B[i, F[i]]
                       for j in range(n)) for i in range(n))

def strong_regularity(B):
    """
    Unique optimal bijection F with dual vectors f, g such that
    b_iF(i) - f_F(i) > b_ik - f_k for every k != F(i).
    """
    n = B.n
    search = 'enumeration' if n <= config.PERM_CAP else 'solver'
    F = _brute_force(B) if search == 'enumeration' else _solver(B)

    w = _switch_matrix(B, F)
    mean = karp(w)
    if mean is not None and mean > 0:
        raise CertificateInvalid('assignment %s is not optimal' % (F,))
    if mean is not None and mean == 0:
        raise NotStronglyRegular('a zero-gain reassignment cycle exists', witness=F)

    delta = 1 if mean is None else -mean / 2
    shifted = TropMatrix(Semiring.MAX_PLUS, tuple(
        tuple(None if v is None else v + delta for v in row) for row in w))
    star = kleene_star(shifted)

    h = [max(star[i, j] for i in range(n) if star[i, j] is not None) for j in range(n)]
    f = [None] * n
    for j in range(n):
        f[F[j]] = h[j]
    g = tuple(B[i, F[i]] - f[F[i]] for i in range(n))

    log.info('strongly regular with bijection %s' % (F,))
    return RegularityCertificate(tuple(F), tuple(f), g, True, search)

def normal_form(B, cert):
    """
    c_ij = b_iF(j) - f_F(j) - g_i, strongly normal when the certificate holds.
    """
    if not cert.strongly_regular:
        raise CertificateInvalid('certificate is not marked strongly regular')
    F, f, g = cert.bijection, cert.f, cert.g
    n = B.n

    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            b = B[i, F[j]]
            row.append(None if b is None else b - f[F[j]] - g[i])
        rows.append(tuple(row))

    for i in range(n):
        for j in range(n):
            value = rows[i][j]
            if i == j and value != 0:
                raise CertificateInvalid('diagonal entry %d of the normal form is %s' % (i, value))
            if i != j and value is not None and value >= 0:
                raise CertificateInvalid('off-diagonal entry (%d, %d) is not negative' % (i, j))

    return AssignMatrix(TropMatrix(Semiring.MAX_PLUS, tuple(rows)))

def similar(B, C, H, K, phi, psi):
    """
    c_ij = b_H(i)K(j) - phi_i - psi_j for all i, j.
    """
    n = B.n
    for i in range(n):
        for j in range(n):
            b = B[H[i], K[j]]
            expected = None if b is None else b - phi[i] - psi[j]
            if C[i, j] != expected:
                return False
    return True

def generalized_inverse_holds(B, g):
    """
    B (B^T g) == g, true exactly for g in the image of B.
    """
    return apply_B(B, apply_B(B, g, transpose=True)) == tuple(g)

def _check_bijection(F, n):
    if sorted(F) != list(range(n)):
        raise BadConfig('%s is not a permutation of %d elements' % (F, n))

def distances_potentials(B, F):
    """
    Optimal distances (the star of d_ij = b_iF(j) - b_jF(j)) and the
    potentials phi_i = max_j d*_ij, phi~_i = max_j d*_ji.
    """
    n = B.n
    _check_bijection(F, n)

    d = TropMatrix(Semiring.MAX_PLUS, tuple(
        tuple(None if B[i, F[j]] is None else B[i, F[j]] - B[j, F[j]] for j in range(n))
        for i in range(n)))
    try:
        distances = kleene_star(d)
    except Divergent as e:
        raise ImprovingCycle('assignment %s admits an improving cycle (%s)' % (tuple(F), e))

    phi = tuple(max(v for v in distances.row(i) if v is not None) for i in range(n))
    phi_tilde = tuple(max(v for v in distances.column(i) if v is not None) for i in range(n))
    return distances, phi, phi_tilde
