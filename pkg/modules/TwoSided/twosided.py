"""
Two-sided max-plus inequalities A (x) x <= B (x) x.

A single row a (x) x <= b (x) x has an explicit generating set; systems are
solved row by row through pivot matrices whose stars give candidate
generators, filtered against every row and pruned of redundant columns.
"""
from dataclasses import dataclass
from itertools import product
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import Infeasible, TooLarge, DimensionMismatch, UnsupportedSemiring, Divergent
from modules.Algebra import semiring as sr
from modules.Algebra.semiring import Semiring
from modules.Algebra.tropmat import TropMatrix, TropVector, mat_vec, kleene_star
from modules.Projector.projector import Semimodule, project

MAX_PLUS = Semiring.MAX_PLUS

@dataclass(frozen=True)
class InequalitySystem(object):
    A: TropMatrix
    B: TropMatrix

    def __post_init__(self):
        sr.check_tags(self.A.tag, self.B.tag)
        if self.A.tag is not MAX_PLUS:
            raise UnsupportedSemiring('two-sided systems are solved over max-plus')
        if self.A.shape != self.B.shape:
            raise DimensionMismatch('A is %dx%d but B is %dx%d' % (self.A.shape + self.B.shape))

    @classmethod
    def single(cls, a, b):
        return cls(TropMatrix(a.tag, (a.data,)), TropMatrix(b.tag, (b.data,)))

    @property
    def shape(self):
        return self.A.shape

@dataclass(frozen=True)
class GeneratorSet(object):
    generators: tuple

    def matrix(self):
        return TropMatrix.from_columns(self.generators)

def check_solution(S, x):
    """
    A (x) x <= B (x) x, exactly.
    """
    return mat_vec(S.A, x) <= mat_vec(S.B, x)

def _leq(a, b):
    return sr.le(MAX_PLUS, a, b)

def row_generators(a, b):
    """
    Generators of {x : a (x) x <= b (x) x}: the unit vectors e_j for j in
    J = {j : a_j <= b_j} and e_j (+) (b_j - a_l) e_l for j in J, l outside J.
    """
    sr.check_tags(a.tag, b.tag, MAX_PLUS)
    if len(a) != len(b):
        raise DimensionMismatch('row lengths %d and %d' % (len(a), len(b)))
    n = len(a)

    inside = [j for j in range(n) if _leq(a[j], b[j])]
    if not inside:
        raise Infeasible('b < a in every coordinate, only the zero vector solves the row')
    outside = [l for l in range(n) if l not in inside]

    generators = [TropVector.unit(n, j) for j in inside]
    for j in inside:
        for l in outside:
            data = [None] * n
            data[j] = MAX_PLUS.one
            data[l] = sr.residual(MAX_PLUS, b[j], a[l])
            generators.append(TropVector(MAX_PLUS, tuple(data)))

    log.debug('row with |J| = %d has %d generators' % (len(inside), len(generators)))
    return GeneratorSet(tuple(generators))

def pivot_matrix(a, b, p):
    """
    Identity with row p replaced by (a_j (+) b_j) - b_p. The system
    a (x) x <= b_p (x) x_p is P (x) x <= x restricted to row p.
    """
    n = len(a)
    if b[p] is None:
        raise UnsupportedSemiring('pivot %d has b_p equal to zero' % p)
    rows = []
    for i in range(n):
        if i == p:
            rows.append(tuple(sr.residual(MAX_PLUS, sr.add(MAX_PLUS, a[j], b[j]), b[p]) for j in range(n)))
        else:
            rows.append(tuple(MAX_PLUS.one if j == i else None for j in range(n)))
    return TropMatrix(MAX_PLUS, tuple(rows))

def star_criterion(a, b, p):
    """
    True when the pivot matrix at p has a convergent star, that is b_p is
    finite and a_p <= b_p.
    """
    if b[p] is None:
        return False
    try:
        kleene_star(pivot_matrix(a, b, p))
    except Divergent:
        return False
    return True

def _options(a, b):
    """
    Pivots usable for one row, and None for the branch where the row's
    support is forced to zero.
    """
    options = [p for p in range(len(a)) if b[p] is not None and _leq(a[p], b[p])]
    return options + [None]

def _branch_generators(S, choice):
    """
    Candidate generators for one pivot choice per row: the columns of the star
    of the combined pivot constraints, with forced-zero coordinates removed.
    """
    m, n = S.shape
    forced = set()
    rows = [[None] * n for _ in range(n)]

    for i, p in enumerate(choice):
        a, b = S.A.data[i], S.B.data[i]
        if p is None:
            forced.update(j for j in range(n) if a[j] is not None or b[j] is not None)
            continue
        for j in range(n):
            weight = sr.add(MAX_PLUS, a[j], b[j])
            if weight is not None:
                rows[p][j] = sr.add(MAX_PLUS, rows[p][j], weight - b[p])

    P = TropMatrix(MAX_PLUS, tuple(tuple(row) for row in rows))

    # nodes on cycles of positive weight cannot carry a finite value
    zero = set(forced)
    zero |= _positive_cycle_nodes(_restrict(P, set(range(n)) - zero))

    changed = True
    while changed:
        changed = False
        for z in list(zero):
            for j in range(n):
                if j not in zero and P[z, j] is not None:
                    zero.add(j)
                    changed = True

    keep = sorted(set(range(n)) - zero)
    if not keep:
        return []

    sub = TropMatrix(MAX_PLUS, tuple(tuple(P[i, j] for j in keep) for i in keep))
    star = kleene_star(sub)

    generators = []
    for c in range(len(keep)):
        data = [None] * n
        for r, i in enumerate(keep):
            data[i] = star[r, c]
        generators.append(TropVector(MAX_PLUS, tuple(data)))
    return generators

def _restrict(P, nodes):
    return dict((i, dict((j, P[i, j]) for j in nodes if P[i, j] is not None)) for i in nodes)

def _positive_cycle_nodes(graph):
    """
    Nodes lying on a cycle of positive weight, found by Bellman-Ford style
    relaxation of longest paths.
    """
    nodes = sorted(graph)
    found = set()
    for source in nodes:
        best = {source: 0}
        for _ in range(len(nodes)):
            for i in nodes:
                if i not in best:
                    continue
                for j, w in graph[i].items():
                    value = best[i] + w
                    if j not in best or value > best[j]:
                        best[j] = value
        if best.get(source, 0) > 0:
            found.add(source)
    return found

def _normalize(x):
    first = next(v for v in x.data if v is not None)
    return x.shift(-first)

def _sort_key(x):
    return tuple((0,) if v is None else (1, v) for v in x.data)

def _prune(columns):
    """
    Drop columns generated by the remaining ones.
    """
    columns = list(columns)
    i = 0
    while i < len(columns):
        rest = columns[:i] + columns[i + 1:]
        if rest and project(Semimodule.of(rest), columns[i]) == columns[i]:
            del columns[i]
        else:
            i += 1
    return columns

def solve_system(S):
    """
    Generators of the solution semimodule of A (x) x <= B (x) x.
    """
    m, n = S.shape
    if m > config.TWOSIDED_CAP or n > config.TWOSIDED_CAP:
        raise TooLarge('%dx%d system exceeds the cap of %d' % (m, n, config.TWOSIDED_CAP))

    choices = [_options(S.A.data[i], S.B.data[i]) for i in range(m)]
    candidates = {}
    for choice in product(*choices):
        for x in _branch_generators(S, choice):
            if x.is_zero or not check_solution(S, x):
                continue
            x = _normalize(x)
            candidates[x.data] = x

    columns = _prune(sorted(candidates.values(), key=_sort_key))
    if not columns:
        raise Infeasible('only the zero vector solves the system')

    log.info('%dx%d system has %d generators' % (m, n, len(columns)))
    return GeneratorSet(tuple(columns))
