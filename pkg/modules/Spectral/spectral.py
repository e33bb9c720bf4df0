"""
Max-plus eigenproblem: cycle-mean eigenvalue, critical graph, fundamental
eigenvectors and the Collatz-Wielandt number. Min-plus matrices are handled
through negation; results are reported in the matrix's own semiring.
"""
from dataclasses import dataclass, field
import networkx as nx
import logging
log = logging.getLogger(__name__)

from core.errors import NoCycle, Unbounded, UnsupportedSemiring, DimensionMismatch
from modules.Algebra import semiring as sr
from modules.Algebra.semiring import Semiring, TropScalar, Interval
from modules.Algebra.tropmat import TropMatrix, TropVector, kleene_star, mat_vec
from modules.Algebra.graph import karp

@dataclass(frozen=True)
class SpectralResult(object):
    eigenvalue: TropScalar
    critical_nodes: frozenset
    critical_edges: frozenset
    classes: tuple
    eigenvectors: tuple = field(default=())

@dataclass(frozen=True)
class CollatzWielandt(object):
    """
    Collatz-Wielandt number with a finite vector attaining it.
    """
    value: TropScalar
    certificate: TropVector

def _max_plus_data(A):
    """
    Raw max-plus rows of A and the sign taking results back to A's semiring.
    """
    if not A.square:
        raise DimensionMismatch('eigenproblem of a %dx%d matrix' % A.shape)
    if A.tag is Semiring.MAX_PLUS:
        return A.data, 1
    if A.tag is Semiring.MIN_PLUS:
        return tuple(tuple(sr.negate(v) for v in row) for row in A.data), -1
    raise UnsupportedSemiring('eigenproblem over %s' % A.tag.value)

def _signed(value, sign):
    return None if value is None else sign * value

def max_cycle_mean(A):
    """
    Extremal cycle mean of A: the maximum for max-plus, the minimum for
    min-plus.
    """
    data, sign = _max_plus_data(A)
    mean = karp(data)
    if mean is None:
        raise NoCycle('graph of finite entries is acyclic')
    log.debug('cycle mean %s' % mean)
    return TropScalar(sign * mean, A.tag)

def _normalized_star(data, mean):
    shifted = TropMatrix(Semiring.MAX_PLUS, tuple(
        tuple(None if v is None else v - mean for v in row) for row in data))
    return kleene_star(shifted)

def _critical(data, mean, star):
    n = len(data)
    plus = [[None if data[i][j] is None else data[i][j] - mean for j in range(n)] for i in range(n)]

    edges = set()
    for i in range(n):
        for j in range(n):
            if plus[i][j] is None or star[j, i] is None:
                continue
            if plus[i][j] + star[j, i] == 0:
                edges.add((i, j))

    graph = nx.DiGraph()
    graph.add_edges_from(edges)
    classes = sorted(sorted(c) for c in nx.strongly_connected_components(graph))
    nodes = frozenset(v for c in classes for v in c)
    return nodes, frozenset(edges), tuple(tuple(c) for c in classes)

def critical_graph(A):
    """
    Nodes and edges lying on cycles that attain the eigenvalue, with the
    critical classes (strongly connected components of the critical graph).
    """
    data, sign = _max_plus_data(A)
    mean = karp(data)
    if mean is None:
        raise NoCycle('graph of finite entries is acyclic')

    star = _normalized_star(data, mean)
    nodes, edges, classes = _critical(data, mean, star)
    log.info('eigenvalue %s with %d critical classes' % (sr.fmt(A.tag, sign * mean), len(classes)))
    return SpectralResult(TropScalar(sign * mean, A.tag), nodes, edges, classes)

def spectrum(A):
    """
    Critical graph together with one eigenvector per critical class, the
    column of the normalised star at the smallest node of the class. The
    representative coordinate is the unit.
    """
    data, sign = _max_plus_data(A)
    mean = karp(data)
    if mean is None:
        raise NoCycle('graph of finite entries is acyclic')

    star = _normalized_star(data, mean)
    nodes, edges, classes = _critical(data, mean, star)

    vectors = []
    for members in classes:
        column = star.column(members[0])
        vectors.append(TropVector(A.tag, tuple(_signed(v, sign) for v in column)))

    return SpectralResult(TropScalar(sign * mean, A.tag), nodes, edges, classes, tuple(vectors))

def eigenvectors(A):
    return list(spectrum(A).eigenvectors)

def is_eigenvector(A, v, eigenvalue):
    """
    A (x) v == eigenvalue (x) v, exactly.
    """
    return mat_vec(A, v) == v.shift(eigenvalue.value)

def collatz_wielandt(A):
    """
    inf over finite u of max_i ((A (x) u)_i - u_i), certified by
    u = (A - l)* (x) 0 normalised to u_1 = 0.
    """
    for i, row in enumerate(A.data):
        if all(v is None for v in row):
            raise Unbounded('row %d has no finite entry' % i)

    data, sign = _max_plus_data(A)
    mean = karp(data)
    star = _normalized_star(data, mean)

    maxima = [sr.oplus(Semiring.MAX_PLUS, row) for row in star.data]
    u = TropVector(A.tag, tuple(sign * (m - maxima[0]) for m in maxima))
    return CollatzWielandt(TropScalar(sign * mean, A.tag), u)

def cw_value(A, u):
    """
    max_i ((A (x) u)_i - u_i) for a finite u (min over i for min-plus).
    """
    image = mat_vec(A, u)
    gaps = [None if a is None else a - b for a, b in zip(image.data, u.data)]
    if any(g is None for g in gaps):
        raise Unbounded('image has a zero coordinate')
    return TropScalar(max(gaps) if A.tag is Semiring.MAX_PLUS else min(gaps), A.tag)

def iv_cycle_mean(A):
    """
    [l(A.lo), l(A.hi)]; the eigenvalue is isotone in the entries. An acyclic
    lower endpoint gives the zero of the semiring.
    """
    upper = max_cycle_mean(A.hi)
    try:
        lower = max_cycle_mean(A.lo)
    except NoCycle:
        lower = TropScalar.zero(A.tag)
    return Interval(lower, upper)
