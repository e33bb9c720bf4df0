"""
Set functions satisfying tropical Pluecker relations.

Subsets of N = {1, ..., n} are stored as bitmasks, element c at bit c - 1.
A value of None stands for -inf and is skipped by the relation checks.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
import logging
log = logging.getLogger(__name__)

from core import config
from core.errors import TooLarge, NoFlow, Inconsistent, BadConfig

def mask_of(elements):
    mask = 0
    for c in elements:
        mask |= 1 << (c - 1)
    return mask

def elements_of(mask):
    return tuple(c + 1 for c in range(mask.bit_length()) if mask >> c & 1)

def intervals(n):
    """
    Masks of the intervals {i, ..., j}, 1 <= i <= j <= n.
    """
    return [mask_of(range(i, j + 1)) for i in range(1, n + 1) for j in range(i, n + 1)]

def is_interval(mask):
    if mask == 0:
        return False
    low = mask & -mask
    return (mask + low) & mask == 0

@dataclass(frozen=True)
class SubsetFunction(object):
    n: int
    values: dict = field(hash=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError('ground set must be nonempty')
        clean = {}
        for mask, value in self.values.items():
            if not 0 <= mask < 1 << self.n:
                raise ValueError('subset %s outside a ground set of size %d' % (bin(mask), self.n))
            clean[mask] = None if value is None else Fraction(value)
        object.__setattr__(self, 'values', clean)

    @classmethod
    def from_callable(cls, n, function):
        """
        Tabulate function(frozenset of elements) over all subsets.
        """
        return cls(n, dict((mask, function(frozenset(elements_of(mask)))) for mask in range(1 << n)))

    def __call__(self, mask):
        return self.values[mask]

    @property
    def total(self):
        return len(self.values) == 1 << self.n

    def with_value(self, mask, value):
        values = dict(self.values)
        values[mask] = value
        return SubsetFunction(self.n, values)

@dataclass(frozen=True)
class Verdict(object):
    holds: bool
    witness: tuple = None

    def __bool__(self):
        return self.holds

def _check_total(f):
    if f.n > config.PLUCKER_CAP:
        raise TooLarge('ground set of size %d exceeds %d' % (f.n, config.PLUCKER_CAP))
    if not f.total:
        raise Inconsistent('function is not defined on every subset')

def _rest(n, used):
    """
    Subsets of N avoiding the mask used, ascending.
    """
    free = [c for c in range(1, n + 1) if not used >> (c - 1) & 1]
    for r in range(len(free) + 1):
        for A in combinations(free, r):
            yield mask_of(A)

def _plus(*values):
    if any(v is None for v in values):
        return None
    return sum(values)

def is_tp(f):
    """
    f(Aik) + f(Aj) = max(f(Aij) + f(Ak), f(Ajk) + f(Ai)) for all A and
    i < j < k outside A. The witness is (A, i, j, k).
    """
    _check_total(f)
    for i, j, k in combinations(range(1, f.n + 1), 3):
        bi, bj, bk = mask_of([i]), mask_of([j]), mask_of([k])
        for A in _rest(f.n, bi | bj | bk):
            lhs = _plus(f(A | bi | bk), f(A | bj))
            left = _plus(f(A | bi | bj), f(A | bk))
            right = _plus(f(A | bj | bk), f(A | bi))
            if lhs is None or left is None or right is None:
                continue
            if lhs != max(left, right):
                log.debug('relation fails at A=%s, (%d, %d, %d)' % (elements_of(A), i, j, k))
                return Verdict(False, (elements_of(A), i, j, k))
    return Verdict(True)

def _twice(values):
    top = max(values)
    return sum(1 for v in values if v == top) >= 2

def is_dmtp(f):
    """
    In every three-term and four-term relation the maximum of the three
    values is attained at least twice.
    """
    _check_total(f)
    n = f.n
    for i, j, k in combinations(range(1, n + 1), 3):
        bi, bj, bk = mask_of([i]), mask_of([j]), mask_of([k])
        for A in _rest(n, bi | bj | bk):
            values = (_plus(f(A | bi | bk), f(A | bj)),
                      _plus(f(A | bi | bj), f(A | bk)),
                      _plus(f(A | bj | bk), f(A | bi)))
            if None not in values and not _twice(values):
                return Verdict(False, (elements_of(A), (i, j, k)))

    for i, j, k, l in combinations(range(1, n + 1), 4):
        bi, bj, bk, bl = mask_of([i]), mask_of([j]), mask_of([k]), mask_of([l])
        for A in _rest(n, bi | bj | bk | bl):
            values = (_plus(f(A | bi | bk), f(A | bj | bl)),
                      _plus(f(A | bi | bj), f(A | bk | bl)),
                      _plus(f(A | bj | bk), f(A | bi | bl)))
            if None not in values and not _twice(values):
                return Verdict(False, (elements_of(A), (i, j, k, l)))
    return Verdict(True)

def check_plucker_relations(f):
    """
    f(A u I) + f(A u J) <= max over i in I of f(A u I - i + j) + f(A u J - j + i)
    for disjoint A, I, J with |I| >= |J| >= 1 and every j in J. The witness
    is (A, I, J, j).
    """
    _check_total(f)
    n = f.n
    for labels in product(range(4), repeat=n):
        A = mask_of(c for c in range(1, n + 1) if labels[c - 1] == 1)
        I = [c for c in range(1, n + 1) if labels[c - 1] == 2]
        J = [c for c in range(1, n + 1) if labels[c - 1] == 3]
        if not J or len(I) < len(J):
            continue

        mI, mJ = mask_of(I), mask_of(J)
        lhs = _plus(f(A | mI), f(A | mJ))
        if lhs is None:
            continue
        for j in J:
            bj = mask_of([j])
            terms = [_plus(f(A | (mI & ~mask_of([i])) | bj), f(A | (mJ & ~bj) | mask_of([i]))) for i in I]
            terms = [t for t in terms if t is not None]
            if terms and lhs > max(terms):
                return Verdict(False, (elements_of(A), tuple(I), tuple(J), j))
    return Verdict(True)

class GridFlowNet(object):
    """
    Planar grid on the vertices (i, j), 1 <= i, j <= n, with edges
    (i, j) -> (i - 1, j) and (i, j) -> (i, j + 1). Source c is the column-1
    vertex (n - c + 1, 1), counted bottom-up, and sink m the row-1 vertex
    (1, m), counted left to right; source n and sink 1 coincide. Edges not
    listed weigh 0.
    """
    def __init__(self, n, weights=None):
        if n < 2:
            raise BadConfig('flow grids need n >= 2, got %d' % n)
        self.n = n
        self.weights = {}
        grid = set(self.edges())
        for edge, weight in (weights or {}).items():
            edge = (tuple(edge[0]), tuple(edge[1]))
            if edge not in grid:
                raise BadConfig('%s -> %s is not an edge of the %d-grid' % (edge + (n,)))
            self.weights[edge] = Fraction(weight)

    def edges(self):
        n = self.n
        result = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i > 1:
                    result.append(((i, j), (i - 1, j)))
                if j < n:
                    result.append(((i, j), (i, j + 1)))
        return result

    def weight(self, u, v):
        return self.weights.get((u, v), Fraction(0))

    def source(self, c):
        return (self.n - c + 1, 1)

    def sink(self, m):
        return (1, m)

    def divergence(self, sources):
        """
        Required divergence of a normal flow from the given sources, zeros
        dropped.
        """
        wanted = {}
        for c in sources:
            wanted[self.source(c)] = wanted.get(self.source(c), 0) + 1
        for m in range(1, len(sources) + 1):
            wanted[self.sink(m)] = wanted.get(self.sink(m), 0) - 1
        return dict((v, d) for v, d in wanted.items() if d)

    def paths(self, start, end):
        """
        Monotone paths from start to end as (vertex set, weight) pairs.
        """
        found = []

        def walk(vertex, visited, weight):
            if vertex == end:
                found.append((frozenset(visited), weight))
                return
            i, j = vertex
            if i > end[0]:
                step = (i - 1, j)
                walk(step, visited + [step], weight + self.weight(vertex, step))
            if j < end[1]:
                step = (i, j + 1)
                walk(step, visited + [step], weight + self.weight(vertex, step))

        walk(start, [start], Fraction(0))
        return found

def _vertex_flow(net, mask):
    # planarity pairs the topmost source with the leftmost sink
    sources = sorted(elements_of(mask), reverse=True)
    routes = [net.paths(net.source(c), net.sink(m + 1)) for m, c in enumerate(sources)]

    def best(index, used):
        if index == len(routes):
            return Fraction(0)
        result = None
        for vertices, weight in routes[index]:
            if vertices & used:
                continue
            rest = best(index + 1, used | vertices)
            if rest is not None and (result is None or weight + rest > result):
                result = weight + rest
        return result

    return best(0, frozenset())

def _edge_flows(net):
    """
    Heaviest edge subset for every divergence pattern.
    """
    edges = net.edges()
    buckets = {}
    for chosen in range(1 << len(edges)):
        divergence = {}
        weight = Fraction(0)
        for e, (u, v) in enumerate(edges):
            if chosen >> e & 1:
                divergence[u] = divergence.get(u, 0) + 1
                divergence[v] = divergence.get(v, 0) - 1
                weight += net.weight(u, v)
        key = frozenset(item for item in divergence.items() if item[1])
        if key not in buckets or weight > buckets[key]:
            buckets[key] = weight
    return buckets

def flow_tp(net, vertex_disjoint=True, strict=False):
    """
    f(S) = heaviest flow from the sources in S to the first |S| sinks.

    With vertex_disjoint the flows are families of vertex-disjoint paths;
    otherwise every edge subset with the prescribed divergence counts.
    Subsets without a flow get None, or raise NoFlow when strict.
    """
    n = net.n
    if vertex_disjoint and n > config.FLOW_CAP:
        raise TooLarge('vertex-disjoint flows on a %d-grid exceed the cap of %d' % (n, config.FLOW_CAP))
    if not vertex_disjoint and n > config.EDGE_FLOW_CAP:
        raise TooLarge('edge-subset flows on a %d-grid exceed the cap of %d' % (n, config.EDGE_FLOW_CAP))

    buckets = None if vertex_disjoint else _edge_flows(net)

    values = {}
    for mask in range(1 << n):
        if vertex_disjoint:
            value = _vertex_flow(net, mask)
        else:
            sources = elements_of(mask)
            pattern = frozenset(net.divergence(sources).items())
            value = buckets.get(pattern)

        if value is None:
            if strict:
                raise NoFlow('no normal flow from %s' % (elements_of(mask),))
            log.warning('no normal flow from %s, recorded as -inf' % (elements_of(mask),))
        values[mask] = value

    return SubsetFunction(n, values)

def restrict_to_intervals(f):
    keep = [0] + intervals(f.n)
    return SubsetFunction(f.n, dict((mask, f(mask)) for mask in keep))

def _reconstruction_order(n):
    masks = [mask for mask in range(1, 1 << n) if not is_interval(mask)]

    def key(mask):
        elements = elements_of(mask)
        return (len(elements), elements[-1] - elements[0], sum(elements))
    return sorted(masks, key=key)

def reconstruct_from_intervals(g):
    """
    Extend values on the empty set and the intervals to a TP function. Each
    non-interval S is solved from its smallest witness i = min S, j the
    first gap, k the next element of S, with A = S - {i, k}.
    """
    n = g.n
    if n > config.PLUCKER_CAP:
        raise TooLarge('ground set of size %d exceeds %d' % (n, config.PLUCKER_CAP))

    values = {}
    for mask in [0] + intervals(n):
        if g.values.get(mask) is None:
            raise Inconsistent('interval %s has no finite value' % (elements_of(mask),))
        values[mask] = g(mask)

    for mask in _reconstruction_order(n):
        elements = elements_of(mask)
        i = elements[0]
        j = next(c for c in range(i + 1, elements[-1]) if not mask >> (c - 1) & 1)
        k = next(c for c in elements if c > j)
        bi, bj, bk = mask_of([i]), mask_of([j]), mask_of([k])
        A = mask & ~bi & ~bk

        values[mask] = max(values[A | bi | bj] + values[A | bk],
                           values[A | bj | bk] + values[A | bi]) - values[A | bj]

    f = SubsetFunction(n, values)
    verdict = is_tp(f)
    if not verdict:
        raise Inconsistent('interval data do not extend to a TP function', witness=verdict.witness)
    return f

def is_submodular(f, on_intervals_only=False):
    """
    f(A) + f(B) >= f(A u B) + f(A n B). On intervals, only pairs whose union
    is again an interval (or empty) are compared.
    """
    if on_intervals_only:
        family = [0] + intervals(f.n)
    else:
        _check_total(f)
        family = list(range(1 << f.n))

    for a, b in combinations(family, 2):
        union, meet = a | b, a & b
        if on_intervals_only and union and not is_interval(union):
            continue
        lhs = _plus(f(a), f(b))
        rhs = _plus(f(union), f(meet))
        if lhs is None or rhs is None:
            continue
        if lhs < rhs:
            return Verdict(False, (elements_of(a), elements_of(b)))
    return Verdict(True)
