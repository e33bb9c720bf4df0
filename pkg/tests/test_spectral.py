from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from core.errors import NoCycle, Unbounded, UnsupportedSemiring
from modules.Algebra.semiring import Semiring, TropScalar, Interval
from modules.Algebra.tropmat import TropMatrix, TropVector, IntervalMatrix
from modules.Spectral.spectral import max_cycle_mean, critical_graph, spectrum, eigenvectors, \
    is_eigenvector, collatz_wielandt, cw_value, iv_cycle_mean
from modules.Traffic.road import road_event_graph

N = None
TWO_CYCLE = TropMatrix.of([[N, 2], [0, N]])

def brute_force_mean(M):
    graph = nx.DiGraph()
    for i, row in enumerate(M.data):
        for j, v in enumerate(row):
            if v is not None:
                graph.add_edge(i, j, weight=v)
    best = None
    for cycle in nx.simple_cycles(graph):
        weight = sum(graph[cycle[k]][cycle[(k + 1) % len(cycle)]]['weight'] for k in range(len(cycle)))
        mean = Fraction(weight, len(cycle))
        if best is None or mean > best:
            best = mean
    return best

def random_matrix(rng, n, density):
    return TropMatrix.of([[Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 4)))
                           if rng.random() < density else None for _ in range(n)] for _ in range(n)])

def test_max_cycle_mean_examples():
    assert max_cycle_mean(TWO_CYCLE) == TropScalar(1)
    assert max_cycle_mean(TropMatrix.of([[3]])) == TropScalar(3)
    with pytest.raises(NoCycle):
        max_cycle_mean(TropMatrix.of([[N, 1], [N, N]]))
    with pytest.raises(UnsupportedSemiring):
        max_cycle_mean(TropMatrix.of([[3]], Semiring.MAX_TIMES))

def test_min_plus_road_eigenvalue():
    road = road_event_graph([1, 0, 0, 0]).to_matrix()
    assert max_cycle_mean(road) == TropScalar(Fraction(1, 4), Semiring.MIN_PLUS)

def test_critical_graph_examples():
    result = critical_graph(TWO_CYCLE)
    assert result.critical_nodes == frozenset([0, 1])
    assert result.critical_edges == frozenset([(0, 1), (1, 0)])

    result = critical_graph(TropMatrix.of([[0, N], [N, -1]]))
    assert result.eigenvalue == TropScalar(0)
    assert result.critical_nodes == frozenset([0])

    result = critical_graph(TropMatrix.of([[3]]))
    assert result.critical_edges == frozenset([(0, 0)])

def test_eigenvector_examples():
    assert eigenvectors(TWO_CYCLE) == [TropVector.of([0, -1])]
    assert eigenvectors(TropMatrix.identity(2)) == [TropVector.of([0, N]), TropVector.of([N, 0])]
    assert eigenvectors(TropMatrix.of([[3]])) == [TropVector.of([0])]

def test_collatz_wielandt_examples():
    cw = collatz_wielandt(TWO_CYCLE)
    assert cw.value == TropScalar(1)
    assert cw.certificate == TropVector.of([0, -1])
    assert cw_value(TWO_CYCLE, cw.certificate) == TropScalar(1)
    assert collatz_wielandt(TropMatrix.of([[3]])).value == TropScalar(3)
    with pytest.raises(Unbounded):
        collatz_wielandt(TropMatrix.of([[N, N], [0, 1]]))

def test_karp_matches_cycle_enumeration():
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(300):
        n = int(rng.integers(4, 7))
        M = random_matrix(rng, n, 0.45)
        expected = brute_force_mean(M)
        if expected is None:
            with pytest.raises(NoCycle):
                max_cycle_mean(M)
            continue
        result = spectrum(M)
        assert result.eigenvalue.value == expected
        for v in result.eigenvectors:
            assert is_eigenvector(M, v, result.eigenvalue)
        checked += 1
    assert checked > 100

@pytest.mark.slow
def test_karp_matches_cycle_enumeration_large_sample():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        M = random_matrix(rng, int(rng.integers(4, 9)), 0.45)
        expected = brute_force_mean(M)
        if expected is None:
            with pytest.raises(NoCycle):
                max_cycle_mean(M)
        else:
            assert max_cycle_mean(M).value == expected

def test_collatz_wielandt_equals_eigenvalue_on_irreducible():
    rng = np.random.default_rng(6)
    for _ in range(50):
        n = int(rng.integers(2, 6))
        M = random_matrix(rng, n, 1)
        cw = collatz_wielandt(M)
        assert cw.value == max_cycle_mean(M)
        assert cw_value(M, cw.certificate) == cw.value

def test_scaling_invariance():
    rng = np.random.default_rng(8)
    for _ in range(30):
        M = random_matrix(rng, 4, 1)
        c = Fraction(int(rng.integers(-5, 6)), 2)
        assert max_cycle_mean(M.shift(c)).value == max_cycle_mean(M).value + c

def test_interval_cycle_mean():
    box = IntervalMatrix(TropMatrix.of([[N, 1], [-1, N]]), TWO_CYCLE)
    assert iv_cycle_mean(box) == Interval.of(0, 1)
    box = IntervalMatrix(TropMatrix.zeros(2, 2), TWO_CYCLE)
    assert iv_cycle_mean(box) == Interval.of(N, 1)
