from fractions import Fraction

import numpy as np
import pytest

from core import config
from core.errors import BadConfig, Diverged
from modules.Algebra.semiring import Semiring
from modules.Algebra.tropmat import TropMatrix
from modules.Spectral.spectral import max_cycle_mean
from modules.Traffic.homogeneous import Term, HomogeneousMap, HomIteration, hom_iterate, eigen_reduce, cw_bracket
from modules.Traffic.road import RingWord, exclusion_step, exclusion_run, road_event_graph, occupancy
from modules.Traffic.crossing import build_crossing, place_cars, crossing_occupancy
from modules.Traffic.tent import tent_system, tent_reduction, tent_trajectory, tent_histogram
from modules.Traffic.t1h import T1HSystem, TrafficLight, t1h_simulate, lp_matrices, lp_product, \
    ring_matrix, periodic_to_t1h, light_phases, light_flow
from modules.Traffic.diagram import parse_densities, check_config, fundamental_diagram

N = None
MIN_PLUS = Semiring.MIN_PLUS

def road_eigenvalue(cells, cars):
    return max_cycle_mean(road_event_graph(occupancy(cells, cars)).to_matrix()).value

def test_exclusion_examples():
    word, moved = exclusion_step(RingWord.of('1101001001'))
    assert str(word) == '1010100101'
    assert moved == 3

    trajectory, flows = exclusion_run(RingWord.of('1010'), 1)
    assert str(trajectory[1]) == '0101'
    assert flows == [Fraction(1, 2)]

    trajectory, flows = exclusion_run(RingWord.of('0000'), 3)
    assert all(str(w) == '0000' for w in trajectory)
    assert flows == [0, 0, 0]

    assert exclusion_run(RingWord.of('10'), 0) == ([RingWord.of('10')], [])
    with pytest.raises(ValueError):
        exclusion_run(RingWord.of('10'), -1)
    with pytest.raises(BadConfig):
        RingWord.of('1')
    with pytest.raises(BadConfig):
        RingWord.of('102')

def test_road_eigenvalues():
    assert road_eigenvalue(4, 1) == Fraction(1, 4)
    assert road_eigenvalue(2, 1) == Fraction(1, 2)
    assert road_eigenvalue(5, 0) == 0
    assert hom_iterate(road_event_graph(occupancy(4, 1)), [0] * 4, 64).exact == Fraction(1, 4)

def test_road_law():
    for cells in range(2, 21):
        for cars in range(cells + 1):
            rho = Fraction(cars, cells)
            law = min(rho, 1 - rho)
            assert road_eigenvalue(cells, cars) == law
            _, flows = exclusion_run(RingWord(tuple(occupancy(cells, cars))), 4 * cells + 1)
            assert all(q == law for q in flows[4 * cells:])

def test_exclusion_agrees_with_event_graph():
    rng = np.random.default_rng(61)
    for _ in range(30):
        word = RingWord(tuple(int(b) for b in rng.integers(0, 2, size=10)))
        _, flows = exclusion_run(word, 40)
        rate = hom_iterate(road_event_graph(word), [0] * 10, 200).exact
        assert flows[-1] == rate == min(word.density, 1 - word.density)

def test_map_validation():
    with pytest.raises(BadConfig):
        HomogeneousMap(1, [[Term(0, {0: 2})]])
    with pytest.raises(BadConfig):
        HomogeneousMap(2, [[Term(0, {0: 1})]])
    with pytest.raises(BadConfig):
        HomogeneousMap(2, [[Term(0, {}, fresh={1: 1})], [Term(0, {1: 1})]])
    f = HomogeneousMap(2, [[Term(0, {0: 1})], [Term(0, {}, fresh={0: 1})]])
    assert f((3, 5)) == (3, 3)
    with pytest.raises(BadConfig):
        f.to_matrix()

def test_hom_iterate_examples(monkeypatch):
    swap = HomogeneousMap.from_matrix(TropMatrix.of([[N, 0], [0, N]], MIN_PLUS))
    run = hom_iterate(swap, (0, 3), 10)
    assert run.throughput == 0
    assert run.period == 2
    assert run.exact == 0

    run = hom_iterate(tent_system(), (0, 0), 20)
    assert run.exact == 0

    with pytest.raises(ValueError):
        hom_iterate(swap, (0, 0), 1)
    with pytest.raises(BadConfig):
        hom_iterate(swap, (0,), 4)

    drift = HomogeneousMap(2, [[Term(1, {0: 1})], [Term(0, {1: 1})]])
    monkeypatch.setattr(config, 'DIVERGENCE_BOUND', 5)
    with pytest.raises(Diverged):
        hom_iterate(drift, (0, 0), 20)

def test_eigen_reduce_examples():
    A = TropMatrix.of([[2, 3], [1, 4]], MIN_PLUS)
    g = eigen_reduce(HomogeneousMap.from_matrix(A))
    assert g.dim == 1
    assert g((-1,)) == (-1,)
    assert g.is_fixed_point((-1,))
    assert g.eigenvalue((-1,)) == max_cycle_mean(A).value == 2

    single = eigen_reduce(HomogeneousMap.from_matrix(TropMatrix.of([[5]], MIN_PLUS)))
    assert single.dim == 0
    assert single.eigenvalue(()) == 5

    assert cw_bracket(HomogeneousMap.from_matrix(A), (0, -1)) == (2, 2)

def test_tent_reduction():
    g = tent_reduction()
    for y in (0, Fraction(2, 3)):
        assert g.is_fixed_point((y,))
        assert g.eigenvalue((y,)) == 0
    for k in range(11):
        y = Fraction(k, 10)
        assert g((y,)) == (min(2 * y, 2 - 2 * y),)

def test_tent_orbits():
    assert tent_trajectory(0, 5).orbit == (0,) * 6
    assert tent_trajectory(Fraction(2, 3), 5).orbit == (Fraction(2, 3),) * 6
    run = tent_trajectory(Fraction(1, 5), 4, bins=5)
    assert run.orbit == tuple(Fraction(v, 5) for v in (1, 2, 4, 2, 4))
    assert list(run.histogram) == [0, 0, 2, 0, 2]
    with pytest.raises(BadConfig):
        tent_trajectory(Fraction(3, 2), 4)
    with pytest.raises(ValueError):
        tent_trajectory(Fraction(1, 5), 0)

def test_tent_histogram_is_flat():
    y0s = [Fraction(i, 10 ** 5) for i in (1, 3, 7, 9, 11, 13, 17, 19)]
    histogram = tent_histogram(y0s, 2505, bins=10)
    total = histogram.sum()
    assert total == 8 * 2505
    assert all(abs(count / total - 0.1) < 0.015 for count in histogram)

@pytest.mark.slow
def test_tent_histogram_large_sample():
    y0s = [Fraction(i, 10 ** 5) for i in range(1, 600) if i % 2 and i % 5][:200]
    histogram = tent_histogram(y0s, 10 ** 4, bins=100)
    mean = histogram.sum() / 100
    assert histogram.sum() == 200 * 10 ** 4
    assert np.all(np.abs(histogram - mean) / mean < 0.1)

def test_crossing_construction():
    assert place_cars(5, 2, 1) == [1, 3, 6]
    with pytest.raises(BadConfig):
        place_cars(5, 5, 0)
    with pytest.raises(BadConfig):
        crossing_occupancy(4, [1, 1])
    with pytest.raises(BadConfig):
        crossing_occupancy(4, [4])
    with pytest.raises(BadConfig):
        build_crossing(4, [1], policy='random')
    for policy in ('priority', 'fifty_fifty'):
        f = build_crossing(4, [1, 5], policy)
        assert f.dim == 8
        assert all(t.degree == 1 for terms in f.terms for t in terms)

def test_maps_are_homogeneous_and_monotone():
    rng = np.random.default_rng(62)
    maps = [road_event_graph(occupancy(6, 2)),
            build_crossing(5, place_cars(5, 2, 1), 'priority'),
            build_crossing(5, place_cars(5, 2, 1), 'fifty_fifty')]
    for f in maps:
        for _ in range(20):
            x = tuple(Fraction(int(v)) for v in rng.integers(-5, 6, size=f.dim))
            c = Fraction(int(rng.integers(-5, 6)), 2)
            assert f(tuple(v + c for v in x)) == tuple(v + c for v in f(x))

    for f in (maps[0], maps[2]):
        for _ in range(20):
            x = tuple(Fraction(int(v)) for v in rng.integers(-5, 6, size=f.dim))
            y = tuple(v + int(d) for v, d in zip(x, rng.integers(0, 3, size=f.dim)))
            assert all(a <= b for a, b in zip(f(x), f(y)))

@pytest.mark.slow
def test_crossing_phases():
    free = [Fraction(k, 20) for k in range(1, 5)]
    saturated = [Fraction(k, 20) for k in range(6, 10)]
    jammed = [Fraction(k, 20) for k in range(11, 15)]
    flows = dict(fundamental_diagram({'kind': 'crossing', 'cells': 20}, free + saturated + jammed, 4000))
    for rho in free:
        assert abs(flows[rho] - rho) <= Fraction(2, 100)
    for rho in saturated:
        assert abs(flows[rho] - Fraction(1, 4)) <= Fraction(2, 100)
    for rho in jammed:
        assert flows[rho] == 0

def test_rate_snaps_to_small_denominator():
    assert HomIteration([], Fraction(1, 10 ** 300), max_denominator=40).exact == 0
    assert HomIteration([], Fraction(1, 10 ** 300)).exact == Fraction(1, 10 ** 300)
    assert HomIteration([], Fraction(1, 4) + Fraction(1, 10 ** 9), max_denominator=40).exact == Fraction(1, 4)
    assert HomIteration([], Fraction(1, 4) + Fraction(1, 10 ** 9), rate=Fraction(1, 3), period=3,
                        max_denominator=40).exact == Fraction(1, 3)

def test_ring_matrix():
    R = ring_matrix(3)
    assert R == TropMatrix.of([[N, N, 0], [1, N, N], [N, 0, N]], MIN_PLUS)

def test_light_phases():
    light = TrafficLight(4, 4, 1, 1)
    run = t1h_simulate(light.system(), 40)
    assert run.u_transient == 0
    assert run.u_period == 4
    assert [light_phases(light, u) for u in run.u[:5]] == [(1, 0), (0, 0), (0, 1), (0, 0), (1, 0)]

def test_light_flow_matches_simulation():
    for cars in (1, 2, 3):
        light = TrafficLight(5, 5, cars, cars)
        expected = light_flow(light)
        assert 0 <= expected <= Fraction(1, 4)
        run = t1h_simulate(light.system(), 2000)
        assert abs(run.flow(light.road_indices(1)) - expected) < Fraction(1, 100)
        assert light_flow(light, road=2) == expected

@pytest.mark.slow
def test_light_flow_long_run():
    K = 4000
    for road1, road2 in ((5, 5), (8, 8)):
        for cars in range(1, min(road1, road2)):
            light = TrafficLight(road1, road2, cars, cars)
            run = t1h_simulate(light.system(), K)
            assert abs(run.flow(light.road_indices(1)) - light_flow(light)) <= Fraction(1, 2 * K)

def test_light_validation():
    with pytest.raises(BadConfig):
        TrafficLight(4, 4, 1, 1, durations=(1, 1, 1))
    with pytest.raises(BadConfig):
        TrafficLight(4, 4, 1, 1, durations=(1, 0, 1, 1))
    with pytest.raises(BadConfig):
        TrafficLight(1, 4, 0, 1)
    with pytest.raises(BadConfig):
        TrafficLight(4, 4, 5, 1)
    assert TrafficLight(4, 4, 1, 1, durations=(2, 1, 3, 1)).cycle == 7

def test_constant_control():
    S = T1HSystem(TropMatrix.identity(1, MIN_PLUS), {(0, 0): (Term(2),)}, {}, (0,), (0,))
    run = t1h_simulate(S, 5)
    assert [x[0] for x in run.x] == [0, 2, 4, 6, 8, 10]
    assert run.u_period == 1
    assert run.flow() == 2
    with pytest.raises(ValueError):
        t1h_simulate(S, 0)

def test_t1h_validation():
    C = TropMatrix.identity(1, MIN_PLUS)
    with pytest.raises(BadConfig):
        T1HSystem(C, {(0, 0): (Term(2),)}, {}, (0,), (0, 0))
    with pytest.raises(BadConfig):
        T1HSystem(C, {(0, 0): (Term(2, {0: 1}),)}, {}, (0,), (0,))
    with pytest.raises(BadConfig):
        T1HSystem(TropMatrix.identity(2, MIN_PLUS), {(0, 0): (Term(2),)}, {}, (0,), (0,))

def test_periodic_family():
    Es = [TropMatrix.of([[1, 3], [0, N]], MIN_PLUS), TropMatrix.of([[2, 0], [4, N]], MIN_PLUS)]
    S = periodic_to_t1h(Es, (0, 5))
    run = t1h_simulate(S, 12)

    x = (0, 5)
    for k in range(12):
        assert run.x[k] == x
        E = Es[k % 2]
        x = tuple(min(E[i, j] + x[j] for j in range(2) if E[i, j] is not None) for i in range(2))

    assert lp_matrices(S, run) == Es
    assert lp_product(Es) == TropMatrix.of([[0, 5], [5, 7]], MIN_PLUS)

    with pytest.raises(BadConfig):
        periodic_to_t1h([Es[0], TropMatrix.of([[2, N], [4, N]], MIN_PLUS)])
    with pytest.raises(BadConfig):
        periodic_to_t1h([])

def test_densities():
    assert parse_densities('0:1:1/4') == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]
    for bad in ('1:0:1/10', '0:1:0', '0:2:1', 'x', '0:1'):
        with pytest.raises(BadConfig):
            parse_densities(bad)

def test_config_checks():
    assert check_config({'kind': 'crossing', 'cells': 4})['policy'] == 'priority'
    assert check_config({'kind': 'light', 'road1': 4, 'road2': 4})['durations'] == [1, 1, 1, 1]
    for bad in ({'kind': 'roundabout'}, {'kind': 'road'}, {'kind': 'road', 'cells': 1},
                {'kind': 'crossing', 'cells': 4, 'policy': 'random'}, {'kind': 'light', 'road1': 4}, []):
        with pytest.raises(BadConfig):
            check_config(bad)

def test_road_diagram(monkeypatch):
    monkeypatch.setenv('TROPKIT_THREADS', '2')
    diagram = fundamental_diagram({'kind': 'road', 'cells': 10}, parse_densities('0:1:1/10'), 400)
    assert [rho for rho, _ in diagram] == parse_densities('0:1:1/10')
    for rho, q in diagram:
        assert q == min(rho, 1 - rho)
    with pytest.raises(BadConfig):
        fundamental_diagram({'kind': 'road', 'cells': 10}, [Fraction(1, 3)], 100)

def test_light_diagram():
    diagram = dict(fundamental_diagram({'kind': 'light', 'road1': 4, 'road2': 4}, [0, Fraction(1, 2)], 200))
    assert diagram[0] == 0
    assert 0 <= diagram[Fraction(1, 2)] <= Fraction(1, 4)
