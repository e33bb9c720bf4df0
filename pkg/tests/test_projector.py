from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from core import config
from core.errors import NotSeparable, DimensionMismatch, ZeroColumn, UnsupportedSemiring
from modules.Algebra.semiring import Semiring, TropScalar
from modules.Algebra.tropmat import TropMatrix, TropVector
from modules.Projector.projector import Semimodule, Halfspace, project, compose, cyclic_orbit, \
    hilbert_value, hilbert_metric, cyclic_spectral_radius, separate, separating_halfspace

N = None
V1 = Semimodule.of([TropVector.of([0, 0])])
V2 = Semimodule.of([TropVector.of([0, 2])])
AXIS1 = Semimodule.of([TropVector.of([0, N])])
AXIS2 = Semimodule.of([TropVector.of([N, 0])])

def vec(*values):
    return TropVector.of(values)

def grid(n, values=(N, -2, -1, 0, 1, 2)):
    for point in product(values, repeat=n):
        z = TropVector.of(point)
        if not z.is_zero:
            yield z

def random_semimodule(rng, n, k):
    return Semimodule(TropMatrix.of([[Fraction(int(rng.integers(-3, 4))) for _ in range(k)] for _ in range(n)]))

def assert_separates(Vs, halfspaces):
    for V, H in zip(Vs, halfspaces):
        for g in V.vectors():
            assert g in H
    for z in grid(Vs[0].dim):
        assert not all(z in H for H in halfspaces)

def test_project_examples():
    assert project(V1, vec(1, 3)) == vec(1, 1)
    assert project(V2, vec(0, 2)) == vec(0, 2)
    full = Semimodule(TropMatrix.identity(2))
    assert project(full, vec(4, N)) == vec(4, N)
    with pytest.raises(DimensionMismatch):
        project(V1, vec(1, 2, 3))
    with pytest.raises(ZeroColumn):
        Semimodule(TropMatrix.of([[0, N], [1, N]]))

def test_projector_laws():
    rng = np.random.default_rng(11)
    for _ in range(40):
        V = random_semimodule(rng, 3, 2)
        x = TropVector.of([Fraction(int(rng.integers(-4, 5))) if rng.random() < 0.8 else None
                           for _ in range(3)])
        y = x + vec(*[Fraction(int(rng.integers(-4, 5))) for _ in range(3)])
        p = project(V, x)
        assert p <= x
        assert project(V, p) == p
        assert p in V
        assert project(V, x) <= project(V, y)
        assert project(V, x.shift(Fraction(3, 2))) == p.shift(Fraction(3, 2))

def test_cyclic_orbit():
    orbit = cyclic_orbit([V1, V2], vec(0, 0), 2)
    assert orbit == [vec(0, 0), vec(-2, 0), vec(-2, -2), vec(-4, -2)]
    values = [hilbert_value(orbit[l:l + 2]).value for l in range(len(orbit) - 1)]
    assert values == sorted(values)

    full = Semimodule(TropMatrix.identity(2))
    assert cyclic_orbit([full], vec(1, 2), 3) == [vec(1, 2)] * 3
    assert all(x.is_zero for x in cyclic_orbit([V1, V2], vec(N, N), 2))
    with pytest.raises(ValueError):
        cyclic_orbit([V1], vec(0, 0), 0)

def test_hilbert_value_examples():
    assert hilbert_value([vec(0, 0), vec(0, 0)]) == TropScalar(0)
    assert hilbert_value([vec(0, 0), vec(0, 1)]) == TropScalar(-1)
    assert hilbert_value([vec(1, 5)] * 3) == TropScalar(0)
    assert hilbert_metric(vec(0, 0), vec(0, 1)) == 1
    assert hilbert_metric(vec(0, N), vec(0, 1)) is None

def test_radius_two_lines():
    report = cyclic_spectral_radius([V1, V2])
    assert report.value == TropScalar(-2)
    assert report.certified
    assert report.support == frozenset([0, 1])
    assert hilbert_value(report.witnesses) == report.value
    assert compose([V1, V2], report.eigenvector) == report.eigenvector.shift(-2)

def test_radius_trivial_cases():
    V = Semimodule.of([TropVector.of([0, 1])])
    assert cyclic_spectral_radius([V, V]).value == TropScalar(0)
    assert cyclic_spectral_radius([V]).value == TropScalar(0)
    assert cyclic_spectral_radius([AXIS1, AXIS2]).value.is_zero

def test_radius_uncertified_above_cap(monkeypatch):
    monkeypatch.setattr(config, 'SUPPORT_CAP', 1)
    report = cyclic_spectral_radius([V1, V2])
    assert report.value == TropScalar(-2)
    assert not report.certified

def test_radius_is_max_plus_only():
    V = Semimodule(TropMatrix.of([[0], [0]], Semiring.MIN_PLUS))
    with pytest.raises(UnsupportedSemiring):
        cyclic_spectral_radius([V])

def test_radius_dominates_grid():
    rng = np.random.default_rng(12)
    coefficients = [Fraction(k) for k in range(-3, 4)]
    for _ in range(25):
        Vs = [random_semimodule(rng, 2, 2), random_semimodule(rng, 2, 2)]
        report = cyclic_spectral_radius(Vs)
        for V, w in zip(Vs, report.witnesses):
            assert w in V
        assert hilbert_value(report.witnesses) == report.value
        points = [[TropVector(Semiring.MAX_PLUS, tuple(
            max(a + V.generators[i, 0], b + V.generators[i, 1]) for i in range(2)))
            for a, b in product(coefficients, repeat=2)] for V in Vs]
        for x, y in product(*points):
            assert hilbert_value([x, y]) <= report.value

def test_separate_two_lines():
    halfspaces = separate([V1, V2])
    assert len(halfspaces) == 2
    assert_separates([V1, V2], halfspaces)

def test_separate_axes():
    halfspaces = separate([AXIS1, AXIS2])
    assert_separates([AXIS1, AXIS2], halfspaces)

def test_separating_halfspace_alone():
    H = separating_halfspace(V1, V2)
    assert vec(0, 0) in H
    for z in grid(2):
        if z in V2:
            assert z not in H

def test_not_separable():
    V = Semimodule.of([TropVector.of([0, 1])])
    with pytest.raises(NotSeparable) as e:
        separate([V, V])
    witness = e.value.witness
    assert not witness.is_zero
    assert witness in V

def test_separation_random():
    rng = np.random.default_rng(13)
    separated = 0
    for _ in range(30):
        Vs = [random_semimodule(rng, 2, 1), random_semimodule(rng, 2, 1)]
        try:
            halfspaces = separate(Vs)
        except NotSeparable as e:
            assert all(e.witness in V for V in Vs)
            continue
        assert_separates(Vs, halfspaces)
        separated += 1
    assert separated > 0

def combinations(V, coefficients=(N, Fraction(-2), Fraction(1))):
    points = []
    for c in product(coefficients, repeat=V.generators.cols):
        if all(a is None for a in c):
            continue
        points.append(TropVector(Semiring.MAX_PLUS, tuple(
            max(a + V.generators[i, j] for j, a in enumerate(c) if a is not None) for i in range(V.dim))))
    return points

@pytest.mark.slow
def test_radius_and_separation_large_sample():
    rng = np.random.default_rng(14)
    for _ in range(200):
        n = int(rng.integers(2, 5))
        Vs = [random_semimodule(rng, n, int(rng.integers(1, 3))) for _ in range(int(rng.integers(2, 4)))]
        report = cyclic_spectral_radius(Vs)
        assert all(w in V for V, w in zip(Vs, report.witnesses))
        assert hilbert_value(report.witnesses) == report.value
        for xs in product(*[combinations(V) for V in Vs]):
            assert hilbert_value(xs) <= report.value

        try:
            halfspaces = separate(Vs)
        except NotSeparable as e:
            assert not e.witness.is_zero
            assert all(e.witness in V for V in Vs)
            continue
        assert_separates(Vs, halfspaces)

def test_halfspace_order():
    with pytest.raises(ValueError):
        Halfspace(vec(1, 0), vec(0, 0))
    assert vec(N, N) in Halfspace(vec(0, 0), vec(0, 0))
