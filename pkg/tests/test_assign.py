from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from core import config
from core.errors import BadConfig, NotStronglyRegular, CertificateInvalid, ImprovingCycle
from modules.Algebra.semiring import Semiring
from modules.Algebra.tropmat import TropMatrix
from modules.Assign.assign import AssignMatrix, RegularityCertificate, apply_B, subdifferential, \
    strong_regularity, normal_form, similar, generalized_inverse_holds, distances_potentials

N = None

def random_assign(rng, n):
    return AssignMatrix.of([[int(v) for v in row] for row in rng.integers(-9, 10, size=(n, n))])

def unique_optimum(B):
    values = {}
    for perm in permutations(range(B.n)):
        values[perm] = sum(B[i, perm[i]] for i in range(B.n))
    best = max(values.values())
    winners = [perm for perm, value in values.items() if value == best]
    return winners[0] if len(winners) == 1 else None

def test_validation():
    with pytest.raises(BadConfig):
        AssignMatrix.of([[0, 1]])
    with pytest.raises(BadConfig):
        AssignMatrix.of([[N, N], [0, 1]])
    with pytest.raises(BadConfig):
        AssignMatrix.of([[N, 0], [N, 1]])
    with pytest.raises(BadConfig):
        AssignMatrix(TropMatrix.of([[0]], Semiring.MIN_PLUS))

def test_apply_examples():
    assert apply_B(AssignMatrix.of([[0, -1], [-1, 0]]), (0, 0)) == (0, 0)
    assert apply_B(AssignMatrix.of([[0, 0], [0, 0]]), (1, 0)) == (0, 0)
    B = AssignMatrix.of([[0, 3], [N, 1]])
    assert apply_B(B, (0, 0)) == (3, 1)
    assert apply_B(B, (0, 0), transpose=True) == (0, 3)
    assert apply_B(B, (2, 2)) == (1, -1)
    with pytest.raises(BadConfig):
        apply_B(B, (0,))

def test_subdifferential_examples():
    sub = subdifferential(AssignMatrix.of([[0, -1], [-1, 0]]), (0, 0))
    assert sub.sets == (frozenset([0]), frozenset([1]))
    assert sub.covering and sub.minimal

    sub = subdifferential(AssignMatrix.of([[0, 0], [0, 0]]), (0, 0))
    assert sub.sets == (frozenset([0, 1]), frozenset([0, 1]))
    assert sub.covering and not sub.minimal

    assert subdifferential(AssignMatrix.of([[4]]), (1,)).sets == (frozenset([0]),)

def test_strong_regularity_examples():
    cert = strong_regularity(AssignMatrix.of([[0, -1], [-1, 0]]))
    assert cert.bijection == (0, 1)
    assert normal_form(AssignMatrix.of([[0, -1], [-1, 0]]), cert) == AssignMatrix.of([[0, -1], [-1, 0]])

    with pytest.raises(NotStronglyRegular):
        strong_regularity(AssignMatrix.of([[0, 0], [0, 0]]))

    B = AssignMatrix.of([[5, 1], [1, 5]])
    cert = strong_regularity(B)
    assert cert.bijection == (0, 1)
    assert cert.f == (0, 0)
    assert cert.g == (5, 5)
    assert cert.search == 'enumeration'
    assert normal_form(B, cert) == AssignMatrix.of([[0, -4], [-4, 0]])

def test_normal_form_rejects_bad_certificates():
    B = AssignMatrix.of([[0, 0], [0, 0]])
    with pytest.raises(CertificateInvalid):
        normal_form(B, RegularityCertificate((0, 1), (0, 0), (0, 0)))
    with pytest.raises(CertificateInvalid):
        normal_form(B, RegularityCertificate((0, 1), (0, 0), (0, 0), strongly_regular=False))

def test_generalized_inverse():
    B = AssignMatrix.of([[5, 1], [1, 5]])
    assert generalized_inverse_holds(B, (5, 5))
    assert not generalized_inverse_holds(B, (0, 5))
    rng = np.random.default_rng(51)
    for _ in range(30):
        B = random_assign(rng, 3)
        f = tuple(Fraction(int(v)) for v in rng.integers(-5, 6, size=3))
        assert generalized_inverse_holds(B, apply_B(B, f))
        c = Fraction(int(rng.integers(-5, 6)))
        assert apply_B(B, tuple(v + c for v in f)) == tuple(v - c for v in apply_B(B, f))

def test_distances_examples():
    distances, phi, phi_tilde = distances_potentials(AssignMatrix.of([[5, 1], [1, 5]]), (0, 1))
    assert distances == TropMatrix.of([[0, -4], [-4, 0]])
    assert phi == (0, 0) and phi_tilde == (0, 0)

    distances, phi, phi_tilde = distances_potentials(AssignMatrix.of([[0, -1], [-2, 0]]), (0, 1))
    assert all(distances[i, j] <= 0 for i in range(2) for j in range(2))
    assert phi == (0, 0) and phi_tilde == (0, 0)

    with pytest.raises(ImprovingCycle):
        distances_potentials(AssignMatrix.of([[0, 3], [3, 0]]), (0, 1))
    with pytest.raises(BadConfig):
        distances_potentials(AssignMatrix.of([[0, 3], [3, 0]]), (0, 0))

def test_strong_regularity_matches_enumeration():
    rng = np.random.default_rng(52)
    for _ in range(80):
        n = int(rng.integers(1, 5))
        B = random_assign(rng, n)
        best = unique_optimum(B)
        if best is None:
            with pytest.raises(NotStronglyRegular):
                strong_regularity(B)
            continue

        cert = strong_regularity(B)
        F, f, g = cert.bijection, cert.f, cert.g
        assert F == best
        for i in range(n):
            for k in range(n):
                if k != F[i]:
                    assert B[i, F[i]] - f[F[i]] > B[i, k] - f[k]

        C = normal_form(B, cert)
        assert all(C[i, i] == 0 for i in range(n))
        assert all(C[i, j] < 0 for i in range(n) for j in range(n) if i != j)
        psi = tuple(f[F[j]] for j in range(n))
        assert similar(B, C, tuple(range(n)), F, g, psi)

        # the argmax sets single out the optimal bijection
        assert subdifferential(B, g).sets == tuple(frozenset([F[i]]) for i in range(n))
        assert subdifferential(B, g).minimal
        by_column = subdifferential(B, f, transpose=True).sets
        assert all(by_column[F[i]] == frozenset([i]) for i in range(n))

@pytest.mark.slow
def test_strong_regularity_large_sample():
    rng = np.random.default_rng(54)
    for _ in range(500):
        B = random_assign(rng, int(rng.integers(1, 8)))
        best = unique_optimum(B)
        if best is None:
            with pytest.raises(NotStronglyRegular):
                strong_regularity(B)
        else:
            assert strong_regularity(B).bijection == best

def test_solver_path_agrees(monkeypatch):
    rng = np.random.default_rng(53)
    matrices = [random_assign(rng, 4) for _ in range(20)]
    expected = [unique_optimum(B) for B in matrices]
    monkeypatch.setattr(config, 'PERM_CAP', 0)
    for B, best in zip(matrices, expected):
        if best is not None:
            cert = strong_regularity(B)
            assert cert.bijection == best
            assert cert.search == 'solver'

def test_potential_properties():
    rng = np.random.default_rng(54)
    for _ in range(30):
        B = random_assign(rng, 3)
        best = unique_optimum(B)
        if best is None:
            continue
        distances, phi, phi_tilde = distances_potentials(B, best)
        assert all(distances[i, i] >= 0 for i in range(3))
        assert all(v >= 0 for v in phi) and all(v >= 0 for v in phi_tilde)
        for i in range(3):
            assert phi[i] == max(distances[i, j] + phi[j] for j in range(3) if distances[i, j] is not None)
