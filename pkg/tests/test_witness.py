import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symphorn.cone import OUTSIDE, check_friedland, check_horn_sp
from symphorn.horn import horn_inequalities
from symphorn.linalg import NotPSDError, random_hermitian
from symphorn.williamson import canonical_form, j_matrix, symplectic_eigenvalues
from symphorn.witness import (
    FOUND,
    INFEASIBLE_CLAIMED,
    NOT_FOUND,
    HermitianTriple,
    literature_slacks,
    monte_carlo_forward,
    find_hermitian_witness,
    find_symplectic_witness,
    realize_majorization,
    sample_majorization_gaps,
    sample_sum_spectra,
    symmetric_sqrt_factor,
)


def _psd(n, seed, rank=None):
    rng = np.random.default_rng(seed)
    rank = n if rank is None else rank
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    return g @ g.conj().T / n


def test_sqrt_factor_examples():
    assert np.allclose(symmetric_sqrt_factor(2 * np.eye(3)), np.eye(3))
    assert np.allclose(symmetric_sqrt_factor(np.diag([8.0, 2.0])), np.diag([2.0, 1.0]))
    with pytest.raises(NotPSDError):
        symmetric_sqrt_factor(np.diag([1.0, -1.0]))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1), st.booleans())
def test_sqrt_factor_property(n, seed, low_rank):
    p = _psd(n, seed, rank=1 if low_rank else None)
    m = symmetric_sqrt_factor(p)
    assert np.array_equal(m, m.T)
    assert np.max(np.abs(2 * m @ m.conj() - p)) <= 1e-9 * (1 + np.max(np.abs(p)))


def test_realize_majorization_examples():
    z = np.zeros((2, 2))
    assert np.allclose(realize_majorization(HermitianTriple(z, z, 2 * np.eye(2))), np.eye(2))
    a, b = random_hermitian(3, 1), random_hermitian(3, 2)
    assert np.allclose(realize_majorization(HermitianTriple(a, b, a + b)), 0, atol=1e-7)
    with pytest.raises(ValueError):
        HermitianTriple(np.eye(2), np.eye(2), np.eye(2))
    with pytest.raises(ValueError):
        HermitianTriple(np.eye(2), np.eye(3), np.eye(2))


def test_forward_examples_and_determinism():
    s = monte_carlo_forward(1, 1000, 0)
    assert s.violations == 0 and s.worst_slack >= 0
    a, b = monte_carlo_forward(2, 300, 5), monte_carlo_forward(2, 300, 5)
    assert a.to_dict() == b.to_dict() and a.violations == 0
    assert sum(a.verdicts.values()) == 300
    kept = monte_carlo_forward(2, 5, 1, keep_triples=True).triples
    assert len(kept) == 5 and all(len(t) == 3 for t in kept)


def test_literature_families_on_forward_samples():
    for n in (1, 2, 3, 4):
        for x, y, z in monte_carlo_forward(n, 200, 3, keep_triples=True).triples:
            assert min(literature_slacks(x, y, z).values()) >= -1e-9


def test_top_k_reading_of_ky_fan_fails():
    # q1 + q2 has top eigenvalue 1 + eps while lambda_1(q1) + lambda_1(q2) = 2,
    # so sums of the largest entries do not bound z from below
    eps = 0.01
    q1 = np.diag([1.0, eps, 1.0, eps])
    q2 = np.diag([eps, 1.0, eps, 1.0])
    x, y, z = (symplectic_eigenvalues(q) for q in (q1, q2, q1 + q2))
    assert z[0] < x[0] + y[0]
    assert min(literature_slacks(x, y, z).values()) >= -1e-12
    assert check_horn_sp(x, y, z, horn_inequalities(2)).verdict != OUTSIDE


def test_sample_sum_spectra_matches_direct():
    x, y = (2.0, 1.0), (1.5, 0.5)
    sums = sample_sum_spectra(x, y, 50, seed=4)
    assert sums.shape == (50, 2)
    assert np.all(sums.sum(axis=1) >= sum(x) + sum(y) - 1e-9)
    assert np.array_equal(sums, sample_sum_spectra(x, y, 50, seed=4))


def test_symplectic_witness_diagonal():
    r = find_symplectic_witness((1.0,), (2.0,), (3.0,))
    assert r.status == FOUND and r.seed_used == 0
    assert np.allclose(r.witness, np.eye(2))


def test_symplectic_witness_found_is_verified():
    x, y, z = (1.0,), (1.0,), (3.0,)
    r = find_symplectic_witness(x, y, z, seed=2)
    assert r.status == FOUND and r.residual < 1e-6
    s = r.witness
    j = j_matrix(1)
    assert np.max(np.abs(s.T @ j @ s - j)) < 1e-9
    q = canonical_form(x) + s.T @ canonical_form(y) @ s
    assert symplectic_eigenvalues((q + q.T) / 2)[0] == pytest.approx(3.0, abs=1e-6)


def test_symplectic_witness_from_forward_sample():
    x, y, z = monte_carlo_forward(2, 1, 11, keep_triples=True).triples[0]
    r = find_symplectic_witness(x, y, z, seed=0)
    assert r.status == FOUND and r.residual < 1e-6


def test_symplectic_witness_negative():
    r = find_symplectic_witness((1.0,), (1.0,), (1.5,), budget=200, restarts=3)
    assert r.status == NOT_FOUND and r.witness is None
    assert check_horn_sp((1,), (1,), (1.5,), horn_inequalities(1)).verdict == OUTSIDE
    r = find_symplectic_witness((1.0,), (1.0,), (1.5,), budget=200, restarts=3, oracle_verdict=OUTSIDE)
    assert r.status == INFEASIBLE_CLAIMED


def test_witness_determinism():
    a = find_symplectic_witness((2.0, 1.0), (1.0, 0.5), (3.5, 2.0), seed=3)
    b = find_symplectic_witness((2.0, 1.0), (1.0, 0.5), (3.5, 2.0), seed=3)
    assert a.to_dict() == b.to_dict()


def test_hermitian_witness_codiagonal_and_generic():
    r = find_hermitian_witness((2.0, 1.0), (1.0, -1.0), (3.0, 0.0))
    assert r.status == FOUND and r.iterations == 1
    r = find_hermitian_witness((2.0, 1.0), (2.0, 1.0), (5.0, 4.0))
    assert r.status == FOUND
    t = r.witness
    assert t.min_gap() >= -1e-9
    assert [list(s) for s in t.spectra()][:2] == [pytest.approx([2, 1]), pytest.approx([2, 1])]
    m = realize_majorization(t)
    assert np.max(np.abs(t.a + t.b + 2 * m @ m.conj() - t.c)) < 1e-8


def test_hermitian_witness_negative():
    x, y, z = (1.0, 0.0), (1.0, 0.0), (0.5, 0.5)
    assert check_friedland(x, y, z, horn_inequalities(2)).verdict == OUTSIDE
    r = find_hermitian_witness(x, y, z, budget=200, restarts=3)
    assert r.status == NOT_FOUND and r.residual > 0
    assert np.all(sample_majorization_gaps(x, y, z, 500, 0) < -0.1)


def test_witness_result_json():
    doc = find_hermitian_witness((1.0,), (1.0,), (3.0,)).to_dict()
    assert set(doc) == {"status", "residual", "iterations", "seed", "witness"}
    assert set(doc["witness"]) == {"a", "b", "c"}
    assert find_symplectic_witness((1.0,), (1.0,), (1.5,), budget=50, restarts=1).to_dict()["witness"] is None
