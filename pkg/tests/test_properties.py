import numpy as np
from hypothesis import given, settings, strategies as st

from nvk import (
    Atoms,
    QuadratureConfig,
    extended_poisson,
    hermitian_eigenvalues,
    integrate_1d,
    integrate_measure,
    kernel_difference_check,
    nevanlinna_defect,
    sample_disk_points,
    sample_offaxis_points,
    sample_upper_points,
)
from nvk.psd import report_from_matrix

seeds = st.integers(0, 2**32 - 1)
reals = st.floats(-3, 3, allow_nan=False)
CFG = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-13)


@settings(max_examples=25, deadline=None)
@given(reals, reals, st.floats(0.2, 3), st.floats(0.2, 3))
def test_quadrature_linearity(a, b, c1, c2):
    f = lambda x: 1 / (1 + (x - c1) ** 2)
    g = lambda x: np.exp(-((x - c2) ** 2))
    lhs = integrate_1d(lambda x: a * f(x) + b * g(x), CFG, points=(c1, c2))
    rhs = a * integrate_1d(f, CFG, points=(c1,)) + b * integrate_1d(g, CFG, points=(c2,))
    assert abs(lhs - rhs) < 1e-8 * (1 + abs(a) + abs(b))


def random_hermitian(seed, m):
    rng = np.random.default_rng(seed)
    A = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    return A + A.conj().T


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 9))
def test_jacobi_invariants(seed, m):
    A = random_hermitian(seed, m)
    lam = hermitian_eigenvalues(A)
    assert np.all(np.diff(lam) >= 0)
    assert abs(lam.sum() - np.trace(A).real) < 1e-10 * (1 + np.abs(A).sum())
    phases = np.exp(1j * np.random.default_rng(seed + 1).uniform(0, 6.3, m))
    U = np.diag(phases)
    assert np.allclose(hermitian_eigenvalues(U @ A @ U.conj().T), lam, atol=1e-10)
    assert np.allclose(lam, np.linalg.eigvalsh(A), atol=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3))
def test_kernel_difference_identity(seed, n):
    z = sample_offaxis_points(n, 1, seed)[0]
    w = sample_offaxis_points(n, 1, seed + 7)[0]
    t = np.random.default_rng(seed).normal(scale=3, size=(5, n))
    assert np.all(kernel_difference_check(z, w, t) < 1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3))
def test_extended_poisson_conj_symmetry(seed, n):
    z = sample_offaxis_points(n, 1, seed)[0]
    w = sample_offaxis_points(n, 1, seed + 3)[0]
    t = np.random.default_rng(seed).normal(size=(4, n))
    assert np.allclose(extended_poisson(z, w, t), np.conj(extended_poisson(w, z, t)), atol=1e-12)


def atoms(seed, n, k):
    rng = np.random.default_rng(seed)
    return Atoms(rng.normal(scale=2, size=(k, n)), rng.uniform(0, 2, k))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 3), st.integers(1, 4), st.integers(1, 4))
def test_measure_and_defect_additivity(seed, n, k1, k2):
    mu1, mu2 = atoms(seed, n, k1), atoms(seed + 1, n, k2)
    f = lambda t: np.prod(np.cos(t), axis=-1)
    assert abs(integrate_measure(mu1 + mu2, f) - integrate_measure(mu1, f) - integrate_measure(mu2, f)) < 1e-12
    z = sample_upper_points(n, 1, seed)[0]
    both = nevanlinna_defect(mu1 + mu2, z)
    assert abs(both - nevanlinna_defect(mu1, z) - nevanlinna_defect(mu2, z)) < 1e-10 * (1 + abs(both))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 10))
def test_negative_count_monotone_on_nested_samples(seed, m):
    A = random_hermitian(seed, m)
    counts = [report_from_matrix(A[:k, :k]).negative_count for k in range(1, m + 1)]
    assert all(a <= b for a, b in zip(counts, counts[1:]))


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(1, 4), st.integers(1, 20))
def test_samplers_stay_in_domain(seed, n, m):
    assert np.all(sample_upper_points(n, m, seed).imag > 0)
    assert np.all(sample_offaxis_points(n, m, seed).imag != 0)
    assert np.all(np.abs(sample_disk_points(n, m, seed)) < 1)
