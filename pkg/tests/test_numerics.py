import math

import numpy as np
import pytest

from nvk import (
    HermitianMatrix,
    NonConvergent,
    QuadratureConfig,
    hermitian_eigenvalues,
    integrate_1d,
    integrate_iterated,
    sample_disk_points,
    sample_offaxis_points,
    sample_upper_points,
)
from nvk.numerics import integrate_interval, orthant, require_offaxis, require_upper
from nvk.errors import DomainError


# -- quadrature


def test_lorentzian_integrates_to_pi():
    assert abs(integrate_1d(lambda t: 1 / (1 + t * t)) - math.pi) < 1e-12


def test_squared_lorentzian_residue_oracle():
    val = integrate_1d(lambda t: 1 / ((t - 1j) * (t + 1j) * (1 + t * t)))
    assert abs(val - math.pi / 2) < 1e-12


def test_oscillatory_fourier_residue_oracle():
    # tails beyond the truncation radius are dropped; the truncation error is ~ 1/R^2
    cfg = QuadratureConfig(truncation_radius=1e4, rel_tol=1e-8)
    val = integrate_1d(lambda t: np.exp(1j * t) / (1 + t * t), cfg)
    assert abs(val - math.pi / math.e) < 1e-7


def test_oscillatory_tail_is_reported_not_guessed():
    # at the default radius 1e6 the oscillating tail cannot be resolved
    with pytest.raises(NonConvergent):
        integrate_1d(lambda t: np.exp(1j * t) / (1 + t * t))


def test_breakpoints_resolve_narrow_peak():
    eps, c = 1e-4, 37.0
    f = lambda t: eps / ((t - c) ** 2 + eps**2)
    assert abs(integrate_1d(f, points=[c]) - math.pi) < 1e-8


def test_full_output_reports_error_estimate():
    val, err = integrate_1d(lambda t: 1 / (1 + t * t), full_output=True)
    assert abs(val - math.pi) < 1e-12
    assert 0 <= err < 1e-9


def test_finite_interval():
    assert abs(integrate_interval(lambda x: x**2, 0.0, 3.0) - 9.0) < 1e-12


def test_budget_exhaustion_raises():
    cfg = QuadratureConfig(max_subdivisions=2, truncation_radius=math.inf)
    with pytest.raises(NonConvergent):
        integrate_1d(lambda t: 1 / np.sqrt(np.abs(t) + 1e-300) / (1 + t * t), cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)


def test_iterated_product_lorentzian():
    val = integrate_iterated(lambda t: np.prod(1 / (1 + t * t), axis=-1), 2)
    assert abs(val - math.pi**2) < 1e-9


# -- eigenvalues


@pytest.mark.parametrize(
    "M, expected",
    [
        (np.eye(3), [1, 1, 1]),
        ([[2, 1], [1, 2]], [1, 3]),
        ([[0, 1j], [-1j, 0]], [-1, 1]),
    ],
)
def test_eigenvalue_examples(M, expected):
    assert np.allclose(hermitian_eigenvalues(HermitianMatrix(M)), expected, atol=1e-14)


def test_eigenvalues_match_numpy_oracle(rng):
    A = rng.normal(size=(30, 30)) + 1j * rng.normal(size=(30, 30))
    M = A + A.conj().T
    ours = hermitian_eigenvalues(M)
    assert np.all(np.diff(ours) >= 0)
    assert np.allclose(ours, np.linalg.eigvalsh(M), atol=1e-11)


def test_empty_and_zero_matrices():
    assert hermitian_eigenvalues(np.zeros((0, 0))).size == 0
    assert np.all(hermitian_eigenvalues(np.zeros((4, 4))) == 0)


def test_hermitian_matrix_records_asymmetry():
    M = HermitianMatrix([[1, 2], [0, 1]])
    assert M.max_asymmetry == 2
    assert np.allclose(M.entries, [[1, 1], [1, 1]])
    with pytest.raises(ValueError):
        HermitianMatrix(np.zeros((2, 3)))


# -- points


def test_sampler_examples():
    pts = sample_upper_points(2, 3, 7)
    assert pts.shape == (3, 2) and np.all(pts.imag > 0)
    one = sample_upper_points(1, 1, 0)
    assert one.shape == (1, 1) and one[0, 0].imag > 0
    assert np.array_equal(sample_upper_points(2, 5, 99), sample_upper_points(2, 5, 99))


def test_offaxis_and_disk_samplers():
    off = sample_offaxis_points(3, 50, 1)
    assert np.all(off.imag != 0) and np.any(off.imag < 0) and np.any(off.imag > 0)
    fixed = sample_offaxis_points(2, 4, 1, signs=(1, -1))
    assert np.all(fixed[:, 0].imag > 0) and np.all(fixed[:, 1].imag < 0)
    disk = sample_disk_points(2, 100, 3)
    assert np.all(np.abs(disk) <= 0.95)


def test_point_guards():
    with pytest.raises(DomainError):
        require_upper([1j, -1j])
    with pytest.raises(DomainError):
        require_offaxis([1j, 2.0])
    assert orthant([1j, -2j]) == (1, -1)
