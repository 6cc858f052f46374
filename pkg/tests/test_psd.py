import math

import numpy as np
import pytest

from nvk import (
    HermitianViolation,
    InverseSum,
    KernelFunction,
    Polynomial,
    Unstable,
    gram_matrix,
    negative_squares_estimate,
    nevanlinna_kernel_function,
    product_sum_closure_check,
    psd_check,
    quadratic_form,
    rank_one_kernel,
    sample_upper_points,
    zero_kernel,
)
from nvk.errors import DomainError
from nvk.fixtures import (
    LOEWNER_COEFFICIENTS,
    LOEWNER_POINTS,
    LOEWNER_VALUE,
    dirac_D,
    lebesgue_D,
    loewner_F1,
)


def cauchy1():
    return KernelFunction(lambda z, w: 2j / (z[0] - np.conj(w[0])), 1, "upper", "poisson-type", "2i/(z - conj w)")


def test_rank_one_kernel_is_psd():
    F = rank_one_kernel(lambda z: 1 / (z[0] + 1j), 1)
    assert psd_check(F, sample_upper_points(1, 4, 0)).verdict_psd


def test_zero_kernel_gram():
    M = gram_matrix(zero_kernel(2), sample_upper_points(2, 5, 0))
    assert np.all(M.entries == 0)


def test_two_point_cauchy_gram():
    M = gram_matrix(cauchy1(), [[1j], [2j]])
    assert np.allclose(M.entries, [[1, 2 / 3], [2 / 3, 1 / 2]])
    rep = psd_check(cauchy1(), [[1j], [2j]])
    assert rep.verdict_psd
    assert abs(np.prod(rep.eigenvalues) - 1 / 18) < 1e-15


def test_lebesgue_poisson_type_is_psd():
    F = KernelFunction(lebesgue_D, 1, "offaxis", "poisson-type", "lebesgue")
    assert psd_check(F, sample_upper_points(1, 20, 1)).verdict_psd


def test_loewner_kernel_is_not_psd():
    F = KernelFunction(loewner_F1(), 2, "upper", "closed-form", "F1")
    rep = psd_check(F, LOEWNER_POINTS)
    assert not rep.verdict_psd and rep.negative_count == 1


def test_quadratic_form_examples():
    F = KernelFunction(loewner_F1(), 2, "upper", "closed-form", "F1")
    value = quadratic_form(F, LOEWNER_POINTS, LOEWNER_COEFFICIENTS)
    assert abs(value - LOEWNER_VALUE) < 1e-12
    assert abs(LOEWNER_VALUE + 0.00588701) < 5e-9
    pts = sample_upper_points(1, 6, 2)
    c = np.random.default_rng(0).normal(size=6) + 1j
    assert quadratic_form(cauchy1(), pts, c).real >= -1e-12
    assert quadratic_form(cauchy1(), pts, np.zeros(6)) == 0
    with pytest.raises(ValueError):
        quadratic_form(cauchy1(), pts, np.zeros(5))


def test_eigenvector_quadratic_form_reproduces_eigenvalue():
    pts = sample_upper_points(1, 12, 3)
    M = gram_matrix(cauchy1(), pts).entries
    rep = psd_check(cauchy1(), pts)
    lam, vec = np.linalg.eigh(M)  # eigenvectors from the numpy oracle
    for k in (0, 5, 11):
        # sum F(z_i, z_j) c_i conj(c_j) = c^T M conj(c), so use conj(v)
        val = quadratic_form(cauchy1(), pts, np.conj(vec[:, k]))
        assert abs(val - rep.eigenvalues[k]) < 1e-10 * rep.scale


def test_hermitian_violation():
    F = KernelFunction(lambda z, w: 1j * (z[0] - w[0]) + 5, 1)
    with pytest.raises(HermitianViolation):
        gram_matrix(F, sample_upper_points(1, 3, 0))


def test_domain_guard():
    with pytest.raises(DomainError):
        psd_check(cauchy1(), [[-1j]])
    disk = KernelFunction(lambda z, w: 1.0, 1, "disk")
    with pytest.raises(DomainError):
        psd_check(disk, [[2.0]])


def test_negative_squares_examples():
    kappa, rep = negative_squares_estimate(nevanlinna_kernel_function(InverseSum()), seed=0)
    assert kappa == 0 and rep.plateaued
    kappa, _ = negative_squares_estimate(nevanlinna_kernel_function(Polynomial([0, 0, 0, 1])), seed=0, sizes=(4, 8, 16))
    assert kappa >= 1
    assert negative_squares_estimate(zero_kernel(1), seed=0)[0] == 0


def test_negative_squares_unstable_for_negative_definite_kernel():
    with pytest.raises(Unstable):
        negative_squares_estimate(cauchy1() * -1.0, seed=0, sizes=(4, 8))


def test_closure_examples():
    Fl = KernelFunction(lebesgue_D, 2, "offaxis", "poisson-type", "lebesgue")
    Fd = KernelFunction(dirac_D, 2, "offaxis", "poisson-type", "dirac")
    pts = sample_upper_points(2, 15, 4)
    rep = product_sum_closure_check(Fl, Fd, pts)
    assert rep.verdict and rep.first.verdict_psd and rep.second.verdict_psd
    rep0 = product_sum_closure_check(Fl, zero_kernel(2), pts)
    assert np.allclose(rep0.sum.eigenvalues, rep0.first.eigenvalues)
    assert np.all(rep0.product.eigenvalues == 0)
    schur = product_sum_closure_check(cauchy1(), cauchy1(), sample_upper_points(1, 20, 5))
    assert schur.product.verdict_psd


def test_kernel_algebra():
    F = cauchy1()
    assert (F + F)(1j, 2j) == 2 * F(1j, 2j)
    assert (F * F)(1j, 2j) == F(1j, 2j) ** 2
    assert (2 * F).provenance == "poisson-type"
    assert (F * -1).provenance == "user"
    with pytest.raises(ValueError):
        F + zero_kernel(2)
    with pytest.raises(ValueError):
        KernelFunction(lambda z, w: 0, 1, domain="strip")


def test_gram_report_serialization():
    rep = psd_check(cauchy1(), [[1j], [2j]])
    lines = rep.to_csv().strip().splitlines()
    assert lines[0] == "label,index,eigenvalue" and len(lines) == 3
    js = rep.to_json()
    assert js["m"] == 2 and js["verdict_psd"] and len(js["eigenvalues"]) == 2
