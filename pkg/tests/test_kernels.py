import numpy as np
import pytest

from nvk import (
    extended_poisson,
    kernel_difference_check,
    kernel_Kn,
    mixed_n_sum,
    n_term,
    poisson_kernel,
)
from nvk.errors import DomainError
from nvk.kernels import mixed_rho_vectors


def test_n_term_examples():
    assert abs(n_term(0, 5 + 1j, 0.0) - 1) < 1e-15
    for t in (-3.0, 0.0, 0.5, 10.0):
        assert abs(n_term(-1, 1j, t)) < 1e-15
    z, t = 2 + 3j, 1.0
    assert abs(np.conj(n_term(-1, z, t)) - n_term(1, z, t)) < 1e-15


def test_n_term_rejects_real_argument():
    with pytest.raises(DomainError):
        n_term(-1, 2.0, 0.0)
    with pytest.raises(ValueError):
        n_term(2, 1j, 0.0)


def test_n0_is_real_and_z_independent(rng):
    t = rng.normal(size=20)
    a, b = n_term(0, 1j, t), n_term(0, -3 + 0.2j, t)
    assert np.allclose(a, b) and np.allclose(a.imag, 0)


def test_k1_example():
    assert abs(kernel_Kn([1j], [1.0]) - 0.5j) < 1e-15


def test_kn_at_i_is_i_times_product_of_n0(rng):
    for n in (1, 2, 3):
        t = rng.normal(size=n)
        expected = 1j * np.prod(n_term(0, 1j, t))
        assert abs(kernel_Kn(np.full(n, 1j), t) - expected) < 1e-14


def test_kn_matches_defining_form(rng):
    # defining form i(2 prod(N_-1 + N_0) - prod N_0), kept as an oracle
    for n in (1, 2, 3):
        z = rng.normal(size=n) + 1j * rng.uniform(0.2, 3, size=n)
        t = rng.normal(size=n)
        defining = 1j * (2 * np.prod(n_term(-1, z, t) + n_term(0, 1j, t)) - np.prod(n_term(0, 1j, t)))
        assert abs(kernel_Kn(z, t) - defining) < 1e-13


def test_conj_kn_relation(rng):
    for n in (1, 2, 3):
        w = rng.normal(size=n) + 1j * rng.uniform(0.2, 3, size=n)
        t = rng.normal(size=n)
        rhs = -1j * (2 * np.prod(n_term(1, w, t) + n_term(0, 1j, t)) - np.prod(n_term(0, 1j, t)))
        assert abs(np.conj(kernel_Kn(w, t)) - rhs) < 1e-13


def test_poisson_kernel_examples():
    assert abs(poisson_kernel([1j], [0.0]) - 1) < 1e-15
    assert abs(poisson_kernel([1j, 1j], [0.0, 0.0]) - 1) < 1e-15
    x, y, t = 0.3, 1.7, -2.0
    assert abs(poisson_kernel([x + 1j * y], [t]) - y / ((t - x) ** 2 + y * y)) < 1e-15
    with pytest.raises(DomainError):
        poisson_kernel([-1j], [0.0])


def test_extended_poisson_examples(rng):
    assert abs(extended_poisson([1j, 1j], [1j, 1j], [0.0, 0.0]) - 1) < 1e-15
    assert abs(extended_poisson([1j], [3j], [0.0]) - 2 / 3) < 1e-15
    z = rng.normal(size=2) + 1j * rng.uniform(0.2, 3, size=2)
    t = rng.normal(size=2)
    assert abs(extended_poisson(z, z, t) - poisson_kernel(z, t)) < 1e-14


def test_kernel_difference_identity_examples(rng):
    z = np.array([1 + 1j, -2 - 0.5j])
    w = np.array([0.5 - 2j, 1j])
    assert kernel_difference_check(z, w, np.array([0.3, -1.2])) < 1e-13
    u = np.array([1 + 1j, -2 + 0.5j])
    assert kernel_difference_check(u, u, np.array([0.3, -1.2])) < 1e-13
    assert kernel_difference_check([2 - 1j], [1j], [0.7]) < 1e-14


def test_mixed_rho_vectors():
    assert mixed_rho_vectors(1) == []
    assert mixed_rho_vectors(2) == [(-1, 1), (1, -1)]
    assert len(mixed_rho_vectors(3)) == 27 - 2 * 8 + 1
    assert mixed_n_sum([1j], [2j], np.array([0.5])) == 0


def test_kernels_broadcast(rng):
    z = rng.normal(size=(5, 2)) + 1j
    t = rng.normal(size=(7, 1, 2))
    assert kernel_Kn(z, t).shape == (7, 5)
    assert kernel_difference_check(z, z[::-1], t).shape == (7, 5)
