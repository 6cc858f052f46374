"""Pointwise kernels on (C \\ R)^n x R^n.

All functions broadcast: points ``z``, ``w`` and real nodes ``t`` may carry
arbitrary leading axes, the last axis always indexes the ``n`` coordinates.
Kernels are evaluated in fully factored form; the defining sums of N-terms
are kept in the test-suite as oracles.
"""

import itertools

import numpy as np

from .errors import DomainError

__all__ = [
    "n_term",
    "mixed_rho_vectors",
    "mixed_n_sum",
    "kernel_Kn",
    "poisson_kernel",
    "extended_poisson",
    "kernel_difference_residual",
    "kernel_difference_check",
]

_TWO_I = 2j


def _offaxis(z):
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise DomainError("kernel argument has a real coordinate")
    return z


def n_term(rho, z, t):
    """The three elementary terms N_{-1}, N_0, N_1.

    ``N_0`` does not depend on ``z``; ``conj(N_{-1}(z, t)) == N_1(z, t)``.
    """
    z = _offaxis(z)
    t = np.asarray(t, dtype=float)
    if rho == -1:
        return (1 / (t - z) - 1 / (t - 1j)) / _TWO_I
    if rho == 0:
        return (1 / (t - 1j) - 1 / (t + 1j)) / _TWO_I + 0 * z.real
    if rho == 1:
        return (1 / (t + 1j) - 1 / (t - z.conj())) / _TWO_I
    raise ValueError(f"rho must be -1, 0 or 1, got {rho!r}")


def mixed_rho_vectors(n):
    """Index vectors in {-1,0,1}^n containing both -1 and 1, lexicographic."""
    return [r for r in itertools.product((-1, 0, 1), repeat=n) if -1 in r and 1 in r]


def mixed_n_sum(z, w, t):
    """Sum over mixed index vectors of prod_j N_{rho_j}(eps_{rho_j}(z_j, w_j), t_j).

    N_{-1} takes its argument from ``z``, N_1 from ``w``; N_0 uses ``i``.
    Empty (zero) for n = 1.
    """
    z = _offaxis(z)
    w = _offaxis(w)
    t = np.asarray(t, dtype=float)
    n = t.shape[-1]
    shape = np.broadcast_shapes(z.shape, w.shape, t.shape)[:-1]
    terms = {
        -1: np.broadcast_to(n_term(-1, z, t), shape + (n,)),
        0: np.broadcast_to(n_term(0, 1j, t), shape + (n,)),
        1: np.broadcast_to(n_term(1, w, t), shape + (n,)),
    }
    total = np.zeros(shape, dtype=complex)
    for rho in mixed_rho_vectors(n):
        prod = np.ones(shape, dtype=complex)
        for j, r in enumerate(rho):
            prod = prod * terms[r][..., j]
        total = total + prod
    return total


def kernel_Kn(z, t):
    """Integral kernel of the representation formula, K_n(z, t).

    Uses ``1/(t-z) - 1/(t+i) = (z+i)/((t-z)(t+i))`` and
    ``1/(t-i) - 1/(t+i) = 2i/(1+t^2)`` so nothing cancels for large ``|t|``.
    """
    z = _offaxis(z)
    t = np.asarray(t, dtype=float)
    n = t.shape[-1]
    scale = _TWO_I**n
    first = np.prod((z + 1j) / ((t - z) * (t + 1j)), axis=-1)
    second = np.prod(_TWO_I / (1 + t * t), axis=-1)
    return 1j * (2 * first - second) / scale


def poisson_kernel(z, t):
    """Poisson kernel of the poly-upper half-plane, prod Im z_j / |t_j - z_j|^2."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise DomainError("Poisson kernel needs a point of the poly-upper half-plane")
    t = np.asarray(t, dtype=float)
    return np.prod(z.imag / np.abs(t - z) ** 2, axis=-1)


def extended_poisson(z, w, t):
    """Extended Poisson kernel (2i)^{-n} prod (z-conj w)/((t-z)(t-conj w)).

    On the diagonal ``w = z`` of the poly-upper half-plane this is the
    ordinary Poisson kernel.
    """
    z = _offaxis(z)
    w = _offaxis(w)
    t = np.asarray(t, dtype=float)
    n = t.shape[-1]
    wb = w.conj()
    return np.prod((z - wb) / ((t - z) * (t - wb)), axis=-1) / _TWO_I**n


def kernel_difference_residual(z, w, t):
    """Signed defect of the kernel-difference identity

    (K_n(z,t) - conj K_n(w,t)) / 2i = P_n(z,w,t) - (mixed N-sum).
    """
    lhs = (kernel_Kn(z, t) - np.conj(kernel_Kn(w, t))) / _TWO_I
    return lhs - extended_poisson(z, w, t) + mixed_n_sum(z, w, t)


def kernel_difference_check(z, w, t):
    """Absolute residual of the kernel-difference identity (broadcasts)."""
    return np.abs(kernel_difference_residual(z, w, t))
