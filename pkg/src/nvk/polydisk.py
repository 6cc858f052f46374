"""Cayley transform between the upper half-plane and the unit disk.

Holomorphic ``f`` on the polydisk with ``Re f >= 0`` correspond to
Herglotz-Nevanlinna ``q`` through ``f(xi) = -i q(phi(xi_1), ..., phi(xi_n))``.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import PoleError
from .numerics import as_point
from .psd import KernelFunction

__all__ = [
    "cayley",
    "cayley_inverse",
    "DiskFunction",
    "szego_psd_function",
    "residue_identity_check",
    "reparametrize_measure_check",
    "ReparametrizationReport",
]


def cayley(zeta, direction="to_halfplane"):
    """``phi(zeta) = i (1 + zeta)/(1 - zeta)`` or its inverse ``(z - i)/(z + i)``.

    ``direction`` is ``"to_halfplane"`` or ``"to_disk"``.  Broadcasts.
    """
    zeta = np.asarray(zeta, dtype=complex)
    if direction == "to_halfplane":
        if np.any(zeta == 1):
            raise PoleError("the Cayley transform has a pole at 1")
        out = 1j * (1 + zeta) / (1 - zeta)
    elif direction == "to_disk":
        if np.any(zeta == -1j):
            raise PoleError("the inverse Cayley transform has a pole at -i")
        out = (zeta - 1j) / (zeta + 1j)
    else:
        raise ValueError("direction must be 'to_halfplane' or 'to_disk'")
    return complex(out) if out.ndim == 0 else out


def cayley_inverse(z):
    return cayley(z, "to_disk")


class DiskFunction:
    """A function on the unit polydisk D^n."""

    def __init__(self, evaluator, n, provenance="closed-form", name="disk-function"):
        self.evaluator = evaluator
        self.n = n
        self.provenance = provenance
        self.name = name

    def __call__(self, xi):
        xi = as_point(xi)
        if xi.size != self.n:
            raise ValueError(f"{self.name} takes {self.n} variables")
        if np.any(np.abs(xi) >= 1):
            raise ValueError("point outside the open unit polydisk")
        return complex(self.evaluator(xi))

    @classmethod
    def from_hn(cls, q):
        """``f(xi) = -i q(phi(xi))``; ``Re f >= 0`` when ``q`` is Herglotz-Nevanlinna."""
        return cls(lambda xi: -1j * q.evaluate(cayley(xi)), q.n, "from-hn", f"disk[{q.name}]")

    def to_halfplane(self, z):
        """``q(z) = i f(phi^{-1}(z))``."""
        return 1j * self(cayley_inverse(as_point(z)))

    def min_real_part(self, points):
        return float(min(self(p).real for p in np.atleast_2d(points)))


def szego_psd_function(f):
    """``(xi, eta) -> 2^{n-1} (f(xi) + conj f(eta)) / prod (1 - xi_j conj eta_j)``."""
    n = f.n

    def F(xi, eta):
        return 2 ** (n - 1) * (f(xi) + np.conj(f(eta))) / np.prod(1 - xi * np.conj(eta))

    return KernelFunction(F, n, "disk", "closed-form", f"szego[{f.name}]")


def residue_identity_check(xi, eta, nodes=4096):
    """``|(1/pi) int_0^{2 pi} ds / ((e^{is} - xi)(e^{-is} - conj eta)) - 2/(1 - xi conj eta)|``.

    Periodic trapezoid rule with ``nodes`` points.
    """
    xi, eta = complex(xi), complex(eta)
    if abs(xi) >= 1 or abs(eta) >= 1:
        raise ValueError("xi and eta must lie in the open unit disk")
    s = 2 * math.pi * np.arange(nodes) / nodes
    e = np.exp(1j * s)
    integral = (2 * math.pi / nodes) * np.sum(1.0 / ((e - xi) * (np.conj(e) - np.conj(eta))))
    return float(abs(integral / math.pi - 2.0 / (1.0 - xi * np.conj(eta))))


@dataclass(frozen=True)
class ReparametrizationReport:
    t: np.ndarray
    ds_dt: np.ndarray
    dt_ds: np.ndarray
    max_density_error: float
    max_product_error: float


def reparametrize_measure_check(t, h=1e-5):
    """Check ``ds = 2/(1 + t^2) dt`` and ``dt = ds/(1 - cos s)`` for ``e^{is} = phi^{-1}(t)``.

    ``ds/dt`` is a central difference of ``s(t) = arg phi^{-1}(t)`` taken in
    ``[0, 2 pi)``; ``dt/ds`` is the closed form ``1/(1 - cos s)``.
    """
    t = np.asarray(t, dtype=float)

    def s_of(x):
        return np.mod(np.angle(cayley_inverse(x.astype(complex))), 2 * math.pi)

    ds_dt = (s_of(t + h) - s_of(t - h)) / (2 * h)
    dt_ds = 1.0 / (1.0 - np.cos(s_of(t)))
    return ReparametrizationReport(
        t,
        ds_dt,
        dt_ds,
        float(np.max(np.abs(ds_dt - 2.0 / (1.0 + t * t)))),
        float(np.max(np.abs(ds_dt * dt_ds - 1.0))),
    )
