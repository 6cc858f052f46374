"""Sampled positive semi-definiteness checks for two-point kernels."""

from dataclasses import dataclass
import csv
import io

import numpy as np

from .errors import DomainError, HermitianViolation, Unstable
from .numerics import (
    HermitianMatrix,
    as_point,
    hermitian_eigenvalues,
    sample_disk_points,
    sample_offaxis_points,
    sample_upper_points,
)

__all__ = [
    "KernelFunction",
    "GramReport",
    "ClosureReport",
    "NegativeSquaresReport",
    "gram_matrix",
    "psd_check",
    "quadratic_form",
    "negative_squares_estimate",
    "product_sum_closure_check",
    "zero_kernel",
    "rank_one_kernel",
    "DEFAULT_PSD_TOL",
]

DOMAINS = ("upper", "offaxis", "disk")
PROVENANCES = ("poisson-type", "nevanlinna-kernel", "closed-form", "user")
DEFAULT_PSD_TOL = 1e-10
ASYMMETRY_TOL = 1e-8


class KernelFunction:
    """A map ``(z, w) -> complex`` on a declared domain.

    ``domain`` is ``"upper"`` (C^{+n}), ``"offaxis"`` ((C \\ R)^n) or
    ``"disk"`` (D^n).  Kernels add and multiply pointwise.
    """

    def __init__(self, evaluator, n, domain="upper", provenance="user", name="kernel"):
        if domain not in DOMAINS:
            raise ValueError(f"domain must be one of {DOMAINS}")
        if provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        self.evaluator = evaluator
        self.n = int(n)
        self.domain = domain
        self.provenance = provenance
        self.name = name

    def __call__(self, z, w):
        return complex(self.evaluator(as_point(z), as_point(w)))

    def check_point(self, z):
        z = as_point(z)
        if z.size != self.n:
            raise ValueError(f"{self.name} takes points of C^{self.n}")
        if self.domain == "upper" and not np.all(z.imag > 0):
            raise DomainError(f"{z} is outside the poly-upper half-plane")
        if self.domain == "offaxis" and np.any(z.imag == 0):
            raise DomainError(f"{z} has a real coordinate")
        if self.domain == "disk" and not np.all(np.abs(z) < 1):
            raise DomainError(f"{z} is outside the unit polydisk")
        return z

    def _combine(self, other, op, symbol):
        if isinstance(other, KernelFunction):
            if other.n != self.n:
                raise ValueError("kernels act on different dimensions")
            domain = self.domain if self.domain == other.domain else "upper"
            if {self.domain, other.domain} == {"offaxis", "upper"}:
                domain = "upper"
            elif self.domain != other.domain:
                raise ValueError("kernels live on incompatible domains")
            return KernelFunction(
                lambda z, w: op(self.evaluator(z, w), other.evaluator(z, w)),
                self.n,
                domain,
                "user",
                f"({self.name} {symbol} {other.name})",
            )
        c = complex(other)
        return KernelFunction(
            lambda z, w: op(self.evaluator(z, w), c),
            self.n,
            self.domain,
            self.provenance if c.imag == 0 and c.real >= 0 else "user",
            f"({self.name} {symbol} {c})",
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b, "+")

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b, "*")

    __radd__ = __add__
    __rmul__ = __mul__

    def __repr__(self):
        return f"<KernelFunction {self.name} n={self.n} on {self.domain}>"


def zero_kernel(n, domain="upper"):
    return KernelFunction(lambda z, w: 0.0, n, domain, "closed-form", "zero")


def rank_one_kernel(f, n, domain="upper", name="f(z)conj(f(w))"):
    """``F(z, w) = f(z) * conj(f(w))``, positive semi-definite on any domain."""
    return KernelFunction(
        lambda z, w: f(z) * np.conj(f(w)), n, domain, "closed-form", name
    )


def _points(F, points):
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    if pts.shape[1] != F.n and F.n == 1 and pts.shape[0] == 1:
        pts = pts.T
    for p in pts:
        F.check_point(p)
    return pts


def gram_matrix(F, points, asymmetry_tol=ASYMMETRY_TOL):
    """``M[i, j] = F(z_i, z_j)``, Hermitian-averaged.

    Raises :class:`HermitianViolation` when the raw matrix is further than
    ``asymmetry_tol * max(1, max|M|)`` from Hermitian.
    """
    pts = _points(F, points)
    m = len(pts)
    raw = np.empty((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            raw[i, j] = F.evaluator(pts[i], pts[j])
    M = HermitianMatrix(raw)
    scale = max(1.0, float(np.max(np.abs(raw)))) if m else 1.0
    if M.max_asymmetry > asymmetry_tol * scale:
        raise HermitianViolation(
            f"{F.name}: Gram asymmetry {M.max_asymmetry:.3e} exceeds "
            f"{asymmetry_tol:g} * {scale:.3g}"
        )
    return M


@dataclass(frozen=True)
class GramReport:
    m: int
    eigenvalues: np.ndarray
    min_eigenvalue: float
    negative_count: int
    zero_count: int
    tolerance: float
    scale: float
    max_asymmetry: float = 0.0
    label: str = ""

    @property
    def verdict_psd(self):
        return self.negative_count == 0

    def to_json(self):
        return {
            "label": self.label,
            "m": self.m,
            "min_eigenvalue": self.min_eigenvalue,
            "negative_count": self.negative_count,
            "zero_count": self.zero_count,
            "tolerance": self.tolerance,
            "scale": self.scale,
            "max_asymmetry": self.max_asymmetry,
            "verdict_psd": self.verdict_psd,
            "eigenvalues": [float(x) for x in self.eigenvalues],
        }

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "index", "eigenvalue"])
        for k, lam in enumerate(self.eigenvalues):
            writer.writerow([self.label, k, repr(float(lam))])
        return buf.getvalue()


def report_from_matrix(M, tol=DEFAULT_PSD_TOL, label=""):
    if not isinstance(M, HermitianMatrix):
        M = HermitianMatrix(M)
    lam = hermitian_eigenvalues(M)
    m = lam.size
    scale = max(1.0, float(np.max(np.abs(lam)))) if m else 1.0
    return GramReport(
        m=m,
        eigenvalues=lam,
        min_eigenvalue=float(lam[0]) if m else 0.0,
        negative_count=int(np.sum(lam < -tol * scale)),
        zero_count=int(np.sum(np.abs(lam) <= tol * scale)),
        tolerance=float(tol),
        scale=scale,
        max_asymmetry=M.max_asymmetry,
        label=label,
    )


def psd_check(F, points, tol=DEFAULT_PSD_TOL):
    """Eigenvalue report of the Gram matrix of ``F`` on ``points``."""
    if len(points) < 1:
        raise ValueError("need at least one point")
    return report_from_matrix(gram_matrix(F, points), tol, F.name)


def quadratic_form(F, points, coefficients):
    """``sum_{i,j} F(z_i, z_j) c_i conj(c_j)``."""
    pts = _points(F, points)
    c = np.asarray(coefficients, dtype=complex)
    if c.shape != (len(pts),):
        raise ValueError("one coefficient per point is required")
    total = 0j
    for i in range(len(pts)):
        for j in range(len(pts)):
            total += F.evaluator(pts[i], pts[j]) * c[i] * np.conj(c[j])
    return complex(total)


# -- negative squares --------------------------------------------------------


@dataclass(frozen=True)
class NegativeSquaresReport:
    kappa: int
    sizes: tuple
    counts: tuple  # counts[trial][k] at sizes[k]
    plateaued: bool

    def to_json(self):
        return {
            "kappa": self.kappa,
            "sizes": list(self.sizes),
            "counts": [list(c) for c in self.counts],
            "plateaued": self.plateaued,
        }


def _default_sampler(F):
    if F.domain == "disk":
        return lambda m, seed: sample_disk_points(F.n, m, seed)
    if F.domain == "offaxis":
        return lambda m, seed: sample_offaxis_points(F.n, m, seed)
    return lambda m, seed: sample_upper_points(F.n, m, seed)


def negative_squares_estimate(
    F, sampler=None, trials=1, seed=0, sizes=(8, 16, 32, 64), tol=DEFAULT_PSD_TOL
):
    """Lower estimate of the number of negative squares of ``F``.

    Each trial draws ``max(sizes)`` points and counts negative eigenvalues
    on the nested prefixes.  Raises :class:`Unstable` when the count of any
    trial still grows between the last two sizes.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    sizes = tuple(sorted(int(s) for s in sizes))
    sampler = sampler or _default_sampler(F)
    counts = []
    for k in range(trials):
        pts = np.asarray(sampler(sizes[-1], seed + k), dtype=complex)
        M = gram_matrix(F, pts).entries
        row = []
        for s in sizes:
            row.append(report_from_matrix(M[:s, :s], tol).negative_count)
        counts.append(tuple(row))
    kappa = max(r[-1] for r in counts)
    plateaued = len(sizes) < 2 or all(r[-1] == r[-2] for r in counts)
    report = NegativeSquaresReport(kappa, sizes, tuple(counts), plateaued)
    if not plateaued:
        raise Unstable(f"negative count still increasing at m={sizes[-1]}: {counts}")
    return kappa, report


# -- closure under sums and products -----------------------------------------


@dataclass(frozen=True)
class ClosureReport:
    first: GramReport
    second: GramReport
    sum: GramReport
    product: GramReport

    @property
    def verdict(self):
        return self.sum.verdict_psd and self.product.verdict_psd


def product_sum_closure_check(F1, F2, points, tol=DEFAULT_PSD_TOL):
    """Gram reports of ``F1``, ``F2``, ``F1 + F2`` and ``F1 * F2`` on one sample."""
    pts = _points(F1, points)
    A = gram_matrix(F1, pts).entries
    B = gram_matrix(F2, pts).entries
    return ClosureReport(
        report_from_matrix(A, tol, F1.name),
        report_from_matrix(B, tol, F2.name),
        report_from_matrix(A + B, tol, f"{F1.name} + {F2.name}"),
        report_from_matrix(A * B, tol, f"{F1.name} * {F2.name}"),
    )
