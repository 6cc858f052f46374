"""Poisson-type functions and the decompositions built on them.

For a Herglotz-Nevanlinna function with data ``(a, b, mu)``

    q(z) - conj q(w) = sum_j b_j (z_j - conj w_j)
                       + (2i)^{1-n} prod_j (z_j - conj w_j) * D(z, w)

with ``D`` the Poisson-type function of ``mu``.  This module evaluates
``D``, checks that identity and its relatives (Nevanlinna kernel, the
representation through ``D``, the symmetric extension with its error
term, Loewner decompositions), and inverts ``D`` back to ``mu``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import CertificateFailure, NonConvergent
from .kernels import mixed_n_sum
from .measures import (
    Atoms,
    CurvePushforward,
    CURVES,
    check_nevanlinna,
    growth_norm,
    integrate_measure,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    QuadratureConfig,
    as_point,
    integrate_iterated,
    require_offaxis,
    require_upper,
    sample_offaxis_points,
    sample_upper_points,
)
from .psd import KernelFunction

__all__ = [
    "PoissonTypeFunction",
    "poisson_type_eval",
    "DecompositionCertificate",
    "decompose",
    "decomposition_residual",
    "nevanlinna_kernel",
    "nevanlinna_kernel_function",
    "nevanlinna_kernel_residual",
    "d_representation",
    "StieltjesResult",
    "stieltjes_invert",
    "PluriharmonicResult",
    "pluriharmonic_defect",
    "symmetric_error_term",
    "symmetric_decomposition_residual",
    "loewner_residual",
    "loewner_kernel_identity_residual",
]


def _hints(z, w):
    return [np.array([zj.real, wj.real]) for zj, wj in zip(z, w)]


class PoissonTypeFunction:
    """``F(z, w) = pi^{-n} int prod_l 1/((t_l - z_l)(t_l - conj w_l)) dmu(t)``.

    ``closed_form(z, w)`` is an optional override that must broadcast over
    leading axes.  It is trusted only on ``closed_form_domain`` (``"upper"``
    or ``"offaxis"``) and is checked against quadrature on ``check_pairs``
    random pairs at construction.
    """

    def __init__(
        self,
        measure,
        cfg=None,
        closed_form=None,
        closed_form_domain="upper",
        check_pairs=20,
        check_tol=1e-6,
        seed=0,
        name="poisson-type",
    ):
        growth_norm(measure)
        self.measure = measure
        self.n = measure.n
        self.cfg = cfg or DEFAULT_QUADRATURE
        self.closed_form = closed_form
        self.closed_form_domain = closed_form_domain
        self.name = name
        self.check_residual = None
        if closed_form is not None and check_pairs:
            self.check_residual = self._check_override(check_pairs, check_tol, seed)

    def _check_override(self, m, tol, seed):
        sampler = sample_upper_points if self.closed_form_domain == "upper" else sample_offaxis_points
        Z = sampler(self.n, m, seed)
        W = sampler(self.n, m, seed + 1)
        worst = 0.0
        for z, w in zip(Z, W):
            worst = max(worst, abs(self.quadrature(z, w) - complex(self.closed_form(z, w))))
        if worst > tol:
            raise ValueError(
                f"closed form of {self.name} disagrees with quadrature by {worst:.3e}"
            )
        return worst

    def quadrature(self, z, w):
        z, w = require_offaxis(as_point(z)), require_offaxis(as_point(w))
        wb = w.conj()
        val = integrate_measure(
            self.measure,
            lambda t: np.prod(1.0 / ((t - z) * (t - wb)), axis=-1),
            self.cfg,
            hints=_hints(z, w),
        )
        return complex(val / math.pi**self.n)

    def _closed_ok(self, *pts):
        if self.closed_form is None:
            return False
        if self.closed_form_domain == "offaxis":
            return True
        return all(np.all(np.asarray(p).imag > 0) for p in pts)

    def evaluate(self, z, w, method="auto"):
        """``method`` is ``"auto"`` (closed form where trusted) or ``"quadrature"``."""
        if method not in ("auto", "quadrature", "closed"):
            raise ValueError("method must be 'auto', 'quadrature' or 'closed'")
        z, w = require_offaxis(as_point(z)), require_offaxis(as_point(w))
        if method == "closed" or (method == "auto" and self._closed_ok(z, w)):
            if self.closed_form is None:
                raise ValueError(f"{self.name} has no closed form")
            return complex(self.closed_form(z, w))
        return self.quadrature(z, w)

    __call__ = evaluate

    def evaluate_many(self, Z, W, method="auto"):
        """Vectorized over rows of ``Z`` and ``W`` when a closed form applies."""
        Z = np.asarray(Z, dtype=complex)
        W = np.asarray(W, dtype=complex)
        if method != "quadrature" and self._closed_ok(Z, W):
            return np.broadcast_to(self.closed_form(Z, W), np.broadcast_shapes(Z.shape, W.shape)[:-1])
        shape = np.broadcast_shapes(Z.shape, W.shape)
        Zb = np.broadcast_to(Z, shape).reshape(-1, self.n)
        Wb = np.broadcast_to(W, shape).reshape(-1, self.n)
        out = np.array([self.quadrature(z, w) for z, w in zip(Zb, Wb)])
        return out.reshape(shape[:-1])

    def kernel(self, domain="upper", method="auto"):
        return KernelFunction(
            lambda z, w: self.evaluate(z, w, method), self.n, domain, "poisson-type", self.name
        )

    def __repr__(self):
        return f"<PoissonTypeFunction {self.name} n={self.n}>"


def poisson_type_eval(P, z, w, method="auto"):
    return P.evaluate(z, w, method)


# -- main decomposition -------------------------------------------------------


def _prefactor(z, w):
    n = len(z)
    return np.prod(z - np.conj(w)) / (2j) ** (n - 1)


@dataclass(frozen=True)
class DecompositionCertificate:
    d: np.ndarray
    D: PoissonTypeFunction
    pairs: np.ndarray
    residuals: np.ndarray
    max_residual: float
    tolerance: float
    unique: bool
    note: str = ""
    nevanlinna_report: object = field(default=None, compare=False)

    @property
    def verdict(self):
        return self.max_residual <= self.tolerance

    def to_json(self):
        return {
            "d": self.d.tolist(),
            "D": self.D.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "unique": self.unique,
            "note": self.note,
            "residuals": [float(r) for r in self.residuals],
        }


def decomposition_residual(q, d, D, z, w, method="auto"):
    """``|q(z) - conj q(w) - sum d_j (z_j - conj w_j) - prefactor * D(z, w)|``."""
    z, w = as_point(z), as_point(w)
    lhs = q.evaluate(z) - np.conj(q.evaluate(w))
    rhs = np.dot(d, z - np.conj(w)) + _prefactor(z, w) * D.evaluate(z, w, method)
    return float(abs(lhs - rhs))


def decompose(
    q,
    pairs=None,
    m=20,
    seed=0,
    tol=1e-6,
    strict=True,
    closed_form=None,
    method="auto",
    cfg=None,
):
    """Certificate ``(d, D)`` for a function with known representing data.

    ``d = b`` and ``D`` is the Poisson-type function of ``mu``.  ``pairs``
    is an array of shape ``(k, 2, n)``; by default ``m`` random pairs are
    drawn from ``seed``.  If the data carries no Nevanlinna report, the
    condition is checked on the sampled ``z`` points first.  With
    ``strict`` a failing certificate raises :class:`CertificateFailure`.
    """
    data = q.data
    if data is None:
        raise TypeError(
            f"{q!r} has no representing data; use the Nevanlinna kernel and psd_check instead"
        )
    n = data.n
    if pairs is None:
        pairs = np.stack([sample_upper_points(n, m, seed), sample_upper_points(n, m, seed + 1)], axis=1)
    pairs = np.asarray(pairs, dtype=complex)
    for z, w in pairs:
        require_upper(z)
        require_upper(w)

    report = data.report
    if report is None:
        report = check_nevanlinna(data.measure, pairs[:, 0], tol, cfg)
    D = PoissonTypeFunction(data.measure, cfg, closed_form, check_pairs=0, name=f"D[{q.name}]")
    residuals = np.array([decomposition_residual(q, data.b, D, z, w, method) for z, w in pairs])
    unique = data.a == 0
    cert = DecompositionCertificate(
        d=data.b.copy(),
        D=D,
        pairs=pairs,
        residuals=residuals,
        max_residual=float(residuals.max()) if residuals.size else 0.0,
        tolerance=float(tol),
        unique=unique,
        note="" if unique else "uniqueness of (d, D) is only guaranteed when a = 0",
        nevanlinna_report=report,
    )
    if strict and not (cert.verdict and report.verdict):
        reason = (
            f"max residual {cert.max_residual:.3e} > {tol:g}"
            if not cert.verdict
            else f"measure fails the Nevanlinna condition (max defect {report.max_abs_defect:.3e})"
        )
        raise CertificateFailure(f"decomposition of {q.name}: {reason}", cert)
    return cert


# -- Nevanlinna kernel ----------------------------------------------------------


def nevanlinna_kernel(q, z, w):
    """``(2i)^{n-1} (q(z) - conj q(w)) / prod (z_j - conj w_j)``."""
    z, w = require_upper(as_point(z)), require_upper(as_point(w))
    return complex((q.evaluate(z) - np.conj(q.evaluate(w))) / _prefactor(z, w))


def nevanlinna_kernel_function(q, name=None):
    return KernelFunction(
        lambda z, w: nevanlinna_kernel(q, z, w), q.n, "upper", "nevanlinna-kernel", name or f"K[{q.name}]"
    )


def nevanlinna_kernel_residual(q, z, w, D=None, method="auto"):
    """Defect of ``K_q(z, w) = sum_j b_j prod_{l != j} 2i/(z_l - conj w_l) + D(z, w)``."""
    data = q.data
    if data is None:
        raise TypeError("the kernel identity needs representing data")
    z, w = as_point(z), as_point(w)
    D = D or PoissonTypeFunction(data.measure, check_pairs=0)
    factors = 2j / (z - np.conj(w))
    linear = sum(
        data.b[j] * np.prod(np.delete(factors, j)) for j in range(data.n)
    )
    return float(abs(nevanlinna_kernel(q, z, w) - linear - D.evaluate(z, w, method)))


def d_representation(a, b, D, z, method="auto"):
    """``(a - i D(i1, i1)) + sum b_j z_j + (2i)^{1-n} prod (z_j + i) D(z, i1)``."""
    z = require_upper(as_point(z))
    n = z.size
    b = np.atleast_1d(np.asarray(b, dtype=float))
    ones = np.full(n, 1j)
    return complex(
        a
        - 1j * D.evaluate(ones, ones, method)
        + np.dot(b, z)
        + np.prod(z + 1j) / (2j) ** (n - 1) * D.evaluate(z, ones, method)
    )


# -- Stieltjes inversion --------------------------------------------------------


@dataclass(frozen=True)
class StieltjesResult:
    value: float
    ys: np.ndarray
    raw: np.ndarray
    extrapolated: np.ndarray
    bound_constant: float
    converged: bool
    n: int

    def witness_bounds(self):
        """``C * pi^n * y`` for each ``y``."""
        return self.bound_constant * math.pi**self.n * self.ys


# the inversion functional is only needed to percent accuracy
INVERSION_QUADRATURE = QuadratureConfig(rel_tol=1e-8, abs_tol=1e-12)


def _inversion_hints(F):
    """Per-coordinate breakpoints for the x-integral, as ``hints(j, prefix)``."""
    mu = getattr(F, "measure", None)
    if isinstance(mu, Atoms):
        locs = mu.locations
        return lambda j, prefix: locs[:, j]
    if isinstance(mu, CurvePushforward):
        curve = CURVES[mu.curve]

        def hints(j, prefix):
            if j == 0:
                return np.array([0.0])
            s = curve.preimage(0, prefix[0])
            return np.array([curve(si)[j] for si in s])

        return hints
    return lambda j, prefix: np.array([0.0])


def stieltjes_invert(
    F,
    psi,
    ys=(1e-1, 1e-2, 1e-3),
    n=None,
    C=1.0,
    rtol=2e-2,
    cfg=None,
    hints=None,
):
    """Estimate ``int psi dmu`` from ``F`` by the Stieltjes inversion formula.

    For each ``y`` in ``ys`` (all coordinates share it) computes
    ``int psi(x) y^n F(x + iy, x + iy) dx`` and Richardson-extrapolates
    the sequence assuming an ``O(y)`` error.  ``F`` is a
    :class:`PoissonTypeFunction` or any kernel with a vectorized
    ``evaluate_many``/callable on stacked points.  ``C`` is the caller's
    bound ``|psi| <= C prod (1 + x_j^2)^{-1}``.  Raises
    :class:`NonConvergent` when the last two extrapolants differ by more
    than ``rtol * max(1, |value|)``.
    """
    cfg = cfg or INVERSION_QUADRATURE
    n = n or F.n
    ys = np.asarray(ys, dtype=float)
    if ys.size < 2 or np.any(np.diff(ys) >= 0):
        raise ValueError("ys must decrease and contain at least two values")
    evaluate_many = getattr(F, "evaluate_many", None)
    if evaluate_many is None:
        def evaluate_many(Z, W):
            return F(Z, W)
    hints = hints or _inversion_hints(F)

    raw = []
    for y in ys:
        def integrand(x, y=y):
            Z = x + 1j * y
            return psi(x) * y**n * evaluate_many(Z, Z)
        raw.append(integrate_iterated(integrand, n, cfg, hints=hints).real)
    raw = np.array(raw)
    r = ys[:-1] / ys[1:]
    extrap = (r * raw[1:] - raw[:-1]) / (r - 1)
    value = float(extrap[-1])
    gap = abs(extrap[-1] - extrap[-2]) if extrap.size > 1 else abs(raw[-1] - raw[-2])
    converged = gap <= rtol * max(1.0, abs(value))
    result = StieltjesResult(value, ys, raw, extrap, float(C), converged, n)
    if not converged:
        raise NonConvergent(f"Stieltjes inversion did not stabilize (gap {gap:.3e})")
    return result


# -- pluriharmonicity ------------------------------------------------------------


@dataclass(frozen=True)
class PluriharmonicResult:
    wirtinger: np.ndarray
    defect: float
    step: float


def pluriharmonic_defect(F, z, h=1e-3, method="auto"):
    """Largest mixed Wirtinger derivative of ``u(z) = prod Im z_j F(z, z)``.

    ``W[j, k] = d^2 u / dz_j dconj(z_k)`` is assembled from central finite
    differences of the four real second partials.  ``u`` is pluriharmonic
    exactly when every ``W[j, k]`` vanishes.
    """
    z = require_upper(as_point(z))
    n = z.size
    if np.any(z.imag <= 10 * h):
        raise ValueError("point too close to the boundary for the step size")
    x0 = np.concatenate([z.real, z.imag])

    def u(x):
        p = x[:n] + 1j * x[n:]
        if hasattr(F, "evaluate"):
            val = F.evaluate(p, p, method) if isinstance(F, PoissonTypeFunction) else F(p, p)
        else:
            val = F(p, p)
        return float(np.prod(p.imag) * complex(val).real)

    dim = 2 * n
    u0 = u(x0)
    H = np.empty((dim, dim))
    E = np.eye(dim) * h
    for a in range(dim):
        H[a, a] = (u(x0 + E[a]) - 2 * u0 + u(x0 - E[a])) / h**2
        for b in range(a + 1, dim):
            H[a, b] = H[b, a] = (
                u(x0 + E[a] + E[b]) - u(x0 + E[a] - E[b]) - u(x0 - E[a] + E[b]) + u(x0 - E[a] - E[b])
            ) / (4 * h**2)
    X, Y = slice(0, n), slice(n, 2 * n)
    W = 0.25 * (H[X, X] + H[Y, Y] + 1j * (H[X, Y] - H[Y, X]))
    return PluriharmonicResult(W, float(np.max(np.abs(W))), h)


# -- symmetric extension ------------------------------------------------------------


def symmetric_error_term(measure, z, w, cfg=None):
    """``E(z, w) = (2i / pi^n) int (mixed N-sum) dmu`` on (C \\ R)^n."""
    z, w = require_offaxis(as_point(z)), require_offaxis(as_point(w))
    n = measure.n
    if n == 1:
        return 0j
    val = integrate_measure(measure, lambda t: mixed_n_sum(z, w, t), cfg, hints=_hints(z, w))
    return complex(2j * val / math.pi**n)


def symmetric_decomposition_residual(f, d, measure, z, w, D_sym=None, E=None, cfg=None):
    """``|f(z) - conj f(w) - [sum d_j (z_j - conj w_j) + prefactor D_sym - E]|``.

    ``f`` maps a point of (C \\ R)^n to a complex number.  ``D_sym``
    defaults to quadrature of the Poisson-type function of ``measure``;
    ``E`` defaults to :func:`symmetric_error_term`.
    """
    z, w = require_offaxis(as_point(z)), require_offaxis(as_point(w))
    if D_sym is None:
        D_sym = PoissonTypeFunction(measure, cfg, check_pairs=0).quadrature
    if E is None:
        E = symmetric_error_term(measure, z, w, cfg)
    lhs = f(z) - np.conj(f(w))
    rhs = np.dot(d, z - np.conj(w)) + _prefactor(z, w) * D_sym(z, w) - E
    return float(abs(lhs - rhs))


# -- Loewner decompositions ------------------------------------------------------


def loewner_residual(h, F_list, z, w):
    """``|h(z) - conj h(w) - sum_l (z_l - conj w_l) F_l(z, w)|``."""
    z, w = as_point(z), as_point(w)
    if len(F_list) != z.size:
        raise ValueError("need one kernel per variable")
    total = sum((z[l] - np.conj(w[l])) * F(z, w) for l, F in enumerate(F_list))
    return float(abs(h.evaluate(z) - np.conj(h.evaluate(w)) - total))


def loewner_kernel_identity_residual(h, F_list, z, w):
    """``|K_h(z, w) - sum_l F_l(z, w) prod_{j != l} 2i/(z_j - conj w_j)|``."""
    z, w = as_point(z), as_point(w)
    if len(F_list) != z.size:
        raise ValueError("need one kernel per variable")
    factors = 2j / (z - np.conj(w))
    total = sum(F(z, w) * np.prod(np.delete(factors, l)) for l, F in enumerate(F_list))
    return float(abs(nevanlinna_kernel(h, z, w) - total))
