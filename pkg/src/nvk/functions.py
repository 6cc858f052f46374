"""Herglotz-Nevanlinna functions as evaluable objects.

A function is either *data backed*, evaluated through its integral
representation ``a + sum_l b_l z_l + pi^{-n} int K_n(z, t) dmu(t)``, or a
*closed form* from a small catalog.  Closed forms that are Herglotz-Nevanlinna
carry their representing data, so both routes can be compared.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import DomainError, NonConvergent
from .kernels import kernel_Kn
from .measures import (
    CurvePushforward,
    ScaledLebesgue,
    Atoms,
    check_nevanlinna,
    growth_norm,
    integrate_measure,
    measure_from_json,
    measure_to_json,
    zero_measure,
)
from .numerics import DEFAULT_QUADRATURE, as_point, require_offaxis, require_upper

__all__ = [
    "HNData",
    "HNFunction",
    "DataBacked",
    "ClosedForm",
    "Constant",
    "Affine",
    "InverseSum",
    "DiracPoisson",
    "Polynomial",
    "evaluate",
    "evaluate_symmetric",
    "b_limit_estimate",
    "BLimitResult",
    "imaginary_part_nonneg_scan",
    "ImagScanReport",
    "function_from_json",
    "function_to_json",
]


@dataclass(frozen=True)
class HNData:
    """Representing triple ``(a, b, mu)``, optionally with a Nevanlinna report."""

    a: float
    b: np.ndarray
    measure: object
    report: object = field(default=None, compare=False)

    def __post_init__(self):
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if b.size != self.measure.n:
            raise ValueError("b must have one entry per variable")
        if np.any(b < 0):
            raise ValueError("every b_l must be nonnegative")
        if not math.isfinite(float(self.a)):
            raise ValueError("a must be a finite real")
        growth_norm(self.measure)
        if self.report is not None and not self.report.verdict:
            raise ValueError("attached Nevanlinna report does not pass")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", b)

    @property
    def n(self):
        return self.measure.n

    @property
    def nevanlinna_certified(self):
        return self.report is not None

    def certify(self, points, tol=1e-6, cfg=None):
        """Return a copy carrying a passing Nevanlinna report.

        Raises ValueError when the sampled check fails.
        """
        report = check_nevanlinna(self.measure, points, tol, cfg)
        if not report.verdict:
            raise ValueError(
                f"measure violates the Nevanlinna condition "
                f"(max defect {report.max_abs_defect:.3e} > {tol:g})"
            )
        return replace(self, report=report)


class HNFunction:
    """Base class.  Subclasses implement ``_eval`` and ``_eval_symmetric``."""

    n = 1
    name = "function"

    def evaluate(self, z):
        z = require_upper(as_point(z))
        self._check_dim(z)
        return complex(self._eval(z))

    def evaluate_symmetric(self, z):
        z = require_offaxis(as_point(z))
        self._check_dim(z)
        return complex(self._eval_symmetric(z))

    __call__ = evaluate

    @property
    def data(self):
        """Representing data when known, otherwise ``None``."""
        return None

    def _check_dim(self, z):
        if z.size != self.n:
            raise ValueError(f"{self.name} takes {self.n} variables, got {z.size}")

    def _eval_symmetric(self, z):
        raise NotImplementedError(f"{self.name} has no symmetric extension")

    def to_json(self):
        return function_to_json(self)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} n={self.n}>"


class DataBacked(HNFunction):
    """Evaluation through the integral representation.

    The same formula is used on ``(C \\ R)^n``, which gives the symmetric
    extension.
    """

    def __init__(self, data, cfg=None, name="data-backed"):
        self.data_ = data
        self.cfg = cfg or DEFAULT_QUADRATURE
        self.n = data.n
        self.name = name

    @property
    def data(self):
        return self.data_

    def _eval(self, z):
        d = self.data_
        integral = integrate_measure(
            d.measure, lambda t: kernel_Kn(z, t), self.cfg, hints=z.real
        )
        return d.a + float(np.dot(d.b, z.real)) + 1j * float(np.dot(d.b, z.imag)) + (
            integral / math.pi**self.n
        )

    _eval_symmetric = _eval


class ClosedForm(HNFunction):
    """User supplied closed form ``func(z)``; ``symmetric`` is optional."""

    def __init__(self, func, n=1, name="closed-form", symmetric=None, data=None):
        self.func = func
        self.n = n
        self.name = name
        self.symmetric = symmetric
        self._data = data

    @property
    def data(self):
        return self._data

    def _eval(self, z):
        return self.func(z)

    def _eval_symmetric(self, z):
        if self.symmetric is None:
            return super()._eval_symmetric(z)
        return self.symmetric(z)


class Constant(HNFunction):
    """``q = a + i c`` with ``c >= 0``.

    Its measure is ``c`` times Lebesgue measure on R^n; the symmetric
    extension equals ``a + i c`` on the poly-upper half-plane and ``a - i c``
    on every other orthant.
    """

    def __init__(self, value, n=1):
        value = complex(value)
        if value.imag < 0:
            raise DomainError("a Herglotz-Nevanlinna constant has nonnegative imaginary part")
        self.value = value
        self.n = n
        self.name = f"constant({value})"

    @property
    def data(self):
        c = self.value.imag
        mu = zero_measure(self.n) if c == 0 else ScaledLebesgue((c,) + (1.0,) * (self.n - 1))
        return HNData(self.value.real, np.zeros(self.n), mu)

    def _eval(self, z):
        return self.value

    def _eval_symmetric(self, z):
        if np.all(z.imag > 0):
            return self.value
        return self.value.conjugate()


class Affine(HNFunction):
    """``q(z) = a + sum_l b_l z_l`` with ``b_l >= 0``."""

    def __init__(self, a, b):
        self.a = float(a)
        self.b = np.atleast_1d(np.asarray(b, dtype=float))
        if np.any(self.b < 0):
            raise DomainError("affine coefficients must be nonnegative")
        self.n = self.b.size
        self.name = f"affine(a={self.a:g}, b={self.b.tolist()})"

    @property
    def data(self):
        return HNData(self.a, self.b, zero_measure(self.n))

    def _eval(self, z):
        return self.a + np.dot(self.b, z)

    _eval_symmetric = _eval


class InverseSum(HNFunction):
    """``q(z1, z2) = -1/(z1 + z2)``, represented by ``(0, 0, pi * antidiagonal)``."""

    n = 2
    name = "inverse-sum"

    @property
    def data(self):
        return HNData(0.0, np.zeros(2), CurvePushforward("antidiagonal", math.pi))

    def _eval(self, z):
        return -1.0 / (z[0] + z[1])

    def _eval_symmetric(self, z):
        z1, z2 = z
        up1, up2 = z1.imag > 0, z2.imag > 0
        if up1 and up2:
            return -1.0 / (z1 + z2)
        if up2:
            return 1.0 / (1j - z1)
        if up1:
            return 1.0 / (1j - z2)
        return 1.0 / (z1 + z2) + 1.0 / (1j - z1) + 1.0 / (1j - z2)


class DiracPoisson(HNFunction):
    """Closed form of the representation with data ``(0, 0, pi^2 delta_(0,0))``.

    That measure violates the Nevanlinna condition, so this is *not* a
    Herglotz-Nevanlinna function; it serves as a negative fixture.
    """

    n = 2
    name = "dirac-poisson"

    @property
    def data(self):
        return HNData(0.0, np.zeros(2), Atoms([[0.0, 0.0]], [math.pi**2]))

    def _eval(self, z):
        z1, z2 = z
        return 1j * (0.5 * (z1 + 1j) * (z2 + 1j) / (z1 * z2) - 1.0)

    _eval_symmetric = _eval


class Polynomial(HNFunction):
    """One-variable polynomial ``sum_k c_k z^k`` (highest degree last).

    Mostly useful for non-examples such as ``z**2`` or ``z**3``.
    """

    def __init__(self, coefficients):
        self.coefficients = tuple(complex(c) for c in coefficients)
        self.n = 1
        self.name = f"polynomial{list(self.coefficients)}"

    def _eval(self, z):
        return np.polynomial.polynomial.polyval(z[0], self.coefficients)

    _eval_symmetric = _eval


def evaluate(q, z):
    return q.evaluate(z)


def evaluate_symmetric(q, z):
    return q.evaluate_symmetric(z)


# -- growth at infinity ------------------------------------------------------


@dataclass(frozen=True)
class BLimitResult:
    value: float
    radii: np.ndarray
    ratios: np.ndarray
    extrapolated: np.ndarray
    increment: float
    converged: bool


def b_limit_estimate(
    q,
    coordinate,
    theta=math.pi / 2,
    radii=(1e1, 1e2, 1e3, 1e4, 1e5, 1e6),
    base=None,
    direction=math.pi / 2,
    tol=1e-4,
):
    """Estimate ``b_l = lim q(z) / z_l`` as ``z_l`` runs to infinity.

    ``coordinate`` is zero-based.  ``z_l = r * exp(i * direction)`` along the
    given radii, the other coordinates stay at ``base`` (default ``i``).  The
    ray must lie in the Stoltz sector of angle ``theta``.  Ratios are
    Richardson-extrapolated assuming an ``O(1/r)`` error.  Raises
    :class:`NonConvergent` when the last two extrapolated values differ by
    more than ``tol * (1 + |value|)``.
    """
    if not 0 < theta <= math.pi / 2:
        raise ValueError("Stoltz angle must lie in (0, pi/2]")
    if not theta <= direction <= math.pi - theta:
        raise ValueError("direction leaves the Stoltz sector")
    radii = np.asarray(radii, dtype=float)
    if radii.size < 3 or np.any(np.diff(radii) <= 0):
        raise ValueError("need at least three increasing radii")
    z = np.full(q.n, 1j, dtype=complex) if base is None else as_point(base).copy()
    unit = complex(math.cos(direction), math.sin(direction))

    ratios = []
    for r in radii:
        z[coordinate] = r * unit
        ratios.append(q.evaluate(z) / z[coordinate])
    ratios = np.array(ratios)
    growth = radii[1:] / radii[:-1]
    extrap = (growth * ratios[1:] - ratios[:-1]) / (growth - 1)
    increment = float(abs(extrap[-1] - extrap[-2]))
    converged = increment <= tol * (1 + abs(extrap[-1]))
    result = BLimitResult(float(extrap[-1].real), radii, ratios, extrap, increment, converged)
    if not converged:
        raise NonConvergent(
            f"b-limit estimates did not stabilize (last increment {increment:.3e})"
        )
    return result


# -- sign of the imaginary part ----------------------------------------------


@dataclass(frozen=True)
class ImagScanReport:
    points: np.ndarray
    values: np.ndarray
    min_imag: float
    tolerance: float

    @property
    def verdict(self):
        return self.min_imag >= -self.tolerance


def imaginary_part_nonneg_scan(q, points, tol=1e-8):
    """Minimum of ``Im q`` over a sample of the poly-upper half-plane."""
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    values = np.array([q.evaluate(p) for p in pts])
    return ImagScanReport(pts, values, float(values.imag.min()), float(tol))


# -- JSON --------------------------------------------------------------------


def function_to_json(q):
    if isinstance(q, DataBacked):
        d = q.data
        return {
            "variant": "data",
            "a": d.a,
            "b": d.b.tolist(),
            "measure": measure_to_json(d.measure),
        }
    if isinstance(q, Constant):
        return {"variant": "constant", "value": [q.value.real, q.value.imag], "n": q.n}
    if isinstance(q, Affine):
        return {"variant": "affine", "a": q.a, "b": q.b.tolist()}
    if isinstance(q, InverseSum):
        return {"variant": "inverse_sum"}
    if isinstance(q, DiracPoisson):
        return {"variant": "dirac_poisson"}
    if isinstance(q, Polynomial):
        return {
            "variant": "polynomial",
            "coefficients": [[c.real, c.imag] for c in q.coefficients],
        }
    raise ValueError(f"{q!r} cannot be serialized")


def _complex(x):
    if isinstance(x, (list, tuple)):
        return complex(x[0], x[1])
    if isinstance(x, str):
        return complex(x.replace(" ", "").replace("i", "j"))
    return complex(x)


def function_from_json(obj, cfg=None):
    if not isinstance(obj, dict) or "variant" not in obj:
        raise ValueError("function JSON needs a 'variant' field")
    kind = obj["variant"]
    if kind == "data":
        data = HNData(obj.get("a", 0.0), obj["b"], measure_from_json(obj["measure"]))
        return DataBacked(data, cfg)
    if kind == "constant":
        return Constant(_complex(obj["value"]), int(obj.get("n", 1)))
    if kind == "affine":
        return Affine(obj.get("a", 0.0), obj["b"])
    if kind == "inverse_sum":
        return InverseSum()
    if kind == "dirac_poisson":
        return DiracPoisson()
    if kind == "polynomial":
        return Polynomial([_complex(c) for c in obj["coefficients"]])
    raise ValueError(f"unknown function variant {kind!r}")
