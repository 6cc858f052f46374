"""Representable positive Borel measures on R^n.

Four variants cover every measure used here:

* :class:`Atoms` - finitely many point masses (integration is a finite sum),
* :class:`ProductDensity` - a product of one-dimensional densities,
* :class:`CurvePushforward` - ``weight`` times the push-forward of Lebesgue
  measure on R along a named curve,
* :class:`ScaledLebesgue` - a product of scaled Lebesgue measures.

Integrands are vectorized: they take an ``(k, n)`` array of nodes.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import GrowthViolation, NonConvergent
from .kernels import mixed_n_sum
from .numerics import (
    DEFAULT_QUADRATURE,
    as_point,
    integrate_1d,
    integrate_iterated,
    require_upper,
)

__all__ = [
    "Atoms",
    "ProductDensity",
    "CurvePushforward",
    "ScaledLebesgue",
    "Curve",
    "Density",
    "CURVES",
    "DENSITIES",
    "integrate_measure",
    "growth_norm",
    "nevanlinna_defect",
    "check_nevanlinna",
    "NevanlinnaReport",
    "measure_from_json",
    "measure_to_json",
    "zero_measure",
]


def _growth_weight(t):
    return np.prod(1.0 / (1.0 + t * t), axis=-1)


# -- named building blocks ---------------------------------------------------


@dataclass(frozen=True)
class Curve:
    """A curve R -> R^n with the preimages of coordinate values.

    ``preimage(j, x)`` lists the parameters ``s`` with ``curve(s)[j] == x``;
    it turns coordinate breakpoints into parameter breakpoints.
    """

    name: str
    n: int
    func: object
    preimage: object

    def __call__(self, s):
        return self.func(np.asarray(s, dtype=float))


CURVES = {
    "antidiagonal": Curve(
        "antidiagonal",
        2,
        lambda s: np.stack([s, -s], axis=-1),
        lambda j, x: [x] if j == 0 else [-x],
    ),
    "diagonal": Curve(
        "diagonal",
        2,
        lambda s: np.stack([s, s], axis=-1),
        lambda j, x: [x],
    ),
}


@dataclass(frozen=True)
class Density:
    """Nonnegative density on R, optionally with a JSON name and parameters."""

    func: object
    name: str = "custom"
    params: tuple = ()
    breakpoints: tuple = ()

    def __call__(self, t):
        return self.func(np.asarray(t, dtype=float))


def _lorentzian(center=0.0, width=1.0):
    return Density(
        lambda t: (width / math.pi) / ((t - center) ** 2 + width**2),
        "lorentzian",
        (("center", center), ("width", width)),
        (center,),
    )


def _gaussian(mean=0.0, sigma=1.0):
    return Density(
        lambda t: np.exp(-0.5 * ((t - mean) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi)),
        "gaussian",
        (("mean", mean), ("sigma", sigma)),
        (mean,),
    )


def _uniform(a=0.0, b=1.0):
    if not a < b:
        raise ValueError("uniform density needs a < b")
    return Density(
        lambda t: np.where((t >= a) & (t <= b), 1.0 / (b - a), 0.0),
        "uniform",
        (("a", a), ("b", b)),
        (a, b),
    )


DENSITIES = {"lorentzian": _lorentzian, "gaussian": _gaussian, "uniform": _uniform}


# -- the four variants -------------------------------------------------------


class _Measure:
    """Shared behaviour; subclasses are frozen dataclasses with ``n``."""

    def integrate(self, f, cfg=None, hints=None):
        return integrate_measure(self, f, cfg, hints)

    def growth_norm(self, cfg=None):
        return growth_norm(self, cfg)

    def to_json(self):
        return measure_to_json(self)

    def _validate_growth(self):
        if not math.isfinite(growth_norm(self)):
            raise GrowthViolation("growth integral is not finite")


@dataclass(frozen=True)
class Atoms(_Measure):
    """Finite sum of point masses ``sum_k mass_k * delta_{location_k}``."""

    locations: np.ndarray
    masses: np.ndarray
    n: int = field(default=None)

    def __post_init__(self):
        masses = np.atleast_1d(np.asarray(self.masses, dtype=float))
        locs = np.asarray(self.locations, dtype=float)
        if locs.size == 0:
            n = self.n
            if n is None:
                raise ValueError("an empty Atoms measure needs an explicit n")
            locs = np.empty((0, n))
        else:
            locs = locs.reshape(masses.size, -1)
            n = locs.shape[1]
        if self.n is not None and self.n != n:
            raise ValueError("dimension mismatch between n and locations")
        if np.any(masses < 0) or not np.all(np.isfinite(masses)):
            raise ValueError("atom masses must be finite and nonnegative")
        object.__setattr__(self, "locations", locs)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "n", n)

    def __add__(self, other):
        if not isinstance(other, Atoms) or other.n != self.n:
            return NotImplemented
        return Atoms(
            np.concatenate([self.locations, other.locations]),
            np.concatenate([self.masses, other.masses]),
            self.n,
        )

    def scaled(self, c):
        return Atoms(self.locations, c * self.masses, self.n)


@dataclass(frozen=True)
class ProductDensity(_Measure):
    """Product of ``n`` one-dimensional densities."""

    densities: tuple

    def __post_init__(self):
        dens = tuple(d if isinstance(d, Density) else Density(d) for d in self.densities)
        if not dens:
            raise ValueError("need at least one density")
        object.__setattr__(self, "densities", dens)
        self._validate_growth()

    @property
    def n(self):
        return len(self.densities)


@dataclass(frozen=True)
class CurvePushforward(_Measure):
    """``mu(U) = weight * |{s : curve(s) in U}|`` for a named curve."""

    curve: str
    weight: float

    def __post_init__(self):
        if self.curve not in CURVES:
            raise ValueError(f"unknown curve {self.curve!r}; known: {sorted(CURVES)}")
        if not self.weight >= 0:
            raise ValueError("curve weight must be nonnegative")
        self._validate_growth()

    @property
    def n(self):
        return CURVES[self.curve].n


@dataclass(frozen=True)
class ScaledLebesgue(_Measure):
    """Product of the scaled Lebesgue measures ``scales[j] * dt_j``."""

    scales: tuple

    def __post_init__(self):
        scales = tuple(float(s) for s in np.atleast_1d(self.scales))
        if not scales or any(s < 0 for s in scales):
            raise ValueError("scales must be a nonempty tuple of nonnegative reals")
        object.__setattr__(self, "scales", scales)

    @property
    def n(self):
        return len(self.scales)


def zero_measure(n):
    return Atoms(np.empty((0, n)), np.empty(0), n)


# -- operations --------------------------------------------------------------


def integrate_measure(mu, f, cfg=None, hints=None):
    """Integral of the vectorized ``f`` against ``mu``.

    ``hints`` optionally lists, per coordinate, real values near which the
    integrand is sharply peaked (typically ``Re z_j``); they become
    quadrature breakpoints.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    n = mu.n
    hint_lists = [np.ravel(h) for h in hints] if hints is not None else [()] * n

    if isinstance(mu, Atoms):
        if mu.masses.size == 0:
            return 0j
        return complex(np.sum(np.asarray(f(mu.locations), dtype=complex) * mu.masses))

    if isinstance(mu, CurvePushforward):
        curve = CURVES[mu.curve]
        if mu.weight == 0:
            return 0j
        pts = [s for j in range(n) for x in hint_lists[j] for s in curve.preimage(j, x)]
        return mu.weight * integrate_1d(lambda s: f(curve(s)), cfg, points=pts)

    if isinstance(mu, ScaledLebesgue):
        factor = float(np.prod(mu.scales))
        if factor == 0:
            return 0j
        static = hint_lists
        return factor * integrate_iterated(f, n, cfg, hints=lambda j, prefix: static[j])

    if isinstance(mu, ProductDensity):
        static = [
            np.concatenate([np.ravel(hint_lists[j]), np.asarray(d.breakpoints, dtype=float)])
            for j, d in enumerate(mu.densities)
        ]
        return integrate_iterated(
            f, n, cfg, densities=mu.densities, hints=lambda j, prefix: static[j]
        )

    raise TypeError(f"not a measure: {mu!r}")


def growth_norm(mu, cfg=None):
    """``int prod_j (1 + t_j^2)^{-1} dmu``; raises GrowthViolation if it diverges."""
    # no tail truncation here: divergence must surface as NonConvergent
    cfg = replace(cfg or DEFAULT_QUADRATURE, truncation_radius=math.inf)
    try:
        value = integrate_measure(mu, _growth_weight, cfg)
    except NonConvergent as exc:
        raise GrowthViolation(f"growth integral diverges: {exc}") from exc
    return float(value.real)


def nevanlinna_defect(mu, z, cfg=None):
    """Left-hand side of the Nevanlinna condition at ``z``.

    Sum over index vectors with both a -1 and a 1 of
    ``int prod_j N_{rho_j}(z_j, t_j) dmu``; identically zero for n = 1.
    """
    z = require_upper(as_point(z))
    if z.size != mu.n:
        raise ValueError("point dimension does not match the measure")
    if mu.n == 1:
        return 0j
    return integrate_measure(mu, lambda t: mixed_n_sum(z, z, t), cfg, hints=z.real)


@dataclass(frozen=True)
class NevanlinnaReport:
    points: np.ndarray
    defects: np.ndarray
    max_abs_defect: float
    tolerance: float

    @property
    def verdict(self):
        return self.max_abs_defect <= self.tolerance

    def to_json(self):
        return {
            "tolerance": self.tolerance,
            "max_abs_defect": self.max_abs_defect,
            "verdict": self.verdict,
            "defects": [[d.real, d.imag] for d in self.defects],
        }


def check_nevanlinna(mu, points, tol=1e-6, cfg=None):
    """Sampled check of the Nevanlinna condition.

    Only finitely many points are tested, so a ``True`` verdict is evidence,
    not proof.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=complex))
    defects = np.array([nevanlinna_defect(mu, p, cfg) for p in pts], dtype=complex)
    worst = float(np.max(np.abs(defects))) if defects.size else 0.0
    return NevanlinnaReport(pts, defects, worst, float(tol))


# -- JSON --------------------------------------------------------------------


def measure_to_json(mu):
    if isinstance(mu, Atoms):
        return {
            "variant": "atoms",
            "n": mu.n,
            "atoms": [
                {"location": [float(x) for x in loc], "mass": float(m)}
                for loc, m in zip(mu.locations, mu.masses)
            ],
        }
    if isinstance(mu, CurvePushforward):
        return {"variant": "curve", "curve": mu.curve, "weight": float(mu.weight)}
    if isinstance(mu, ScaledLebesgue):
        return {"variant": "lebesgue", "scales": [float(s) for s in mu.scales]}
    if isinstance(mu, ProductDensity):
        out = []
        for d in mu.densities:
            if d.name not in DENSITIES:
                raise ValueError("custom densities cannot be serialized")
            out.append({"name": d.name, **dict(d.params)})
        return {"variant": "product_density", "densities": out}
    raise TypeError(f"not a measure: {mu!r}")


def measure_from_json(obj):
    """Inverse of :func:`measure_to_json`."""
    if not isinstance(obj, dict) or "variant" not in obj:
        raise ValueError("measure JSON needs a 'variant' field")
    kind = obj["variant"]
    if kind == "atoms":
        atoms = obj.get("atoms", [])
        n = obj.get("n")
        if not atoms:
            if n is None:
                raise ValueError("empty atoms measure needs 'n'")
            return zero_measure(int(n))
        locs = np.array([a["location"] for a in atoms], dtype=float)
        masses = np.array([a["mass"] for a in atoms], dtype=float)
        return Atoms(locs, masses, n)
    if kind == "curve":
        return CurvePushforward(obj["curve"], float(obj["weight"]))
    if kind == "lebesgue":
        return ScaledLebesgue(tuple(obj["scales"]))
    if kind == "product_density":
        dens = []
        for d in obj["densities"]:
            d = dict(d)
            name = d.pop("name")
            if name not in DENSITIES:
                raise ValueError(f"unknown density {name!r}")
            dens.append(DENSITIES[name](**d))
        return ProductDensity(tuple(dens))
    raise ValueError(f"unknown measure variant {kind!r}")
