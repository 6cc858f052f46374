"""Numerical substrate: adaptive quadrature on the real line, a Hermitian
Jacobi eigensolver and deterministic point samplers.

Integrals over the whole real line are compactified with ``t = tan(theta)``
and handed to a globally adaptive composite Gauss-Legendre rule.  Integrands
are always called with a 1-D array of nodes, so they should be vectorized.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from .errors import DomainError, NonConvergent

__all__ = [
    "QuadratureConfig",
    "DEFAULT_QUADRATURE",
    "integrate_interval",
    "integrate_1d",
    "integrate_iterated",
    "HermitianMatrix",
    "hermitian_eigenvalues",
    "sample_upper_points",
    "sample_offaxis_points",
    "sample_disk_points",
    "as_point",
    "orthant",
    "require_upper",
    "require_offaxis",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budget for the adaptive rules.

    After the tan compactification, panels lying entirely beyond
    ``|t| > truncation_radius`` are never refined: a tail panel whose rule
    has converged is kept, an unresolved one (typically fast oscillation)
    is dropped.
    """

    truncation_radius: float = 1e6
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")


DEFAULT_QUADRATURE = QuadratureConfig()

_GL_ORDER = 12
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
_EPS = np.finfo(float).eps


def _panel_rule(g, lo, hi):
    """Apply the rule on each panel ``[lo[k], hi[k]]``.

    Returns the refined value (Gauss on both halves), an error estimate
    (difference to the single-panel Gauss value) and the integral of |g|.
    """
    k = lo.size
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    quarter = 0.5 * half
    nodes = np.concatenate(
        [
            mid[:, None] + half[:, None] * _GL_X,
            (lo + quarter)[:, None] + quarter[:, None] * _GL_X,
            (mid + quarter)[:, None] + quarter[:, None] * _GL_X,
        ],
        axis=1,
    )
    vals = np.asarray(g(nodes.ravel()), dtype=complex).reshape(k, 3 * _GL_ORDER)
    n = _GL_ORDER
    coarse = half * (vals[:, :n] @ _GL_W)
    fine = quarter * (vals[:, n : 2 * n] @ _GL_W + vals[:, 2 * n :] @ _GL_W)
    err = np.abs(fine - coarse)
    mag = quarter * (np.abs(vals[:, n : 2 * n]) @ _GL_W + np.abs(vals[:, 2 * n :]) @ _GL_W)
    bad = ~np.isfinite(fine) | ~np.isfinite(err)
    if bad.any():
        fine = np.where(bad, 0.0, fine)
        err = np.where(bad, np.inf, err)
        mag = np.where(bad, 0.0, mag)
    return fine, err, mag


def integrate_interval(
    g, a, b, cfg=None, points=(), panels=4, full_output=False, frozen_outside=None
):
    """Adaptive integral of the vectorized function ``g`` over ``[a, b]``.

    ``points`` are interior locations where ``g`` is rough or sharply peaked;
    they become panel boundaries.  Panels entirely outside the interval
    ``frozen_outside = (lo, hi)`` are never split; an unresolved frozen
    panel is dropped, and too much dropped mass raises.  Raises
    :class:`NonConvergent` when the panel budget ``cfg.max_subdivisions`` is
    exhausted.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("need a < b")
    inner = [float(p) for p in np.ravel(points) if a < p < b]
    edges = np.unique(np.concatenate([np.linspace(a, b, panels + 1), inner]))
    lo, hi = edges[:-1], edges[1:]
    val, err, mag = _panel_rule(g, lo, hi)
    span = b - a
    dropped_mass = 0.0

    while True:
        total = val.sum()
        total_err = err.sum()
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total), 50 * _EPS * mag.sum())
        if total_err <= tol:
            return (total, total_err) if full_output else total

        share = tol * (hi - lo) / span
        split = err > share
        if frozen_outside is not None:
            frozen = (hi <= frozen_outside[0]) | (lo >= frozen_outside[1])
            drop = frozen & split
            if drop.any():
                dropped_mass += mag[drop].sum()
                if dropped_mass > 1e-2 * (1.0 + abs(total)):
                    raise NonConvergent(
                        "integrand does not decay: unresolved tail beyond the "
                        "truncation radius carries too much mass"
                    )
                val = np.where(drop, 0.0, val)
                err = np.where(drop, 0.0, err)
                mag = np.where(drop, 0.0, mag)
                continue
        budget = cfg.max_subdivisions - lo.size
        if budget <= 0:
            raise NonConvergent(
                f"quadrature budget of {cfg.max_subdivisions} panels exhausted "
                f"(error estimate {total_err:.3e} > tolerance {tol:.3e})"
            )
        if split.sum() > budget:
            worst = np.argsort(err)[::-1][:budget]
            split = np.zeros_like(split)
            split[worst] = True
        width = hi[split] - lo[split]
        if np.any(width <= 8 * _EPS * np.maximum(1.0, np.abs(lo[split]))):
            raise NonConvergent("quadrature panels collapsed below machine resolution")

        mids = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mids])
        new_hi = np.concatenate([mids, hi[split]])
        nval, nerr, nmag = _panel_rule(g, new_lo, new_hi)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], nval])
        err = np.concatenate([err[keep], nerr])
        mag = np.concatenate([mag[keep], nmag])


def integrate_1d(f, cfg=None, points=(), full_output=False):
    """Integrate ``f`` over the whole real line.

    With breakpoints ``p_0 < ... < p_k`` the line is parametrized by
    ``u`` on ``(-pi/2, L + pi/2)``, ``L = p_k - p_0``: ``t = p_0 + tan(u)``
    for ``u < 0``, ``t = p_0 + u`` on ``[0, L]`` and ``t = p_k + tan(u - L)``
    beyond.  Without breakpoints this is plain ``t = tan(u)``.  The tangent
    tails need ``f`` to decay at least like ``|t|**-2``; anchoring them at
    the breakpoints keeps narrow peaks far from the origin resolvable.

    >>> abs(integrate_1d(lambda t: 1 / (1 + t**2)) - math.pi) < 1e-12
    True
    """
    cfg = cfg or DEFAULT_QUADRATURE
    pts = np.unique(np.asarray(points, dtype=float).ravel())
    pts = pts[np.isfinite(pts)]
    p0, pk = (float(pts[0]), float(pts[-1])) if pts.size else (0.0, 0.0)
    L = pk - p0
    half = 0.5 * math.pi

    def g(u):
        out = np.empty(u.shape, dtype=complex)
        left = u < 0
        right = u > L
        mid = ~(left | right)
        if left.any():
            c = np.cos(u[left])
            out[left] = np.asarray(f(p0 + np.tan(u[left])), dtype=complex) / (c * c)
        if right.any():
            c = np.cos(u[right] - L)
            out[right] = np.asarray(f(pk + np.tan(u[right] - L)), dtype=complex) / (c * c)
        if mid.any():
            out[mid] = np.asarray(f(p0 + u[mid]), dtype=complex)
        return out

    cut = math.atan(cfg.truncation_radius)
    return integrate_interval(
        g,
        -half,
        L + half,
        cfg,
        points=np.concatenate([[0.0, L], pts - p0]),
        panels=8,
        full_output=full_output,
        frozen_outside=(-cut, L + cut),
    )


def integrate_iterated(f, n, cfg=None, densities=None, hints=None):
    """Iterated integral of ``f`` over ``R**n``.

    ``f`` receives an array of shape ``(k, n)`` and returns ``k`` values.
    ``densities`` optionally holds one vectorized weight per coordinate.
    ``hints(j, prefix)`` returns breakpoints for coordinate ``j`` given the
    already fixed leading coordinates ``prefix``.  Inner levels run at a
    tenth of the tolerance so their noise does not look like roughness to
    the outer rule.
    """
    cfg = cfg or DEFAULT_QUADRATURE
    inner = replace(cfg, rel_tol=0.1 * cfg.rel_tol, abs_tol=0.1 * cfg.abs_tol)

    def weight(j, t):
        if densities is None or densities[j] is None:
            return 1.0
        return densities[j](t)

    def level(j, prefix):
        pts = hints(j, prefix) if hints is not None else ()
        if j == n - 1:

            def g(t):
                block = np.empty((t.size, n))
                block[:, :j] = prefix
                block[:, j] = t
                return np.asarray(f(block), dtype=complex) * weight(j, t)

        else:

            def g(t):
                out = np.empty(t.size, dtype=complex)
                for k, tk in enumerate(t):
                    out[k] = level(j + 1, prefix + (tk,))
                return out * weight(j, t)

        return integrate_1d(g, cfg if j == 0 else inner, points=pts)

    return level(0, ())


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense Hermitian matrix, symmetrized at construction.

    ``max_asymmetry`` records ``max |A[i,j] - conj(A[j,i])|`` of the raw
    input before averaging.
    """

    entries: np.ndarray
    max_asymmetry: float = field(default=0.0, compare=False)

    def __post_init__(self):
        raw = np.array(self.entries, dtype=complex)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise ValueError("HermitianMatrix needs a square 2-D array")
        asym = float(np.max(np.abs(raw - raw.conj().T))) if raw.size else 0.0
        herm = 0.5 * (raw + raw.conj().T)
        herm.flags.writeable = False
        object.__setattr__(self, "entries", herm)
        object.__setattr__(self, "max_asymmetry", max(asym, self.max_asymmetry))

    @property
    def dimension(self):
        return self.entries.shape[0]


def hermitian_eigenvalues(M, max_sweeps=60):
    """All eigenvalues of a Hermitian matrix in nondecreasing order.

    Cyclic complex Jacobi: every off-diagonal pair is first rotated to a
    real entry by a diagonal phase, then annihilated by a real plane
    rotation.  Sweeps stop once the off-diagonal Frobenius norm drops below
    ``1e-14 * ||M||_F``.
    """
    if not isinstance(M, HermitianMatrix):
        M = HermitianMatrix(M)
    A = np.array(M.entries, dtype=complex)
    m = A.shape[0]
    fro = np.linalg.norm(A)
    if m == 0:
        return np.empty(0)
    if fro == 0.0:
        return np.zeros(m)
    target = 1e-14 * fro
    negligible = 1e-18 * fro
    iu = np.triu_indices(m, 1)

    for _ in range(max_sweeps):
        off = math.sqrt(2.0) * np.linalg.norm(A[iu])
        if off < target:
            return np.sort(A.diagonal().real)
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = A[p, q]
                mag = abs(apq)
                if mag <= negligible:
                    A[p, q] = A[q, p] = 0.0
                    continue
                phase = apq / mag
                A[:, q] *= phase.conjugate()
                A[q, :] *= phase
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, p] = app - t * mag
                A[q, q] = aqq + t * mag
                A[p, q] = A[q, p] = 0.0
    raise NonConvergent(f"Jacobi eigensolver did not converge in {max_sweeps} sweeps")


# -- points ------------------------------------------------------------------


def as_point(z):
    """Coerce ``z`` to a 1-D complex array (a point of C^n)."""
    arr = np.atleast_1d(np.asarray(z, dtype=complex))
    if arr.ndim != 1:
        raise ValueError("a point must be one-dimensional")
    return arr


def orthant(z):
    """Per-coordinate half-plane tag: +1 upper, -1 lower, 0 real."""
    return tuple(int(s) for s in np.sign(as_point(z).imag))


def require_upper(z, what="point"):
    z = np.asarray(z, dtype=complex)
    if not np.all(z.imag > 0):
        raise DomainError(f"{what} must lie in the poly-upper half-plane")
    return z


def require_offaxis(z, what="point"):
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag == 0):
        raise DomainError(f"{what} has a real coordinate")
    return z


def sample_upper_points(n, m, seed):
    """``m`` points of C^{+n}: real parts uniform on [-5, 5], imaginary
    parts log-uniform on [0.1, 10].  Returns an ``(m, n)`` complex array."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    rng = np.random.default_rng(seed)
    re = rng.uniform(-5.0, 5.0, size=(m, n))
    im = np.exp(rng.uniform(math.log(0.1), math.log(10.0), size=(m, n)))
    return re + 1j * im


def sample_offaxis_points(n, m, seed, signs=None):
    """Like :func:`sample_upper_points`, but each coordinate is reflected
    into the lower half-plane according to ``signs`` (random if ``None``)."""
    pts = sample_upper_points(n, m, seed)
    if signs is None:
        rng = np.random.default_rng([seed, 1])
        flip = rng.choice([-1.0, 1.0], size=(m, n))
    else:
        flip = np.broadcast_to(np.asarray(signs, dtype=float), (m, n))
    return pts.real + 1j * pts.imag * flip


def sample_disk_points(n, m, seed, radius=0.95):
    """``m`` points of the polydisk with every modulus at most ``radius``."""
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size=(m, n)))
    phi = rng.uniform(0.0, 2 * math.pi, size=(m, n))
    return r * np.exp(1j * phi)
