"""The acceptance battery: ten end-to-end checks of the worked examples.

Each ``criterion_k`` returns a :class:`CriterionResult` whose ``checks`` list
holds one row per compared quantity.  A criterion passes when every check
passes and its runtime stays within budget.
"""

from dataclasses import dataclass, field
import itertools
import math
import time

import numpy as np

from .decomposition import (
    PoissonTypeFunction,
    decomposition_residual,
    nevanlinna_kernel_function,
    pluriharmonic_defect,
    stieltjes_invert,
    symmetric_decomposition_residual,
    symmetric_error_term,
)
from .fixtures import (
    LOEWNER_COEFFICIENTS,
    LOEWNER_POINTS,
    LOEWNER_VALUE,
    curve_measure,
    dirac_D,
    dirac_measure,
    error_display,
    hn_fixtures,
    inverse_sum_D,
    lebesgue_D,
    lebesgue_measure,
    loewner_F1,
    orthant_D,
)
from .functions import Affine, DataBacked, InverseSum, b_limit_estimate
from .kernels import kernel_difference_check
from .measures import check_nevanlinna
from .numerics import (
    sample_disk_points,
    sample_offaxis_points,
    sample_upper_points,
)
from .polydisk import DiskFunction, cayley, residue_identity_check, szego_psd_function
from .psd import KernelFunction, psd_check, quadratic_form

__all__ = ["Check", "CriterionResult", "CRITERIA", "run_criterion", "run_suite"]


@dataclass(frozen=True)
class Check:
    quantity: str
    value: float
    tolerance: float
    passed: bool
    relation: str = "<="


def _le(quantity, value, tol):
    value = float(value)
    return Check(quantity, value, float(tol), bool(value <= tol))


def _ge(quantity, value, bound):
    value = float(value)
    return Check(quantity, value, float(bound), bool(value >= bound), ">=")


def _flag(quantity, ok):
    return Check(quantity, float(bool(ok)), 1.0, bool(ok), "==")


@dataclass
class CriterionResult:
    number: int
    title: str
    anchor: str
    budget: float
    checks: list = field(default_factory=list)
    grams: list = field(default_factory=list)
    runtime: float = 0.0
    error: str = ""

    @property
    def passed(self):
        return (
            not self.error
            and bool(self.checks)
            and all(c.passed for c in self.checks)
            and self.runtime < self.budget
        )

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        worst = ""
        failing = [c for c in self.checks if not c.passed]
        if self.error:
            worst = f" error: {self.error}"
        elif failing:
            c = failing[0]
            worst = f" first failing: {c.quantity} = {c.value:.3e} (need {c.relation} {c.tolerance:.3e})"
        elif self.runtime >= self.budget:
            worst = " over time budget"
        return (
            f"[{status}] criterion {self.number:2d} {self.title}: "
            f"{len(self.checks)} checks, {self.runtime:.2f} s / {self.budget:g} s{worst}"
        )

    def to_json(self):
        return {
            "number": self.number,
            "title": self.title,
            "anchor": self.anchor,
            "passed": self.passed,
            "budget_s": self.budget,
            "error": self.error,
            "checks": [
                {
                    "quantity": c.quantity,
                    "value": c.value,
                    "relation": c.relation,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                }
                for c in self.checks
            ],
            "grams": [g.to_json() for g in self.grams],
        }


def _lorentz_product(x):
    return np.prod(1.0 / (1.0 + x * x), axis=-1)


# -- 1 ----------------------------------------------------------------------


def criterion_1(seed=0):
    """Loewner counterexample value, closed-form and quadrature ``D``."""
    res = CriterionResult(1, "Loewner counterexample quadratic form", "Loewner functions, second example", 1.0)
    res.checks.append(
        _le("|closed form - (4901-255 sqrt 377)/8528| vs -0.00588701",
            abs(LOEWNER_VALUE - (-0.00588701)), 5e-9)
    )
    F_closed = KernelFunction(loewner_F1(inverse_sum_D), 2, "upper", "closed-form", "F1[closed D]")
    v = quadratic_form(F_closed, LOEWNER_POINTS, LOEWNER_COEFFICIENTS)
    res.checks.append(_le("|form - value| (closed-form D)", abs(v - LOEWNER_VALUE), 1e-12))
    P = PoissonTypeFunction(curve_measure(), check_pairs=0, name="curve")
    F_quad = KernelFunction(loewner_F1(lambda z, w: P.quadrature(z, w)), 2, "upper", "user", "F1[quadrature D]")
    vq = quadratic_form(F_quad, LOEWNER_POINTS, LOEWNER_COEFFICIENTS)
    res.checks.append(_le("|form - value| (quadrature D)", abs(vq - LOEWNER_VALUE), 1e-9))
    res.checks.append(_le("form value (must be negative)", vq.real, 0.0))
    gram = psd_check(F_closed, LOEWNER_POINTS)
    res.grams.append(gram)
    res.checks.append(_flag("F1 Gram has a negative eigenvalue", gram.negative_count >= 1))
    return res


# -- 2 ----------------------------------------------------------------------


def criterion_2(seed=0, draws=1000):
    """Kernel-difference identity on random triples, n = 1, 2, 3."""
    res = CriterionResult(2, "kernel-difference identity", "kernel difference with the epsilon choice", 5.0)
    rng = np.random.default_rng(seed)
    for n in (1, 2, 3):
        z = sample_offaxis_points(n, draws, int(rng.integers(2**32)))
        w = sample_offaxis_points(n, draws, int(rng.integers(2**32)))
        t = rng.uniform(-10.0, 10.0, size=(draws, n))
        r = kernel_difference_check(z, w, t)
        res.checks.append(_le(f"max residual, n={n}, {draws} draws", r.max(), 1e-12))
        zu = sample_upper_points(n, draws, int(rng.integers(2**32)))
        r = kernel_difference_check(zu, zu, t)
        res.checks.append(_le(f"max residual z=w upper, n={n}", r.max(), 1e-12))
    return res


# -- 3 ----------------------------------------------------------------------


def criterion_3(seed=0, pairs=50):
    """Decomposition of -1/(z1 + z2) through the antidiagonal measure."""
    res = CriterionResult(3, "decomposition of -1/(z1+z2)", "main decomposition theorem, worked example", 60.0)
    q = InverseSum()
    d = np.zeros(2)
    P = PoissonTypeFunction(curve_measure(), closed_form=inverse_sum_D, name="curve")
    Z = sample_upper_points(2, pairs, seed)
    W = sample_upper_points(2, pairs, seed + 1)
    rq = [decomposition_residual(q, d, P, z, w, "quadrature") for z, w in zip(Z, W)]
    rc = [decomposition_residual(q, d, P, z, w, "closed") for z, w in zip(Z, W)]
    res.checks.append(_le(f"max residual, quadrature D, {pairs} pairs", max(rq), 1e-6))
    res.checks.append(_le(f"max residual, closed-form D, {pairs} pairs", max(rc), 1e-12))
    qd = DataBacked(q.data)
    z, w = Z[0], W[0]
    res.checks.append(_le("data-backed vs closed form at a sample point", abs(qd(z) - q(z)), 1e-8))
    return res


# -- 4 ----------------------------------------------------------------------


def criterion_4(seed=0, per_pair=3):
    """Table of the symmetric extension of D and the error term."""
    res = CriterionResult(4, "symmetric extension table and error term", "symmetric extension table", 120.0)
    mu = curve_measure()
    P = PoissonTypeFunction(mu, check_pairs=0)
    signs = list(itertools.product((1, -1), repeat=2))
    for k, (zo, wo) in enumerate(itertools.product(signs, signs)):
        Z = sample_offaxis_points(2, per_pair, seed + 2 * k, signs=zo)
        W = sample_offaxis_points(2, per_pair, seed + 2 * k + 1, signs=wo)
        worst = max(abs(P.quadrature(z, w) - orthant_D(z, w)) for z, w in zip(Z, W))
        res.checks.append(_le(f"|quadrature - table|, z in {zo}, w in {wo}", worst, 1e-6))

    q = InverseSum()
    Z = sample_offaxis_points(2, per_pair, seed + 100, signs=(1, -1))
    W = sample_offaxis_points(2, per_pair, seed + 101, signs=(-1, 1))
    worst_res = worst_e = worst_disp = 0.0
    min_e = math.inf
    for z, w in zip(Z, W):
        worst_res = max(worst_res, symmetric_decomposition_residual(q.evaluate_symmetric, (0, 0), mu, z, w))
        E = symmetric_error_term(mu, z, w)
        diff = q.evaluate_symmetric(z) - np.conj(q.evaluate_symmetric(w))
        worst_e = max(worst_e, abs(E + diff))
        worst_disp = max(worst_disp, abs(diff - error_display(z, w)))
        min_e = min(min_e, abs(E))
    res.checks.append(_le("decomposition residual with error term, z in (+,-), w in (-,+)", worst_res, 1e-6))
    res.checks.append(_le("|E + (q_sym(z) - conj q_sym(w))| (D_sym = 0 there)", worst_e, 1e-6))
    res.checks.append(_ge("min |E| (error term present)", min_e, 1e-3))
    res.checks.append(_le("|q_sym(z) - conj q_sym(w) - 1/(i - z2) - 1/(i + conj w1)|", worst_disp, 1e-12))
    return res


# -- 5 ----------------------------------------------------------------------


def criterion_5(seed=0, m=32, seeds=5, tol=1e-10):
    """Gram spectra of every Poisson-type fixture and Nevanlinna kernel."""
    res = CriterionResult(5, "positive semi-definiteness suites", "Poisson-type lemma and Nevanlinna-kernel theorem", 30.0)
    poisson = [
        PoissonTypeFunction(lebesgue_measure(1), closed_form=lebesgue_D, closed_form_domain="offaxis", name="lebesgue"),
        PoissonTypeFunction(dirac_measure(), closed_form=dirac_D, closed_form_domain="offaxis", name="dirac"),
        PoissonTypeFunction(curve_measure(), closed_form=inverse_sum_D, name="curve"),
    ]
    kernels = [P.kernel(method="quadrature") for P in poisson]
    kernels += [nevanlinna_kernel_function(q, f"K[{name}]") for name, q in hn_fixtures().items()]
    for K in kernels:
        worst = math.inf
        for s in range(seeds):
            rep = psd_check(K, sample_upper_points(K.n, m, seed + s), tol)
            res.grams.append(rep)
            worst = min(worst, rep.min_eigenvalue / rep.scale)
        res.checks.append(_ge(f"min eigenvalue / scale, {K.name}, m={m}, {seeds} seeds", worst, -tol))
    return res


# -- 6 ----------------------------------------------------------------------


def criterion_6(seed=0):
    """Stieltjes inversion for the atom and for a kernel of no measure."""
    res = CriterionResult(6, "Stieltjes inversion", "Stieltjes inversion lemma and the zero-measure argument", 120.0)
    P = PoissonTypeFunction(dirac_measure(), closed_form=dirac_D, closed_form_domain="offaxis", name="dirac")
    r = stieltjes_invert(P, _lorentz_product)
    target = math.pi**2
    res.checks.append(_le("relative error at y=1e-3 (atom)", abs(r.raw[-1] - target) / target, 2e-2))
    res.checks.append(_le("relative error of extrapolated value (atom)", abs(r.value - target) / target, 2e-2))

    def witness(Z, W):
        return 2j / (Z[..., 0] - np.conj(W[..., 0]))

    rw = stieltjes_invert(witness, _lorentz_product, n=2, C=1.0)
    bounds = rw.witness_bounds()
    res.checks.append(_le("max(estimate - C pi^2 y) (witness)", float(np.max(rw.raw - bounds * (1 + 1e-9))), 0.0))
    res.checks.append(_flag("witness estimates decrease with y", bool(np.all(np.diff(rw.raw) < 0))))
    res.checks.append(_le("witness estimate at y=1e-3", rw.raw[-1], math.pi**2 * 1e-3 * (1 + 1e-9)))
    res.checks.append(_le("|extrapolated witness value|", abs(rw.value), 1e-6))
    return res


# -- 7 ----------------------------------------------------------------------


def criterion_7(seed=0):
    """Pluriharmonicity of prod Im z_j F(z, z)."""
    res = CriterionResult(7, "pluriharmonicity", "pluriharmonicity lemma and the Dirac example", 10.0)
    Pd = PoissonTypeFunction(dirac_measure(), closed_form=dirac_D, closed_form_domain="offaxis", name="dirac")
    W = pluriharmonic_defect(Pd, (1j, 1j)).wirtinger
    res.checks.append(_le("||W12| - 1/4| (Dirac at (i, i))", abs(abs(W[0, 1]) - 0.25), 1e-4))
    Pc = PoissonTypeFunction(curve_measure(), closed_form=inverse_sum_D, name="curve")
    res.checks.append(_le("defect, curve measure at (i, 2i), quadrature D",
                          pluriharmonic_defect(Pc, (1j, 2j), method="quadrature").defect, 1e-5))
    res.checks.append(_le("defect, curve measure at (i, 2i), closed-form D",
                          pluriharmonic_defect(Pc, (1j, 2j), method="closed").defect, 1e-5))
    return res


# -- 8 ----------------------------------------------------------------------


def criterion_8(seed=0, m=10):
    """Nevanlinna condition on samples."""
    res = CriterionResult(8, "Nevanlinna condition", "Nevanlinna condition of the representation theorem", 60.0)
    pts = sample_upper_points(2, m, seed)
    rep = check_nevanlinna(curve_measure(), pts, 1e-6)
    res.checks.append(_le(f"max |defect|, curve measure, {m} points", rep.max_abs_defect, 1e-6))
    bad = check_nevanlinna(dirac_measure(), pts, 1e-6)
    res.checks.append(_flag("Dirac measure flagged as violating", not bad.verdict))
    res.checks.append(_ge("max |defect|, Dirac measure", bad.max_abs_defect, 1e-3))
    return res


# -- 9 ----------------------------------------------------------------------


def criterion_9(seed=0):
    """Recovery of b from the growth at infinity."""
    res = CriterionResult(9, "b-limit recovery", "b-limit of the representation theorem", 10.0)
    for a, b in ((1.0, (2.0, 3.0)), (-2.0, (0.5, 0.0, 4.0))):
        q = Affine(a, b)
        err = max(abs(b_limit_estimate(q, l).value - b[l]) for l in range(len(b)))
        res.checks.append(_le(f"max |estimate - b|, affine b={list(b)}", err, 1e-9))
    q = DataBacked(InverseSum().data)
    others = [1j, 3 + 2j, -1 + 0.5j]
    for l in (0, 1):
        est = []
        for o in others:
            base = np.full(2, 1j)
            base[1 - l] = o
            est.append(b_limit_estimate(q, l, base=base).value)
        res.checks.append(_le(f"|estimate| coordinate {l + 1}, data-backed -1/(z1+z2)", max(abs(e) for e in est), 1e-4))
        res.checks.append(_le(f"spread under other-coordinate changes, coordinate {l + 1}", max(est) - min(est), 1e-4))
    return res


# -- 10 ---------------------------------------------------------------------


def criterion_10(seed=0, m=20):
    """Cayley bridge to the polydisk."""
    res = CriterionResult(10, "polydisk correspondence", "polydisk proposition and Cayley transform", 10.0)
    grid = [0.0, 0.45, -0.9, 0.9j, 0.6 - 0.6j]
    worst = max(residue_identity_check(x, y) for x in grid for y in grid)
    res.checks.append(_le("max residue-identity residual, 5x5 grid, |.| <= 0.9", worst, 1e-10))
    f = DiskFunction.from_hn(InverseSum())
    rep = psd_check(szego_psd_function(f), sample_disk_points(2, m, seed))
    res.grams.append(rep)
    res.checks.append(_ge(f"min eigenvalue / scale, Szego-type kernel, m={m}", rep.min_eigenvalue / rep.scale, -1e-10))
    zs = np.concatenate([sample_upper_points(1, 50, seed).ravel(), [2 + 3j]])
    rt = np.max(np.abs(cayley(cayley(zs, "to_disk")) - zs))
    res.checks.append(_le("max Cayley roundtrip error", rt, 1e-14))
    z = sample_upper_points(2, 5, seed + 1)
    back = max(abs(f.to_halfplane(p) - InverseSum()(p)) for p in z)
    res.checks.append(_le("half-plane -> disk -> half-plane roundtrip of -1/(z1+z2)", back, 1e-12))
    return res


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_criterion(k, seed=0):
    """Run criterion ``k``; numerical exceptions are recorded, not raised."""
    func = CRITERIA[k]
    start = time.perf_counter()
    try:
        res = func(seed=seed)
    except Exception as exc:  # recorded as a failure of this criterion
        doc = (func.__doc__ or "").strip().splitlines()[0]
        res = CriterionResult(k, doc, "", math.inf, error=f"{type(exc).__name__}: {exc}")
    res.runtime = time.perf_counter() - start
    return res


def run_suite(numbers=None, seed=0):
    return [run_criterion(k, seed) for k in (sorted(CRITERIA) if numbers is None else numbers)]
