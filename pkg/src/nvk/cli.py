"""Batch driver: ``nvk <command> --job <file> [--out <dir>] [--seed <u64>] [--tol <float>]``.

One JSON job per invocation.  Writes ``summary.json``, ``eigenvalues.csv``
and ``residuals.csv`` to the output directory.  Exit codes: 0 every verdict
passes, 1 a verdict fails, 2 invalid input, 3 numerical non-convergence.
"""

import argparse
import csv
from dataclasses import dataclass, field, replace
import datetime
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .decomposition import (
    PoissonTypeFunction,
    decompose,
    loewner_kernel_identity_residual,
    loewner_residual,
    nevanlinna_kernel_function,
    pluriharmonic_defect,
    stieltjes_invert,
)
from .errors import CertificateFailure, HermitianViolation, NonConvergent, Unstable
from .fixtures import (
    constant_i_D,
    dirac_D,
    inverse_sum_D,
    lebesgue_D,
    loewner_F1,
)
from .functions import function_from_json
from .measures import check_nevanlinna, measure_from_json, measure_to_json
from .numerics import (
    sample_disk_points,
    sample_offaxis_points,
    sample_upper_points,
)
from .polydisk import (
    DiskFunction,
    cayley,
    reparametrize_measure_check,
    residue_identity_check,
    szego_psd_function,
)
from .psd import KernelFunction, negative_squares_estimate, psd_check, quadratic_form, zero_kernel

__all__ = ["main", "run_job", "JobError", "COMMANDS"]

EXIT_OK, EXIT_VERDICT, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
U64 = 2**64


class JobError(ValueError):
    """Invalid job file or arguments (exit code 2)."""


# -- parsing helpers ---------------------------------------------------------


def parse_complex(x):
    """``[re, im]``, a number, or a string such as ``"1+2i"``."""
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise JobError(f"complex number as a list needs [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, str):
        try:
            return complex(x.replace(" ", "").replace("i", "j"))
        except ValueError as exc:
            raise JobError(f"cannot parse complex number {x!r}") from exc
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    raise JobError(f"cannot parse complex number {x!r}")


def parse_point(p):
    if not isinstance(p, list) or not p:
        raise JobError(f"a point is a nonempty list of coordinates, got {p!r}")
    return np.array([parse_complex(c) for c in p], dtype=complex)


def parse_points(obj, n):
    pts = np.array([parse_point(p) for p in obj], dtype=complex) if obj else np.empty((0, n), complex)
    if pts.ndim != 2 or pts.shape[1] != n:
        raise JobError(f"points must have {n} coordinates each")
    return pts


def cjson(z):
    z = complex(z)
    return [z.real, z.imag]


# -- catalogs ------------------------------------------------------------------

# name -> (closed form of the Poisson-type function, domain where it holds)
POISSON_CLOSED_FORMS = {
    "lebesgue": (lebesgue_D, "offaxis"),
    "dirac": (dirac_D, "offaxis"),
    "inverse-sum": (inverse_sum_D, "upper"),
    "constant-i": (constant_i_D, "upper"),
}


def _cauchy(coordinate):
    return lambda z, w: 2j / (z[..., coordinate] - np.conj(w[..., coordinate]))


def closed_form_kernel(name, n=None, coordinate=None):
    if name == "zero":
        return zero_kernel(_need_n(n, name))
    if name == "lebesgue-D":
        return KernelFunction(lebesgue_D, _need_n(n, name), "offaxis", "closed-form", name)
    if name == "dirac-D":
        return KernelFunction(dirac_D, 2, "offaxis", "closed-form", name)
    if name == "inverse-sum-D":
        return KernelFunction(inverse_sum_D, 2, "upper", "closed-form", name)
    if name == "constant-i-D":
        return KernelFunction(constant_i_D, 2, "upper", "closed-form", name)
    if name == "loewner-F1":
        return KernelFunction(loewner_F1(), 2, "upper", "closed-form", name)
    if name == "cauchy":
        n = _need_n(n, name)
        if coordinate is None or not 0 <= int(coordinate) < n:
            raise JobError("the cauchy kernel needs a zero-based 'coordinate' below n")
        return KernelFunction(_cauchy(int(coordinate)), n, "upper", "closed-form", f"cauchy[{coordinate}]")
    raise JobError(
        f"unknown closed-form kernel {name!r}; known: zero, lebesgue-D, dirac-D, "
        "inverse-sum-D, constant-i-D, loewner-F1, cauchy"
    )


def _need_n(n, name):
    if n is None:
        raise JobError(f"kernel {name!r} needs 'n'")
    return int(n)


COMMON_KEYS = {"command", "seed", "tolerance", "comment"}
ALLOWED_KEYS = {
    "eval": {"function", "kernel", "points", "pairs", "sample", "symmetric", "expected"},
    "certify-psd": {"kernel", "points", "sample", "trials", "negative_squares"},
    "decompose": {"function", "pairs", "sample", "closed_form", "method"},
    "invert": {"measure", "closed_form", "psi", "C", "ys", "rtol", "expected"},
    "check-nevanlinna": {"measure", "points", "sample"},
    "pluriharmonic": {"measure", "closed_form", "method", "step", "points", "sample", "expect"},
    "loewner": {"function", "kernels", "pairs", "sample", "psd_tolerance", "witness"},
    "polydisk": {"function", "points", "sample", "residue_grid", "reparametrize_t"},
    "paper-suite": {"criteria"},
}


# -- the job object ----------------------------------------------------------------


@dataclass
class Report:
    results: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    grams: list = field(default_factory=list)
    fixtures: list = field(default_factory=list)
    extra_run: dict = field(default_factory=dict)

    def check(self, label, quantity, value, tolerance, relation="<="):
        value, tolerance = float(value), float(tolerance)
        ok = {"<=": value <= tolerance, ">=": value >= tolerance, "==": value == tolerance}[relation]
        self.rows.append(
            {"label": label, "quantity": quantity, "value": value,
             "relation": relation, "tolerance": tolerance, "passed": bool(ok)}
        )
        return ok

    @property
    def verdict(self):
        return all(r["passed"] for r in self.rows)


class Job:
    """A validated job dictionary plus the report it fills."""

    def __init__(self, obj, command, seed=None, tol=None):
        if not isinstance(obj, dict):
            raise JobError("a job file must hold a JSON object")
        declared = obj.get("command")
        if declared is not None and declared != command:
            raise JobError(f"job declares command {declared!r} but {command!r} was requested")
        extra = sorted(set(obj) - COMMON_KEYS - ALLOWED_KEYS[command])
        if extra:
            raise JobError(f"unknown field(s) for {command}: {', '.join(extra)}")
        self.obj = obj
        self.command = command
        self.seed = seed if seed is not None else obj.get("seed")
        if self.seed is not None:
            if isinstance(self.seed, bool) or not isinstance(self.seed, int) or not 0 <= self.seed < U64:
                raise JobError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        self.tol_override = tol if tol is not None else obj.get("tolerance")
        if self.tol_override is not None:
            self.tol_override = float(self.tol_override)
            if not self.tol_override >= 0:
                raise JobError("tolerance must be nonnegative")
        self.report = Report()

    def get(self, key, default=None):
        return self.obj.get(key, default)

    def require(self, key):
        if key not in self.obj:
            raise JobError(f"{self.command} job needs '{key}'")
        return self.obj[key]

    def tol(self, default):
        return default if self.tol_override is None else self.tol_override

    def need_seed(self):
        if self.seed is None:
            raise JobError("sampled runs need a seed (job 'seed' or --seed)")
        return self.seed

    # -- inputs

    def measure(self, obj):
        try:
            mu = measure_from_json(obj)
        except (KeyError, TypeError) as exc:
            raise JobError(f"bad measure: {exc}") from exc
        self.report.fixtures.append({"kind": "measure", "spec": measure_to_json(mu)})
        return mu

    def function(self, obj):
        try:
            q = function_from_json(obj)
        except (KeyError, TypeError) as exc:
            raise JobError(f"bad function: {exc}") from exc
        self.report.fixtures.append({"kind": "function", "spec": q.to_json()})
        return q

    def poisson(self, obj, closed=None):
        mu = self.measure(obj)
        if closed is None:
            return PoissonTypeFunction(mu, name="poisson-type")
        if closed not in POISSON_CLOSED_FORMS:
            raise JobError(f"unknown closed form {closed!r}; known: {', '.join(POISSON_CLOSED_FORMS)}")
        func, domain = POISSON_CLOSED_FORMS[closed]
        self.report.fixtures.append({"kind": "closed-form", "name": closed, "domain": domain})
        # the override is checked against quadrature on construction
        return PoissonTypeFunction(mu, closed_form=func, closed_form_domain=domain, name=f"D[{closed}]")

    def kernel(self, obj):
        if not isinstance(obj, dict) or "kind" not in obj:
            raise JobError("kernel JSON needs a 'kind' field")
        kind = obj["kind"]
        if kind == "poisson-type":
            P = self.poisson(_field(obj, "measure", "kernel"), obj.get("closed_form"))
            return P.kernel(obj.get("domain", "upper"), obj.get("method", "auto"))
        if kind == "nevanlinna-kernel":
            return nevanlinna_kernel_function(self.function(_field(obj, "function", "kernel")))
        if kind == "szego":
            q = self.function(_field(obj, "function", "kernel"))
            return szego_psd_function(DiskFunction.from_hn(q))
        if kind == "closed-form":
            name = _field(obj, "name", "kernel")
            self.report.fixtures.append({"kind": "closed-form", "name": name})
            return closed_form_kernel(name, obj.get("n"), obj.get("coordinate"))
        if kind == "scaled":
            return self.kernel(_field(obj, "kernel", "scaled kernel")) * parse_complex(obj.get("factor", 1.0))
        if kind in ("sum", "product"):
            parts = [self.kernel(k) for k in _field(obj, "terms", f"{kind} kernel")]
            if not parts:
                raise JobError(f"{kind} kernel needs at least one term")
            out = parts[0]
            for p in parts[1:]:
                out = out + p if kind == "sum" else out * p
            return out
        raise JobError(f"unknown kernel kind {kind!r}")

    def points(self, n, domain="upper", key="points"):
        """Explicit ``points`` or ``sample: {m}`` drawn from the seed."""
        if key in self.obj and "sample" in self.obj:
            raise JobError(f"give either '{key}' or 'sample', not both")
        if key in self.obj:
            return parse_points(self.require(key), n)
        sample = self.get("sample")
        if sample is None:
            raise JobError(f"{self.command} job needs '{key}' or 'sample'")
        m = int(_field(sample, "m", "sample"))
        if m < 1:
            raise JobError("sample size m must be positive")
        if "n" in sample and int(sample["n"]) != n:
            raise JobError(f"sample n={sample['n']} does not match the input dimension {n}")
        seed = self.need_seed()
        if domain == "disk":
            return sample_disk_points(n, m, seed)
        if domain == "offaxis":
            return sample_offaxis_points(n, m, seed)
        return sample_upper_points(n, m, seed)

    def pairs(self, n, domain="upper"):
        if "pairs" in self.obj:
            raw = self.require("pairs")
            out = []
            for pr in raw:
                if not isinstance(pr, list) or len(pr) != 2:
                    raise JobError("each pair is [z, w]")
                out.append([parse_point(pr[0]), parse_point(pr[1])])
            arr = np.array(out, dtype=complex)
            if arr.ndim != 3 or arr.shape[2] != n:
                raise JobError(f"pairs must have {n} coordinates per point")
            return arr
        Z = self.points(n, domain)
        sampler = {"disk": sample_disk_points, "offaxis": sample_offaxis_points}.get(domain, sample_upper_points)
        W = sampler(n, len(Z), self.need_seed() + 1)
        return np.stack([Z, W], axis=1)


def _field(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise JobError(f"{what} needs '{key}'")
    return obj[key]


# -- commands ------------------------------------------------------------------


def cmd_eval(job):
    rep = job.report
    if "kernel" in job.obj:
        K = job.kernel(job.require("kernel"))
        P = job.pairs(K.n, K.domain)
        values = [K(z, w) for z, w in P]
        rep.results["kernel"] = K.name
        rep.results["pairs"] = [[[cjson(c) for c in z], [cjson(c) for c in w]] for z, w in P]
    else:
        q = job.function(job.require("function"))
        sym = bool(job.get("symmetric", False))
        pts = job.points(q.n, "offaxis" if sym else "upper")
        values = [q.evaluate_symmetric(p) if sym else q.evaluate(p) for p in pts]
        rep.results["function"] = q.name
        rep.results["symmetric"] = sym
        rep.results["points"] = [[cjson(c) for c in p] for p in pts]
    rep.results["values"] = [cjson(v) for v in values]
    expected = job.get("expected")
    if expected is not None:
        if len(expected) != len(values):
            raise JobError("'expected' needs one value per point")
        tol = job.tol(1e-12)
        for k, (v, e) in enumerate(zip(values, expected)):
            rep.check("eval", f"|value - expected| #{k}", abs(v - parse_complex(e)), tol)


def cmd_certify_psd(job):
    rep = job.report
    K = job.kernel(job.require("kernel"))
    tol = job.tol(1e-10)
    trials = int(job.get("trials", 1))
    if trials < 1:
        raise JobError("trials must be positive")
    explicit = "points" in job.obj
    for k in range(trials):
        if explicit:
            if k:
                break
            pts = job.points(K.n, K.domain)
        else:
            m = int(_field(job.get("sample"), "m", "sample"))
            seed = job.need_seed() + k
            pts = {"disk": sample_disk_points, "offaxis": sample_offaxis_points}.get(
                K.domain, sample_upper_points)(K.n, m, seed)
        gr = psd_check(K, pts, tol)
        label = K.name if explicit else f"{K.name} seed={job.seed + k}"
        rep.grams.append(replace(gr, label=label))
        rep.check(label, "min eigenvalue / scale", gr.min_eigenvalue / gr.scale, -tol, ">=")
    ns = job.get("negative_squares")
    if ns is not None:
        sizes = tuple(ns.get("sizes", (8, 16, 32, 64)))
        kappa, nrep = negative_squares_estimate(
            K, trials=int(ns.get("trials", 1)), seed=job.need_seed(), sizes=sizes, tol=tol)
        rep.results["negative_squares"] = nrep.to_json()
    rep.results["kernel"] = K.name
    rep.results["domain"] = K.domain
    rep.results["provenance"] = K.provenance


def cmd_decompose(job):
    rep = job.report
    q = job.function(job.require("function"))
    if q.data is None:
        raise JobError(f"{q.name} has no representing data to decompose")
    tol = job.tol(1e-6)
    pairs = job.pairs(q.n)
    closed = job.get("closed_form")
    cf = None
    if closed is not None:
        if closed not in POISSON_CLOSED_FORMS:
            raise JobError(f"unknown closed form {closed!r}")
        cf = POISSON_CLOSED_FORMS[closed][0]
        rep.fixtures.append({"kind": "closed-form", "name": closed})
    cert = decompose(q, pairs=pairs, tol=tol, strict=False, closed_form=cf, method=job.get("method", "auto"))
    rep.results["certificate"] = cert.to_json()
    rep.results["nevanlinna"] = cert.nevanlinna_report.to_json()
    for k, r in enumerate(cert.residuals):
        rep.check("decomposition", f"residual pair #{k}", r, tol)
    rep.check("nevanlinna", "max |defect|", cert.nevanlinna_report.max_abs_defect, cert.nevanlinna_report.tolerance)


PSI = {
    # name -> (psi, default bound constant C in |psi| <= C prod (1 + x^2)^-1)
    "lorentzian-product": (lambda x: np.prod(1.0 / (1.0 + x * x), axis=-1), 1.0),
    "gaussian-product": (lambda x: np.prod(np.exp(-0.5 * x * x), axis=-1), 2.0 * math.exp(-0.5)),
}


def cmd_invert(job):
    rep = job.report
    P = job.poisson(job.require("measure"), job.get("closed_form"))
    name = job.get("psi", "lorentzian-product")
    if name not in PSI:
        raise JobError(f"unknown psi {name!r}; known: {', '.join(PSI)}")
    psi, C0 = PSI[name]
    C = float(job.get("C", C0 ** P.n))
    ys = job.get("ys", [1e-1, 1e-2, 1e-3])
    res = stieltjes_invert(P, psi, ys=ys, C=C, rtol=float(job.get("rtol", 2e-2)))
    rep.results["psi"] = name
    rep.results["value"] = res.value
    rep.results["ys"] = [float(y) for y in res.ys]
    rep.results["raw"] = [float(v) for v in res.raw]
    rep.results["extrapolated"] = [float(v) for v in res.extrapolated]
    rep.results["witness_bounds"] = [float(v) for v in res.witness_bounds()]
    expected = job.get("expected")
    if expected is not None:
        tol = job.tol(2e-2)
        rep.check("inversion", "relative error vs expected",
                  abs(res.value - float(expected)) / max(1.0, abs(float(expected))), tol)
    else:
        rep.check("inversion", "converged", float(res.converged), 1.0, "==")


def cmd_check_nevanlinna(job):
    rep = job.report
    mu = job.measure(job.require("measure"))
    pts = job.points(mu.n)
    nrep = check_nevanlinna(mu, pts, job.tol(1e-6))
    rep.results["nevanlinna"] = nrep.to_json()
    rep.results["points"] = [[cjson(c) for c in p] for p in pts]
    rep.check("nevanlinna", "max |defect|", nrep.max_abs_defect, nrep.tolerance)


def cmd_pluriharmonic(job):
    rep = job.report
    P = job.poisson(job.require("measure"), job.get("closed_form"))
    method = job.get("method", "auto")
    h = float(job.get("step", 1e-3))
    pts = job.points(P.n)
    tol = job.tol(1e-5)
    expect = job.get("expect", "pluriharmonic")
    if expect not in ("pluriharmonic", "not-pluriharmonic"):
        raise JobError("expect must be 'pluriharmonic' or 'not-pluriharmonic'")
    out = []
    for k, p in enumerate(pts):
        r = pluriharmonic_defect(P, p, h, method)
        out.append({"point": [cjson(c) for c in p], "defect": r.defect,
                    "wirtinger": [[cjson(x) for x in row] for row in r.wirtinger]})
        if expect == "pluriharmonic":
            rep.check("pluriharmonic", f"max |W| point #{k}", r.defect, tol)
        else:
            rep.check("pluriharmonic", f"max |W| point #{k}", r.defect, tol, ">=")
    rep.results["expect"] = expect
    rep.results["step"] = h
    rep.results["points"] = out


def cmd_loewner(job):
    rep = job.report
    h = job.function(job.require("function"))
    kernels = [job.kernel(k) for k in job.require("kernels")]
    if len(kernels) != h.n:
        raise JobError(f"need {h.n} kernels, got {len(kernels)}")
    tol = job.tol(1e-10)
    pairs = job.pairs(h.n)
    for k, (z, w) in enumerate(pairs):
        rep.check("loewner", f"decomposition residual pair #{k}", loewner_residual(h, kernels, z, w), tol)
        rep.check("loewner", f"kernel identity residual pair #{k}",
                  loewner_kernel_identity_residual(h, kernels, z, w), tol)
    psd_tol = float(job.get("psd_tolerance", 1e-10))
    pts = pairs[:, 0]
    for l, K in enumerate(kernels):
        gr = replace(psd_check(K, pts, psd_tol), label=f"F{l + 1} = {K.name}")
        rep.grams.append(gr)
        rep.check(gr.label, "min eigenvalue / scale", gr.min_eigenvalue / gr.scale, -psd_tol, ">=")
    witness = job.get("witness")
    if witness is not None:
        l = int(_field(witness, "kernel", "witness"))
        if not 0 <= l < len(kernels):
            raise JobError("witness kernel index out of range")
        wpts = parse_points(_field(witness, "points", "witness"), h.n)
        coef = np.array([parse_complex(c) for c in _field(witness, "coefficients", "witness")])
        if coef.size != len(wpts):
            raise JobError("witness needs one coefficient per point")
        value = quadratic_form(kernels[l], wpts, coef)
        rep.results["witness"] = {"kernel": l, "value": cjson(value)}
        rep.check(f"F{l + 1} = {kernels[l].name}", "witness quadratic form (real part)", value.real, -psd_tol, ">=")
    rep.results["kernels"] = [K.name for K in kernels]


def cmd_polydisk(job):
    rep = job.report
    q = job.function(job.require("function"))
    f = DiskFunction.from_hn(q)
    tol = job.tol(1e-10)
    disk = job.points(q.n, "disk")
    gr = replace(psd_check(szego_psd_function(f), disk, tol), label=f"szego[{q.name}]")
    rep.grams.append(gr)
    rep.check(gr.label, "min eigenvalue / scale", gr.min_eigenvalue / gr.scale, -tol, ">=")
    rep.check("disk function", "min Re f on the sample", f.min_real_part(disk), -tol, ">=")
    rt = max(abs(f.to_halfplane(z) - q.evaluate(z)) for z in cayley(disk))
    rep.check("cayley", "half-plane -> disk -> half-plane roundtrip", rt, 1e-12)
    grid = job.get("residue_grid", [0.0, 0.45, -0.9, "0.9i", "0.6-0.6i"])
    grid = [parse_complex(g) for g in grid]
    worst = max(residue_identity_check(x, y) for x in grid for y in grid)
    rep.check("residue identity", "max residual on the grid", worst, 1e-10)
    ts = job.get("reparametrize_t")
    if ts is not None:
        rr = reparametrize_measure_check(np.asarray(ts, dtype=float))
        rep.check("reparametrization", "max |ds/dt * dt/ds - 1|", rr.max_product_error, 1e-6)
    rep.results["function"] = q.name
    rep.results["disk_points"] = [[cjson(c) for c in p] for p in disk]


def cmd_paper_suite(job):
    from .suite import run_suite

    rep = job.report
    numbers = job.get("criteria")
    if numbers is not None and (not isinstance(numbers, list) or not all(k in range(1, 11) for k in numbers)):
        raise JobError("criteria must be a list of numbers between 1 and 10")
    seed = job.seed if job.seed is not None else 0
    results = run_suite(numbers, seed)
    rep.results["criteria"] = [r.to_json() for r in results]
    runtimes = {}
    for r in results:
        label = f"criterion {r.number}: {r.title} ({r.anchor})"
        for c in r.checks:
            rep.check(label, c.quantity, c.value, c.tolerance, c.relation)
        if r.error:
            rep.check(label, f"error: {r.error}", 1.0, 0.0)
        rep.check(label, "within time budget", float(r.runtime < r.budget), 1.0, "==")
        rep.grams.extend(replace(g, label=f"criterion {r.number}: {g.label}") for g in r.grams)
        runtimes[str(r.number)] = round(r.runtime, 3)
    rep.extra_run["criterion_runtimes_s"] = runtimes
    rep.results["seed"] = seed


COMMANDS = {
    "eval": cmd_eval,
    "certify-psd": cmd_certify_psd,
    "decompose": cmd_decompose,
    "invert": cmd_invert,
    "check-nevanlinna": cmd_check_nevanlinna,
    "pluriharmonic": cmd_pluriharmonic,
    "loewner": cmd_loewner,
    "polydisk": cmd_polydisk,
    "paper-suite": cmd_paper_suite,
}


# -- running and reporting -------------------------------------------------------


def load_job(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise JobError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc


def run_job(command, obj, seed=None, tol=None):
    """Run one job; returns ``(exit_code, job, error_message)``.

    Input errors raise :class:`JobError`.
    """
    if command not in COMMANDS:
        raise JobError(f"unknown command {command!r}")
    job = Job(obj, command, seed, tol)
    try:
        COMMANDS[command](job)
    except JobError:
        raise
    except (HermitianViolation, CertificateFailure) as exc:
        return EXIT_VERDICT, job, f"{type(exc).__name__}: {exc}"
    except (NonConvergent, Unstable) as exc:
        return EXIT_NUMERIC, job, f"{type(exc).__name__}: {exc}"
    except (KeyError, TypeError, ValueError) as exc:
        raise JobError(f"{type(exc).__name__}: {exc}") from exc
    return (EXIT_OK if job.report.verdict else EXIT_VERDICT), job, ""


def _clean(x):
    """JSON-safe copy: numpy scalars to Python, non-finite floats to None."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        return _clean([complex(x).real, complex(x).imag])
    return x


def summary_dict(command, code, job, error, elapsed):
    rep = job.report
    status = {EXIT_OK: "pass", EXIT_VERDICT: "fail", EXIT_NUMERIC: "non-convergent"}[code]
    return _clean({
        "command": command,
        "status": status,
        "exit_code": code,
        "seed": job.seed,
        "tolerance": job.tol_override,
        "error": error,
        "fixtures": rep.fixtures,
        "results": rep.results,
        "residuals": rep.rows,
        "grams": [g.to_json() for g in rep.grams],
        # the only non-deterministic field
        "run": {
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
            "elapsed_s": round(elapsed, 3),
            "version": __version__,
            **rep.extra_run,
        },
    })


def write_outputs(out, summary, job):
    try:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, "summary.json"), "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2, allow_nan=False)
            fh.write("\n")
        with open(os.path.join(out, "eigenvalues.csv"), "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["label", "index", "eigenvalue"])
            for g in job.report.grams:
                for k, lam in enumerate(g.eigenvalues):
                    w.writerow([g.label, k, repr(float(lam))])
        with open(os.path.join(out, "residuals.csv"), "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["label", "quantity", "value", "relation", "tolerance", "passed"])
            for r in job.report.rows:
                w.writerow([r["label"], r["quantity"], repr(r["value"]), r["relation"],
                            repr(r["tolerance"]), r["passed"]])
    except OSError as exc:
        raise OSError(f"cannot write reports to {exc.filename or out}: {exc.strerror}") from exc


def build_parser():
    p = argparse.ArgumentParser(
        prog="nvk",
        description="Certify Herglotz-Nevanlinna functions and their positive semi-definite kernels.",
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--job", help="JSON job file (optional for paper-suite)")
    p.add_argument("--out", default="nvk-out", help="output directory (default: nvk-out)")
    p.add_argument("--seed", type=int, help="unsigned 64-bit seed; overrides the job's seed")
    p.add_argument("--tol", type=float, help="tolerance; overrides the job's tolerance")
    p.add_argument("--version", action="version", version=f"nvk {__version__}")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.job is None:
            if args.command != "paper-suite":
                raise JobError(f"{args.command} needs --job")
            obj = {}
        else:
            obj = load_job(args.job)
        if args.seed is not None and not 0 <= args.seed < U64:
            raise JobError("--seed must be an unsigned 64-bit integer")
        code, job, error = run_job(args.command, obj, args.seed, args.tol)
    except JobError as exc:
        print(f"nvk: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    summary = summary_dict(args.command, code, job, error, time.perf_counter() - start)
    try:
        write_outputs(args.out, summary, job)
    except OSError as exc:
        print(f"nvk: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "paper-suite":
        for r in summary["results"]["criteria"]:
            print(f"[{'PASS' if r['passed'] else 'FAIL'}] criterion {r['number']:2d} {r['title']}")
    failed = sum(not r["passed"] for r in summary["residuals"])
    print(f"nvk {args.command}: {summary['status']} ({len(summary['residuals'])} checks, {failed} failed)"
          + (f"; {error}" if error else "") + f"; reports in {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
