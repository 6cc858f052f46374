import json
import math

import numpy as np
import pytest

from nvk import (
    Atoms,
    CurvePushforward,
    GrowthViolation,
    ProductDensity,
    ScaledLebesgue,
    check_nevanlinna,
    growth_norm,
    integrate_measure,
    measure_from_json,
    measure_to_json,
    nevanlinna_defect,
    sample_upper_points,
    zero_measure,
)
from nvk.measures import DENSITIES, Density
from nvk.fixtures import curve_measure, dirac_measure


def lorentz(t):
    return np.prod(1 / (1 + t * t), axis=-1)


def test_integrate_examples():
    assert abs(integrate_measure(dirac_measure(), lambda t: np.ones(t.shape[:-1])) - math.pi**2) < 1e-12
    assert abs(integrate_measure(curve_measure(), lorentz) - math.pi**2 / 2) < 1e-10
    assert abs(integrate_measure(ScaledLebesgue((1.0,)), lorentz) - math.pi) < 1e-12


def test_growth_norm_examples():
    assert abs(growth_norm(dirac_measure()) - math.pi**2) < 1e-12
    assert growth_norm(zero_measure(3)) == 0
    assert abs(growth_norm(curve_measure()) - math.pi**2 / 2) < 1e-10


def test_growth_violation_for_heavy_density():
    with pytest.raises(GrowthViolation):
        ProductDensity((Density(lambda t: 1 + t * t),))


def test_product_density_integrates_to_one():
    mu = ProductDensity((DENSITIES["gaussian"](0.5, 2.0), DENSITIES["uniform"](-1.0, 2.0)))
    assert abs(integrate_measure(mu, lambda t: np.ones(t.shape[:-1])) - 1) < 1e-8


def test_nevanlinna_defect_examples():
    assert nevanlinna_defect(ScaledLebesgue((2.0,)), [1 + 1j]) == 0
    assert abs(nevanlinna_defect(curve_measure(), [1j, 2j])) < 1e-8
    # at (i, i) the Dirac defect vanishes by symmetry; elsewhere it does not
    assert abs(nevanlinna_defect(dirac_measure(), [1 + 1j, 2j])) > 1e-2


def test_check_nevanlinna_examples():
    pts = sample_upper_points(2, 10, 0)
    assert check_nevanlinna(curve_measure(), pts, 1e-6).verdict
    assert not check_nevanlinna(dirac_measure(), pts, 1e-6).verdict
    rep = check_nevanlinna(zero_measure(2), pts)
    assert rep.verdict and np.all(rep.defects == 0)


def test_lebesgue_satisfies_nevanlinna():
    assert check_nevanlinna(ScaledLebesgue((1.0, 3.0)), sample_upper_points(2, 3, 4)).verdict


def test_atoms_validation_and_addition():
    with pytest.raises(ValueError):
        Atoms([[0.0]], [-1.0])
    with pytest.raises(ValueError):
        Atoms(np.empty((0, 2)), [])
    a = Atoms([[0.0, 1.0]], [2.0]) + Atoms([[3.0, -1.0]], [1.0])
    assert a.n == 2 and a.masses.sum() == 3.0
    with pytest.raises(ValueError):
        CurvePushforward("circle", 1.0)


@pytest.mark.parametrize(
    "mu",
    [
        dirac_measure(),
        curve_measure(),
        ScaledLebesgue((1.0, 0.5)),
        zero_measure(2),
        ProductDensity((DENSITIES["lorentzian"](1.0, 2.0),)),
    ],
)
def test_json_roundtrip(mu):
    text = json.dumps(measure_to_json(mu))
    back = measure_from_json(json.loads(text))
    assert type(back) is type(mu) and back.n == mu.n
    f = lambda t: lorentz(t) * (1 + 0.5j * np.tanh(t.sum(axis=-1)))
    assert abs(integrate_measure(back, f) - integrate_measure(mu, f)) < 1e-15 * max(1, growth_norm(mu)) + 1e-14


def test_json_rejects_unknown_variant():
    with pytest.raises(ValueError):
        measure_from_json({"variant": "cantor"})
    with pytest.raises(ValueError):
        measure_from_json({"atoms": []})
