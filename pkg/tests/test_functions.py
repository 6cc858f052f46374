import json
import math

import numpy as np
import pytest

from nvk import (
    Affine,
    ClosedForm,
    Constant,
    DataBacked,
    DiracPoisson,
    HNData,
    InverseSum,
    NonConvergent,
    Polynomial,
    b_limit_estimate,
    function_from_json,
    function_to_json,
    imaginary_part_nonneg_scan,
    sample_offaxis_points,
    sample_upper_points,
    zero_measure,
)
from nvk.errors import DomainError
from nvk.fixtures import curve_measure, dirac_measure


def test_evaluate_examples():
    assert DataBacked(HNData(3.0, [0.0], zero_measure(1)))([2 + 1j]) == 3
    assert abs(InverseSum()((1j, 1j)) - 0.5j) < 1e-15
    q = DataBacked(HNData(0.0, [0.0, 0.0], curve_measure()))
    assert abs(q((1j, 1j)) - 0.5j) < 1e-6


def test_evaluate_refuses_real_and_lower_points():
    with pytest.raises(DomainError):
        InverseSum()((1.0, 1j))
    with pytest.raises(DomainError):
        InverseSum()((1j, -1j))
    with pytest.raises(ValueError):
        InverseSum()((1j,))


def test_symmetric_examples():
    q = InverseSum()
    assert abs(q.evaluate_symmetric((1j, -1j)) + 0.5j) < 1e-15
    for z in sample_upper_points(2, 5, 0):
        assert q.evaluate_symmetric(z) == q.evaluate(z)


def test_symmetric_agrees_with_evaluate_on_upper(rng):
    for q in (Constant(2 + 1j, 2), Affine(1.0, (2.0, 3.0)), DiracPoisson(), Polynomial([1, 2j, 3])):
        for z in sample_upper_points(q.n, 4, 1):
            assert q.evaluate_symmetric(z) == q.evaluate(z)


def test_data_backed_matches_closed_forms_on_all_orthants():
    pts = sample_offaxis_points(2, 6, 3)
    for closed in (InverseSum(), DiracPoisson()):
        backed = DataBacked(closed.data)
        for z in pts:
            assert abs(backed.evaluate_symmetric(z) - closed.evaluate_symmetric(z)) < 1e-8


def test_constant_symmetric_extension_matches_representation():
    q = Constant(0.5 + 2j, 2)
    backed = DataBacked(q.data)
    for z in ([1j, -2j], [-1 - 1j, 0.5j], [-1j, -1j], [1 + 1j, 2j]):
        assert abs(backed.evaluate_symmetric(z) - q.evaluate_symmetric(z)) < 1e-8


def test_symmetric_jump_across_real_axis():
    q = InverseSum()
    z1, x2 = 0.3 + 1j, 0.7
    for eps in (1e-3, 1e-6):
        above = q.evaluate_symmetric((z1, x2 + 1j * eps))
        below = q.evaluate_symmetric((z1, x2 - 1j * eps))
        assert abs(above - (-1 / (z1 + x2))) < 2 * eps
        assert abs(below - 1 / (1j - x2)) < 2 * eps
    assert abs(-1 / (z1 + x2) - 1 / (1j - x2)) > 0.1


def test_constant_validation():
    with pytest.raises(DomainError):
        Constant(-1j)
    with pytest.raises(DomainError):
        Affine(0.0, (1.0, -1.0))
    with pytest.raises(ValueError):
        HNData(0.0, [-1.0], zero_measure(1))
    with pytest.raises(ValueError):
        HNData(0.0, [1.0, 1.0], zero_measure(1))


def test_b_limit_examples():
    assert abs(b_limit_estimate(Affine(1.0, (2.0, 3.0)), 1).value - 3) < 1e-9
    assert abs(b_limit_estimate(InverseSum(), 0).value) < 1e-6
    assert abs(b_limit_estimate(Constant(1j, 2), 0).value) < 1e-15


def test_b_limit_of_data_backed_is_stored_b():
    q = DataBacked(HNData(0.0, [1.5], zero_measure(1)))
    assert abs(b_limit_estimate(q, 0).value - 1.5) < 1e-4
    q2 = DataBacked(HNData(1.0, [0.0, 2.0], curve_measure()))
    for base in ([1j, 1j], [3 + 2j, 1j], [-1 + 0.5j, 1j]):
        assert abs(b_limit_estimate(q2, 1, base=base).value - 2.0) < 1e-4


def test_b_limit_guards():
    with pytest.raises(ValueError):
        b_limit_estimate(Affine(0, (1,)), 0, theta=0.0)
    with pytest.raises(ValueError):
        b_limit_estimate(Affine(0, (1,)), 0, theta=math.pi / 2, direction=0.1)
    with pytest.raises(NonConvergent):
        b_limit_estimate(ClosedForm(lambda z: 1j * np.log(z[0]) * z[0]), 0)


def test_imaginary_part_scans():
    assert imaginary_part_nonneg_scan(InverseSum(), sample_upper_points(2, 100, 5)).verdict
    rep = imaginary_part_nonneg_scan(Constant(3.0), sample_upper_points(1, 10, 5))
    assert rep.min_imag == 0 and rep.verdict
    assert not imaginary_part_nonneg_scan(Polynomial([0, 0, 1]), [[-1 + 0.1j]]).verdict


def test_im_nonneg_for_certified_data(rng):
    data = HNData(0.0, [0.0, 0.0], curve_measure()).certify(sample_upper_points(2, 5, 0))
    assert data.nevanlinna_certified
    rep = imaginary_part_nonneg_scan(DataBacked(data), sample_upper_points(2, 10, 9))
    assert rep.min_imag >= -1e-8


def test_certify_rejects_dirac():
    with pytest.raises(ValueError):
        HNData(0.0, [0.0, 0.0], dirac_measure()).certify([[1 + 1j, 2j]])


@pytest.mark.parametrize(
    "q",
    [
        Constant(1 + 2j, 2),
        Affine(-1.0, (0.5, 0.0)),
        InverseSum(),
        DiracPoisson(),
        Polynomial([1, -2j, 3]),
        DataBacked(HNData(0.5, [1.0, 0.0], curve_measure())),
    ],
)
def test_function_json_roundtrip(q):
    back = function_from_json(json.loads(json.dumps(function_to_json(q))))
    for z in sample_upper_points(q.n, 3, 2):
        assert abs(back(z) - q(z)) < 1e-15 * (1 + abs(q(z)))


def test_function_json_complex_forms():
    assert function_from_json({"variant": "constant", "value": "2+3i"}).value == 2 + 3j
    assert function_from_json({"variant": "constant", "value": [0, 1], "n": 2}).n == 2
    with pytest.raises(ValueError):
        function_from_json({"variant": "exp"})
