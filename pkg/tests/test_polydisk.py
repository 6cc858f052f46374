import numpy as np
import pytest

from nvk import (
    Constant,
    DiskFunction,
    InverseSum,
    PoleError,
    cayley,
    cayley_inverse,
    psd_check,
    reparametrize_measure_check,
    residue_identity_check,
    sample_disk_points,
    sample_upper_points,
    szego_psd_function,
)


def test_cayley_examples():
    assert cayley(0) == 1j
    assert cayley_inverse(1j) == 0
    z = sample_upper_points(3, 10, 0)
    assert np.allclose(cayley(cayley_inverse(z)), z, atol=1e-12)
    xi = sample_disk_points(3, 10, 1)
    assert np.all(cayley(xi).imag > 0)
    with pytest.raises(PoleError):
        cayley(1)
    with pytest.raises(PoleError):
        cayley_inverse(-1j)
    with pytest.raises(ValueError):
        cayley(0, "sideways")


def test_residue_identity():
    for xi, eta in ((0, 0), (0.5, 0), (0.3 + 0.4j, -0.2j), (0.9, 0.9)):
        assert residue_identity_check(xi, eta) < 1e-10
    with pytest.raises(ValueError):
        residue_identity_check(1.0, 0)


def test_reparametrization():
    rep = reparametrize_measure_check([0.0, 1.0])
    assert abs(rep.ds_dt[0] - 2) < 1e-8 and abs(rep.ds_dt[1] - 1) < 1e-8
    rep = reparametrize_measure_check(np.linspace(-20, 20, 41))
    assert rep.max_product_error < 1e-8 and rep.max_density_error < 1e-8


def test_disk_function_from_hn():
    q = InverseSum()
    f = DiskFunction.from_hn(q)
    xi = sample_disk_points(2, 30, 2)
    assert f.min_real_part(xi) >= 0
    for z in sample_upper_points(2, 5, 3):
        assert abs(f.to_halfplane(z) - q(z)) < 1e-12
    with pytest.raises(ValueError):
        f([1.0, 0.0])
    with pytest.raises(ValueError):
        f([0.0])


def test_szego_kernel():
    f = DiskFunction.from_hn(InverseSum())
    assert psd_check(szego_psd_function(f), sample_disk_points(2, 15, 4)).verdict_psd
    g = DiskFunction.from_hn(Constant(1j, 1))
    assert abs(szego_psd_function(g)(np.array([0j]), np.array([0j])) - 2) < 1e-15


def test_szego_negative_real_part():
    bad = DiskFunction(lambda xi: -1.0, 1, name="minus-one")
    rep = psd_check(szego_psd_function(bad), np.array([[0j]]))
    assert not rep.verdict_psd and rep.min_eigenvalue < 0
