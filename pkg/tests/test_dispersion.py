import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bsbshaper import dispersion
from bsbshaper.dispersion import (Material, SellmeierModel, delta_k,
                                  delta_k_prime, delta_n, delta_n_group,
                                  get_material, group_index, load_materials,
                                  omega1, refractive_index)
from bsbshaper.errors import DegenerateMaterialError, WavelengthRangeError


def test_quartz_indices_at_800nm(quartz):
    # frozen against independent evaluation of the published coefficients
    assert refractive_index(quartz.ordinary, 0.8) == pytest.approx(1.5384, abs=2e-4)
    assert refractive_index(quartz.extraordinary, 0.8) == pytest.approx(1.5473, abs=2e-4)


def test_quartz_birefringence_at_800nm(quartz, omega0):
    assert float(delta_n(quartz, omega0)) == pytest.approx(8.894e-3, rel=1e-3)
    assert float(delta_n_group(quartz, omega0)) == pytest.approx(9.469e-3, rel=1e-3)


def test_delta_k_consistent_with_delta_n(quartz, omega0):
    dk = float(delta_k(quartz, omega0))
    assert dk == pytest.approx(float(delta_n(quartz, omega0)) * omega0
                               / dispersion.C_LIGHT, rel=1e-14)


def test_delta_k_prime_is_group_contrast_over_c(quartz, omega0):
    assert float(delta_k_prime(quartz, omega0)) == pytest.approx(
        float(delta_n_group(quartz, omega0)) / dispersion.C_LIGHT, rel=1e-14)


def test_omega1_quartz(quartz, omega0):
    w1 = omega1(quartz, omega0)
    assert w1 / omega0 == pytest.approx(0.0607, abs=5e-4)
    # ordinary frequency, not angular
    assert w1 / (2 * np.pi) == pytest.approx(22.7e12, rel=0.01)


def test_group_index_matches_finite_difference_all_materials():
    wls = np.linspace(0.6, 1.0, 41)
    h = 1e-5  # um
    for name, material in load_materials().items():
        for model in (material.ordinary, material.extraordinary):
            ng = group_index(model, wls)
            dn = (refractive_index(model, wls + h) - refractive_index(model, wls - h)) / (2 * h)
            ng_fd = refractive_index(model, wls) - wls * dn
            assert np.max(np.abs(ng - ng_fd) / np.abs(ng_fd)) < 1e-6, name


def test_wavelength_range_enforced(quartz):
    with pytest.raises(WavelengthRangeError):
        refractive_index(quartz.ordinary, 0.1)
    with pytest.raises(WavelengthRangeError):
        group_index(quartz.ordinary, np.array([0.8, 3.0]))


def test_pole_inside_validity_window_rejected():
    with pytest.raises(ValueError):
        SellmeierModel(1.0, ((0.5, 1.0),), (0.5, 2.0), label="bad")


def test_degenerate_material_has_no_omega1(quartz, omega0):
    iso = Material("iso", quartz.ordinary, quartz.ordinary)
    with pytest.raises(DegenerateMaterialError):
        omega1(iso, omega0)


def test_get_material_unknown_name_lists_choices():
    with pytest.raises(KeyError, match="quartz"):
        get_material("sapphire")


def test_bundled_database_has_expected_entries():
    materials = load_materials()
    assert {"quartz", "kdp", "yvo4"} <= set(materials)
    for m in materials.values():
        assert m.citation


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.25, max_value=1.7))
def test_kdp_indices_physical_over_validity_window(wl):
    kdp = get_material("kdp")
    n_o = float(refractive_index(kdp.ordinary, wl))
    n_e = float(refractive_index(kdp.extraordinary, wl))
    assert 1.0 < n_e < n_o < 2.0  # negative uniaxial
    assert float(group_index(kdp.ordinary, wl)) > 1.0


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.25, max_value=2.0))
def test_quartz_positive_uniaxial(wl):
    quartz = get_material("quartz")
    assert float(delta_n(quartz, 2 * np.pi * dispersion.C_LIGHT / (wl * 1e-6))) > 0
