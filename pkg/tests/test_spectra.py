import math

from hypothesis import given, settings, strategies as st
import numpy as np
import pytest

from niep.spectra import (
    Spectrum, check_necessary, default_tol, is_conjugate_closed, is_suleimanova, power_sum,
)

R3 = math.sqrt(3)


def test_spectrum_rejects_empty_and_nonfinite():
    with pytest.raises(ValueError):
        Spectrum([])
    with pytest.raises(ValueError):
        Spectrum([1.0, np.nan])
    with pytest.raises(ValueError):
        Spectrum([complex(1, np.inf)])


def test_spectrum_is_immutable():
    s = Spectrum([1, 2])
    with pytest.raises(ValueError):
        s.values[0] = 5


def test_sorted_desc_orders_by_real_then_imag():
    s = Spectrum([1j, -1, 2, -1j, 1 + 1j])
    assert s.sorted_desc().values.tolist() == [2, 1 + 1j, 1j, -1j, -1]


def test_union_and_scaled():
    s = Spectrum([1, 2]).union(Spectrum([3]).scaled(-0.5))
    assert s.values.tolist() == [1, 2, -1.5]


def test_spectral_radius_and_real():
    s = Spectrum([3, -4j])
    assert s.spectral_radius == 4
    assert not s.is_real
    assert Spectrum([1, -2]).is_real


def test_default_tol_scales_with_radius(monkeypatch):
    monkeypatch.delenv("NIEP_TOL", raising=False)
    assert default_tol([0.5]) == 1e-9
    assert default_tol([1000, 1]) == pytest.approx(1e-6)
    monkeypatch.setenv("NIEP_TOL", "1e-3")
    assert default_tol([1000]) == 1e-3


@pytest.mark.parametrize("values, expected", [
    ([5, (1 + 1j * R3) / 2, (1 - 1j * R3) / 2], True),
    ([1, 1j], False),
    ([2, 2], True),
    ([1j, -1j, 1j, -1j], True),
    ([1j, 1j, -1j], False),
])
def test_is_conjugate_closed(values, expected):
    assert is_conjugate_closed(values) is expected


def test_conjugate_closed_reversal_invariant(rng):
    for _ in range(50):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        vals = np.concatenate([z, z.conj(), rng.normal(size=2)]) if rng.random() < 0.5 else z
        assert is_conjugate_closed(vals) == is_conjugate_closed(vals[::-1])


def test_power_sum():
    assert power_sum([10, -3, -2, -1], 1) == 4
    assert power_sum([10, -3, -2, -1], 2) == 114
    assert power_sum([1j, -1j], 2) == -2


def test_check_necessary_suleimanova_example():
    rep = check_necessary([10, -3, -2, -1], K=2, M=2)
    assert rep.perron_in_list and rep.conjugate_closed
    assert [(k, s) for k, s, _ in rep.power_sums] == [(1, 4), (2, 114)]
    assert rep.jll_violations == ()
    assert rep.passed and rep.failures() == []


def test_check_necessary_nonnegative_list_passes():
    assert check_necessary([1, 1, 1, 0.5, 0]).passed


def test_check_necessary_perron_failure():
    rep = check_necessary([1, -2])
    assert not rep.perron_in_list
    assert not rep.passed
    assert "Perron value not in list" in rep.failures()


def test_check_necessary_negative_power_sums():
    assert not check_necessary([1, -0.9, -0.9]).power_sums_ok
    # s_2 = 1 - 1 - 1 = -1
    rep = check_necessary([1, 1j, -1j], K=2, M=2)
    assert "s_2 < 0" in rep.failures()


def test_check_necessary_jll_only_failure():
    # s_2 = 35, s_4 = 256 + 2 Re((-3+2i)^4) + 81 = 99, and 35^2 > 4 * 99
    rep = check_necessary([4, -3 - 2j, -3 + 2j, 3], K=4, M=2)
    assert rep.perron_in_list and rep.conjugate_closed and rep.power_sums_ok
    assert (2, 2) in rep.jll_violations
    assert not rep.passed


def test_check_necessary_report_shape():
    rep = check_necessary([3, -1], K=5, M=2)
    assert len(rep.power_sums) == 5
    js = rep.to_json()
    assert js["passed"] is True and len(js["power_sums"]) == 5


def test_check_necessary_nonreal_list_not_closed():
    rep = check_necessary([3, 1j])
    assert not rep.conjugate_closed
    assert "not closed under conjugation" in rep.failures()


@pytest.mark.parametrize("values, expected", [
    ([10, -3, -2, -1], True),
    ([7, -3, -2, -2], True),
    ([3, 1, -2], False),
    ([1, -2], False),
    ([6, -1, -2, -3], True),
    ([4], True),
    ([0, 0], False),
    ([3, 1j, -1j], False),
])
def test_is_suleimanova(values, expected):
    assert is_suleimanova(values) is expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-10, 10), min_size=1, max_size=8), st.randoms(use_true_random=False))
def test_is_suleimanova_order_invariant(values, r):
    shuffled = list(values)
    r.shuffle(shuffled)
    assert is_suleimanova(values) == is_suleimanova(shuffled)
