import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

import published as pv
from conftest import random_data
from pcakit.adequacy import (
    P_UNDERFLOW,
    assess,
    bartlett_sphericity,
    chi_square_sf,
    kmo_msa,
    partial_correlations,
)
from pcakit.errors import ContractError, InsufficientDataError, SingularMatrixError, UndefinedMeasureError
from pcakit.linalg import identity


def corr2(rho):
    return np.array([[1.0, rho], [rho, 1.0]])


class TestChiSquareSf:
    def test_zero(self):
        for df in (1, 2, 7, 30):
            assert chi_square_sf(0.0, df) == 1.0

    def test_published_statistic_underflows(self):
        assert chi_square_sf(100.12, 3) < 2.22e-16

    def test_quadrature_oracle(self):
        # 1 - integral of the df=1 density over [0, 2.1576], 40-digit quadrature
        assert chi_square_sf(2.1576, 1) == pytest.approx(0.14186612093042250, abs=1e-12)

    def test_closed_form_df2(self):
        for x in np.linspace(0, 50, 501):
            assert abs(chi_square_sf(x, 2) - math.exp(-x / 2)) <= 1e-12

    @pytest.mark.parametrize("df", [1, 2, 3, 5, 10, 28, 100])
    def test_against_scipy(self, df):
        for x in np.concatenate([np.linspace(0.01, 3 * df + 30, 60), [df - 0.5, df + 0.5, df + 1]]):
            if x <= 0:
                continue
            assert chi_square_sf(x, df) == pytest.approx(stats.chi2.sf(x, df), abs=1e-12)

    def test_monotone(self):
        xs = np.linspace(0, 40, 400)
        values = [chi_square_sf(x, 4) for x in xs]
        assert all(b <= a for a, b in zip(values, values[1:]))

    def test_contract(self):
        with pytest.raises(ContractError):
            chi_square_sf(-1.0, 2)
        with pytest.raises(ContractError):
            chi_square_sf(1.0, 0)


class TestBartlett:
    def test_published(self):
        x2, df, p = bartlett_sphericity(pv.R, pv.N)
        assert x2 == pytest.approx(pv.BARTLETT_X2, abs=0.01)
        assert df == pv.BARTLETT_DF
        assert p < P_UNDERFLOW

    def test_identity(self):
        for m in (2, 3, 6):
            for n in (m + 1, 50, 1000):
                assert bartlett_sphericity(identity(m), n) == (0.0, m * (m - 1) // 2, 1.0)

    def test_two_by_two_hand_value(self):
        x2, df, _ = bartlett_sphericity(corr2(0.5), 10)
        assert x2 == pytest.approx(-7.5 * math.log(0.75), abs=1e-12)
        assert x2 == pytest.approx(2.1576, abs=1e-4)
        assert df == 1

    def test_increasing_in_n(self):
        values = [bartlett_sphericity(pv.R, n)[0] for n in range(4, 300, 7)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            bartlett_sphericity(corr2(1.0), 10)

    def test_small_sample(self):
        with pytest.raises(InsufficientDataError):
            bartlett_sphericity(pv.R, 3)

    def test_not_a_correlation_matrix(self):
        with pytest.raises(ContractError):
            bartlett_sphericity(np.array([[2.0, 0.1], [0.1, 1.0]]), 10)


class TestPartialCorrelations:
    def test_published_height_mass(self):
        q = partial_correlations(pv.R)
        assert q[0, 1] == pytest.approx(0.99417 / math.sqrt(1.63050 * 1.66246), abs=1e-4)
        assert q[0, 1] == pytest.approx(0.6038, abs=1e-4)

    def test_identity(self):
        np.testing.assert_array_equal(partial_correlations(identity(3)), identity(3))

    @pytest.mark.parametrize("rho", [-0.9, -0.2, 0.3, 0.75])
    def test_two_by_two(self, rho):
        assert partial_correlations(corr2(rho))[0, 1] == pytest.approx(rho, abs=1e-14)

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            partial_correlations(corr2(1.0))


class TestKmo:
    def test_published(self):
        kmo, msa = kmo_msa(pv.R, pv.COLUMNS)
        assert kmo == pytest.approx(pv.KMO, abs=1e-6)
        np.testing.assert_allclose([msa[c] for c in pv.COLUMNS], pv.MSA, atol=1e-6)

    @pytest.mark.parametrize("rho", [-0.8, -0.1, 0.05, 0.6])
    def test_bivariate_half(self, rho):
        kmo, msa = kmo_msa(corr2(rho), ["a", "b"])
        assert kmo == pytest.approx(0.5, abs=1e-12)
        assert msa == pytest.approx({"a": 0.5, "b": 0.5}, abs=1e-12)

    def test_identity_undefined(self):
        with pytest.raises(UndefinedMeasureError):
            kmo_msa(identity(3), ["a", "b", "c"])

    @pytest.mark.parametrize("seed", range(15))
    def test_brute_force_pooled_ratio(self, seed):
        x = random_data(seed)
        r = np.corrcoef(x, rowvar=False)
        m = r.shape[0]
        names = [f"v{i}" for i in range(m)]
        kmo, msa = kmo_msa(r, names)
        inv = np.linalg.inv(r)
        num = den = 0.0
        for i in range(m):
            for j in range(m):
                if i != j:
                    q = -inv[i, j] / math.sqrt(inv[i, i] * inv[j, j])
                    num += r[i, j] ** 2
                    den += r[i, j] ** 2 + q**2
        assert kmo == pytest.approx(num / den, abs=1e-12)
        assert 0 <= kmo <= 1
        assert all(0 <= v <= 1 for v in msa.values())


def test_assess_report():
    report = assess(pv.R, pv.N, pv.COLUMNS)
    assert report.p_underflow
    assert report.p_display == "< 2.22e-16"
    assert report.bartlett_df == 3


@settings(max_examples=100, deadline=None)
@given(x=st.floats(0, 60), df=st.integers(1, 40))
def test_sf_in_unit_interval(x, df):
    assert 0.0 <= chi_square_sf(x, df) <= 1.0
