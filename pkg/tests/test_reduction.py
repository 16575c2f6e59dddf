import dataclasses

import numpy as np
import pytest

import published as pv
from conftest import random_data
from pcakit.engine import fit
from pcakit.errors import ContractError
from pcakit.reduction import (
    parse_k_policy,
    reconstruct_x,
    reconstruct_z,
    reduce,
    scree_data,
    select_components,
)
from pcakit.standardize import StandardizedData, standardize


@pytest.fixture
def reference_model(reference_x):
    return fit(standardize(reference_x, pv.COLUMNS))


def rows(z_rows):
    return StandardizedData(z=np.asarray(z_rows), center=np.array(pv.MEANS), scale=np.array(pv.SDS),
                            column_names=pv.COLUMNS)


class TestSelect:
    def test_published_eigenvalues(self):
        assert select_components(pv.EIGENVALUES, "kaiser") == 1

    def test_spherical_keeps_one(self):
        assert select_components([1.0, 1.0, 1.0], "kaiser") == 1

    def test_direct_count(self):
        assert select_components([2.5, 1.2, 0.2, 0.1], "kaiser") == 2

    def test_fixed(self):
        assert select_components([2.5, 1.2, 0.2], 3) == 3
        for k in (0, 4):
            with pytest.raises(ContractError):
                select_components([2.5, 1.2, 0.2], k)

    def test_parse(self):
        assert parse_k_policy("kaiser") == "kaiser"
        assert parse_k_policy("fixed:2") == 2
        with pytest.raises(ContractError):
            parse_k_policy("fixed:two")
        with pytest.raises(ContractError):
            parse_k_policy("elbow")


class TestReduce:
    def test_published_k1(self, reference_model, reference_x):
        z = standardize(reference_x, pv.COLUMNS)
        red = reduce(reference_model, z, 1)
        assert red.lambda_red.tolist() == pytest.approx([1.738241], abs=1e-6)
        assert red.lambda_red_inverse[0] == pytest.approx(0.5752941, abs=1e-7)
        assert pv.same_up_to_column_sign(red.a_red, pv.LOADINGS[:, :1], atol=1e-6)
        assert red.f_red.var(ddof=1) == pytest.approx(1.0, abs=1e-9)
        assert red.explained == pytest.approx(0.5794, abs=1e-4)
        assert red.lambda_red_residual <= 1e-9

    def test_published_rows_reconstruct(self, reference_model):
        head = reduce(reference_model, rows(pv.Z_HEAD), 1)
        tail = reduce(reference_model, rows(pv.Z_TAIL), 1)
        np.testing.assert_allclose(reconstruct_z(head), pv.ZAPPROX_HEAD, atol=1e-5)
        np.testing.assert_allclose(reconstruct_z(tail), pv.ZAPPROX_TAIL, atol=1e-5)
        np.testing.assert_allclose(reconstruct_x(head, pv.MEANS, pv.SDS), pv.XAPPROX_HEAD, atol=1e-3)
        np.testing.assert_allclose(reconstruct_x(tail, pv.MEANS, pv.SDS), pv.XAPPROX_TAIL, atol=1e-3)
        assert pv.same_up_to_column_sign(head.f_red, pv.F_HEAD[:, :1], atol=1e-5)

    def test_full_rank_is_identity(self, reference_model, reference_x):
        z = standardize(reference_x, pv.COLUMNS)
        red = reduce(reference_model, z, 3)
        np.testing.assert_allclose(reconstruct_z(red), z.z, atol=1e-9)
        np.testing.assert_allclose(reconstruct_x(red, z.center, z.scale), reference_x, rtol=1e-6)

    def test_rank_one_rows_are_multiples_of_loadings(self, reference_model, reference_x):
        z = standardize(reference_x, pv.COLUMNS)
        red = reduce(reference_model, z, 1)
        za = reconstruct_z(red)
        a = red.a_red[:, 0]
        ratios = za / a
        np.testing.assert_allclose(ratios, ratios[:, :1] * np.ones((1, 3)), atol=1e-12)
        corr = np.corrcoef(za, rowvar=False)
        np.testing.assert_allclose(np.abs(corr), 1.0, atol=1e-12)

    def test_out_of_range(self, reference_model, reference_x):
        z = standardize(reference_x, pv.COLUMNS)
        for k in (0, 4):
            with pytest.raises(ContractError):
                reduce(reference_model, z, k)

    @pytest.mark.parametrize("seed", range(10))
    def test_error_monotone_and_sign_invariant(self, seed):
        z = standardize(random_data(seed))
        model = fit(z)
        errors = [np.abs(z.z - reconstruct_z(reduce(model, z, k))).max() for k in range(1, model.m + 1)]
        assert all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))
        assert errors[-1] <= 1e-9
        for k in range(1, model.m + 1):
            red = reduce(model, z, k)
            assert red.explained == pytest.approx(model.cumulative[k - 1], abs=1e-12)
            flip = np.ones(k)
            flip[0] = -1
            flipped = dataclasses.replace(red, v_red=red.v_red * flip, a_red=red.a_red * flip, f_red=red.f_red * flip)
            assert np.abs(reconstruct_z(flipped) - reconstruct_z(red)).max() <= 1e-12
            np.testing.assert_allclose(
                reconstruct_x(flipped, z.center, z.scale), reconstruct_x(red, z.center, z.scale), rtol=0, atol=1e-12 * np.abs(z.center).max() + 1e-12
            )


class TestScree:
    def test_published(self):
        s = scree_data(pv.EIGENVALUES)
        assert list(zip(s.indices, s.eigenvalues)) == [(1, 1.7382412), (2, 0.8838105), (3, 0.3779482)]
        assert s.kaiser_line == 1.0

    def test_single(self):
        assert scree_data([2.0]).indices == (1,)

    def test_spherical(self):
        assert scree_data([1.0, 1.0, 1.0]).eigenvalues == (1.0, 1.0, 1.0)

    def test_unsorted_rejected(self):
        with pytest.raises(ContractError):
            scree_data([0.5, 2.0])
        with pytest.raises(ContractError):
            scree_data([])
