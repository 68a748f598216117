"""Gauss map, total curvature, and the three curvature inequalities."""

import math

import numpy as np
import pytest

import minsurf as ms
from minsurf.curvature import (
    chern_osserman,
    curvature_report,
    fullness_and_degeneracy,
    gackstatter_and_ejiri,
    gauss_map,
    total_curvature_algebraic,
    total_curvature_numeric,
)
from minsurf.weierstrass import mobius_precompose


def projectively_equal(psi, reference, atol=1e-10):
    """[psi] == [reference] up to one overall complex scale."""
    psi_mat = np.zeros((len(psi), max(len(c) for c in reference)), dtype=complex)
    ref_mat = np.zeros_like(psi_mat)
    for i, p in enumerate(psi):
        psi_mat[i, : p.coeffs.size] = p.coeffs
    for i, c in enumerate(reference):
        ref_mat[i, : len(c)] = c
    idx = np.unravel_index(np.argmax(np.abs(ref_mat)), ref_mat.shape)
    if abs(psi_mat[idx]) < atol:
        return False
    scale = ref_mat[idx] / psi_mat[idx]
    return np.allclose(psi_mat * scale, ref_mat, atol=atol)


class TestGaussMap:
    def test_catenoid(self, catenoid):
        g = gauss_map(catenoid.data)
        assert g.degree == 2
        assert projectively_equal(g.psi, [[1, 0, -1], [1j, 0, 1j], [0, 2]])

    def test_counterexample(self, counterexample):
        g = gauss_map(counterexample.data)
        assert g.degree == 3
        assert projectively_equal(
            g.psi, [[0, 0, 0, 1], [0, 0, 0, -1j], [-2], [2j]]
        )

    def test_plane_constant_map(self, plane):
        g = gauss_map(plane.data)
        assert g.degree == 0
        assert projectively_equal(g.psi, [[1], [-1j], [0]])


class TestTotalCurvature:
    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_jorge_meeks_algebraic(self, m):
        g = gauss_map(ms.generalized_jorge_meeks(m).data)
        assert g.degree == 2 * m
        assert total_curvature_algebraic(g) == pytest.approx(-4 * m * math.pi)

    def test_catenoid_algebraic(self, catenoid):
        assert total_curvature_algebraic(gauss_map(catenoid.data)) == pytest.approx(-4 * math.pi)

    def test_plane_zero(self, plane):
        assert total_curvature_algebraic(gauss_map(plane.data)) == 0.0

    def test_catenoid_numeric(self, catenoid):
        tc = total_curvature_numeric(catenoid.data, tol=1e-3)
        assert abs(tc + 4 * math.pi) <= 1e-3 * 4 * math.pi

    def test_plane_numeric(self, plane):
        assert abs(total_curvature_numeric(plane.data, tol=1e-3)) <= 1e-3

    def test_jorge_meeks_m2_numeric(self, jm2):
        tc = total_curvature_numeric(jm2.data, tol=1e-3)
        assert abs(tc + 8 * math.pi) <= 1e-3 * 8 * math.pi


class TestChernOsserman:
    def test_catenoid_equality(self, catenoid):
        rep = chern_osserman(catenoid.data)
        assert (rep.chi, rep.m) == (0, 2)
        assert rep.co_rhs == pytest.approx(-4 * math.pi)
        assert rep.co_equality

    def test_counterexample_strict(self, counterexample):
        rep = chern_osserman(counterexample.data)
        assert rep.co_rhs == pytest.approx(-4 * math.pi)
        assert rep.tc_algebraic == pytest.approx(-6 * math.pi)
        assert not rep.co_equality

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_jorge_meeks_equality(self, m):
        rep = chern_osserman(ms.generalized_jorge_meeks(m).data)
        assert rep.chi == 1 - m and rep.m == m + 1
        assert rep.co_rhs == pytest.approx(-4 * m * math.pi)
        assert rep.co_equality

    def test_enneper_strict(self, enneper):
        rep = chern_osserman(enneper.data)
        assert rep.co_rhs == 0.0
        assert rep.tc_algebraic < rep.co_rhs


class TestFullness:
    def test_jorge_meeks_full_nondegenerate(self, jm2):
        full, l = fullness_and_degeneracy(jm2.data)
        assert full and l == 0

    def test_plane_not_full(self, plane):
        full, l = fullness_and_degeneracy(plane.data)
        assert not full and l == 2

    def test_catenoid_rank_oracle(self, catenoid):
        # coefficient matrix of (1-z^2, i(1+z^2), 2z) has complex rank 3
        M = np.array([[1, 0, -1], [1j, 0, 1j], [0, 2, 0]], dtype=complex)
        assert np.linalg.matrix_rank(M) == 3
        full, l = fullness_and_degeneracy(catenoid.data)
        assert full and l == 0


class TestGackstatterEjiri:
    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_jorge_meeks(self, m):
        w = ms.generalized_jorge_meeks(m).data
        res = gackstatter_and_ejiri(w)
        assert res.applicable
        assert res.ejiri_rhs == pytest.approx(-4 * m * math.pi)
        assert res.ejiri_equality
        assert res.gackstatter_rhs == pytest.approx((1 - 3 * m) * math.pi)
        tc = total_curvature_algebraic(gauss_map(w))
        assert tc <= res.gackstatter_rhs + 1e-9

    def test_catenoid(self, catenoid):
        res = gackstatter_and_ejiri(catenoid.data)
        assert res.gackstatter_rhs == pytest.approx(-2 * math.pi)
        tc = total_curvature_algebraic(gauss_map(catenoid.data))
        assert tc <= res.gackstatter_rhs

    def test_plane_flagged_not_applicable(self, plane):
        res = gackstatter_and_ejiri(plane.data)
        assert not res.applicable
        assert res.ejiri_rhs == pytest.approx(0.0)


class TestCrossCutting:
    def test_all_inequalities_hold_on_catalog(self, all_entries):
        for entry in all_entries:
            rep = curvature_report(entry.data, numeric=False)
            assert rep.tc_algebraic <= rep.co_rhs + 1e-9, entry.name
            assert rep.tc_algebraic <= rep.ejiri_rhs + 1e-9, entry.name
            if rep.gackstatter_applicable:
                assert rep.tc_algebraic <= rep.gackstatter_rhs + 1e-9, entry.name

    def test_numeric_matches_algebraic_on_catalog(self, all_entries):
        for entry in all_entries:
            rep = curvature_report(entry.data, tc_tol=1e-3)
            assert abs(rep.tc_numeric - rep.tc_algebraic) <= 1e-3 * max(
                1.0, abs(rep.tc_algebraic)
            ), entry.name

    def test_equality_iff_all_orders_minus_two(self, all_entries):
        from minsurf.weierstrass import metric_order_at

        for entry in all_entries:
            rep = chern_osserman(entry.data)
            orders_flat = all(
                metric_order_at(entry.data, p) == -2 for p in entry.data.punctures
            )
            assert rep.co_equality == orders_flat, entry.name

    def test_mobius_invariance_of_degree(self, all_entries):
        from conftest import well_conditioned_mobius

        rng = np.random.default_rng(53)
        for entry in all_entries[:5]:
            d0 = gauss_map(entry.data).degree
            mob = well_conditioned_mobius(entry.data, rng)
            assert gauss_map(mobius_precompose(entry.data, mob)).degree == d0
