"""Weierstrass datum validation, immersion evaluation, and metric checks."""

import numpy as np
import pytest

import minsurf as ms
from minsurf.errors import EvaluationNearSingularityError, SingularMetricError
from minsurf.rational import INF, RationalMap, is_infinity, laurent_expand
from minsurf.weierstrass import (
    WeierstrassData,
    check_residues_real,
    conformal_factor,
    detect_punctures,
    form_residue_vector,
    immersion_delta,
    immersion_eval,
    metric_order_at,
    validate_null,
)


def catenoid_antiderivative(z):
    """Closed-form primitive of the catenoid components (hand oracle)."""
    return np.array([-1 / (2 * z) - z / 2, -1j / (2 * z) + 1j * z / 2, np.log(z)])


class TestValidateNull:
    def test_catenoid_symbolic_identity(self, catenoid):
        # independent oracle: (1-z^2)^2 - (1+z^2)^2 + 4 z^2 expands to zero
        sq1 = np.convolve([1, 0, -1], [1, 0, -1])
        sq2 = np.convolve([1, 0, 1], [1, 0, 1])
        sq3 = np.convolve([0, 2], [0, 2])
        total = sq1 - sq2
        total[: sq3.size] += sq3
        assert np.allclose(total, 0)
        check = validate_null(catenoid.data)
        assert check.ok and check.defect < 1e-14

    def test_counterexample_identity(self, counterexample):
        # 1/4 - 1/4 + z^-6 - z^-6 = 0 by hand
        check = validate_null(counterexample.data)
        assert check.ok and check.defect < 1e-14

    def test_constant_datum_rejected(self):
        w = WeierstrassData(
            [RationalMap([1.0]), RationalMap([0.0], [1.0]), RationalMap([0.0], [1.0])],
            punctures=(INF,),
        )
        check = validate_null(w)
        assert not check.ok
        assert check.defect == pytest.approx(1.0)


class TestDetectPunctures:
    def test_catenoid(self, catenoid):
        pts = detect_punctures(catenoid.data.phi)
        assert len(pts) == 2
        assert abs(pts[0]) < 1e-10 and is_infinity(pts[1])

    def test_jorge_meeks_m2_cube_roots_not_infinity(self, jm2):
        pts = detect_punctures(jm2.data.phi)
        assert not any(is_infinity(p) for p in pts)
        expected = [np.exp(2j * np.pi * k / 3) for k in range(3)]
        assert len(pts) == 3
        for p in pts:
            assert min(abs(p - e) for e in expected) < 1e-9

    def test_simple_pole_pair(self):
        phi = (RationalMap([1], [0, 1]), RationalMap([1j], [0, 1]), RationalMap([0.0], [1]))
        pts = detect_punctures(phi)
        assert len(pts) == 2
        assert abs(pts[0]) < 1e-10 and is_infinity(pts[1])


class TestResiduesReal:
    def test_catenoid_residue_vector(self, catenoid):
        res = form_residue_vector(catenoid.data, 0j)
        assert np.allclose(res, [0, 0, 1], atol=1e-13)
        assert check_residues_real(catenoid.data).ok

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_jorge_meeks_real_residues(self, m):
        check = check_residues_real(ms.generalized_jorge_meeks(m).data)
        assert check.ok and check.worst_imag < 1e-12

    def test_imaginary_residue_rejected(self):
        w = WeierstrassData(
            [RationalMap([1j], [0, 1]), RationalMap([1], [0, 1]),
             RationalMap([0.0], [1])],
            punctures=(0j, INF),
        )
        check = check_residues_real(w)
        assert not check.ok
        assert check.worst_imag == pytest.approx(1.0, rel=1e-9)


class TestMetricOrder:
    def test_catenoid_at_zero(self, catenoid):
        assert metric_order_at(catenoid.data, 0j) == -2

    def test_counterexample_at_zero(self, counterexample):
        assert metric_order_at(counterexample.data, 0j) == -3

    def test_enneper_at_infinity(self, enneper):
        assert metric_order_at(enneper.data, INF) == -4

    def test_non_puncture_is_nonnegative(self, catenoid):
        assert metric_order_at(catenoid.data, 3.0 + 0j) >= 0

    def test_order_matches_laurent_with_jacobian_shift(self, enneper):
        # dominant component of the form at infinity: function order - 2
        orders = [laurent_expand(r, INF, 0).order - 2 for r in enneper.data.phi]
        assert metric_order_at(enneper.data, INF) == min(orders)


class TestImmersion:
    def test_catenoid_closed_form(self, catenoid):
        w = catenoid.data
        F0 = catenoid_antiderivative(w.basepoint)
        for z in (1.0 + 0j, 2.0 + 1.0j, -1.0 + 0.5j, 0.3 - 0.8j):
            got = immersion_eval(w, z)
            want = 2.0 * (catenoid_antiderivative(z) - F0).real
            assert np.max(np.abs(got - want)) < 1e-9

    def test_plane_datum(self, plane):
        got = immersion_eval(plane.data, 1 + 1j)
        assert np.allclose(got, [1, 1, 0], atol=1e-12)

    def test_basepoint_maps_to_origin(self, all_entries):
        for entry in all_entries:
            assert np.allclose(immersion_eval(entry.data, entry.data.basepoint), 0.0)

    def test_near_puncture_rejected(self, catenoid):
        with pytest.raises(EvaluationNearSingularityError):
            immersion_eval(catenoid.data, 1e-8 + 0j)

    def test_path_independence_randomized(self, jm2):
        w = jm2.data
        rng = np.random.default_rng(23)
        target = 1.5 + 0.5j
        direct = immersion_eval(w, target)
        done = 0
        while done < 10:
            via = [complex(rng.normal() * 2, rng.normal() * 2) for _ in range(2)]
            if any(abs(v - p) < 0.1 for v in via for p in w.finite_punctures):
                continue
            alt = immersion_eval(w, target, via=via)
            assert np.max(np.abs(direct - alt)) < 1e-8
            done += 1


class TestConformalFactor:
    def test_plane_is_unit(self, plane):
        assert conformal_factor(plane.data, 0.7 - 0.2j).lambda_sq == pytest.approx(1.0)

    def test_catenoid_at_one(self, catenoid):
        # phi(1) = (0, i, 1): 2(0 + 1 + 1) = 4 by hand
        assert conformal_factor(catenoid.data, 1.0 + 0j).lambda_sq == pytest.approx(4.0)

    def test_catenoid_divergence_rate(self, catenoid):
        # lambda^2 r^4 -> 2 |leading|^2 = 1 as r -> 0
        for r in (1e-2, 1e-3):
            lam2 = conformal_factor(catenoid.data, r + 0j).lambda_sq
            assert lam2 * r**4 == pytest.approx(1.0, rel=1e-3)

    def test_puncture_rejected(self, catenoid):
        with pytest.raises(SingularMetricError):
            conformal_factor(catenoid.data, 0j)

    def test_finite_difference_conformality(self, all_entries):
        rng = np.random.default_rng(31)
        for entry in all_entries:
            w = entry.data
            done = 0
            while done < 20:
                z = complex(rng.normal(), rng.normal()) * 1.2
                if any(abs(z - p) < 0.25 for p in w.finite_punctures) or abs(z) < 0.05:
                    continue
                h = 1e-6 * np.exp(2j * np.pi * rng.random())
                df = immersion_delta(w, z, z + h)
                lam2 = conformal_factor(w, z).lambda_sq
                assert abs(float(df @ df) / abs(h) ** 2 - lam2) < 1e-3 * lam2
                done += 1

    def test_harmonicity_stencil(self, catenoid, jm2):
        # 5-point Laplacian of each coordinate is O(h^2) (scaled by phi''')
        for w in (catenoid.data, jm2.data):
            h = 1e-2
            for z in (1.4 + 0.6j, -0.5 + 1.6j):
                f = lambda q: immersion_eval(w, q)
                lap = (f(z + h) + f(z - h) + f(z + 1j * h) + f(z - 1j * h) - 4 * f(z)) / h**2
                third = sum(abs(r.derivative().derivative().derivative()(z)) for r in w.phi)
                assert np.max(np.abs(lap)) <= h**2 * (2.0 * third + 1.0)


class TestMobius:
    def test_degree_invariance_spot(self, catenoid, enneper):
        from conftest import well_conditioned_mobius
        from minsurf.weierstrass import mobius_precompose

        rng = np.random.default_rng(41)
        for entry in (catenoid, enneper):
            d0 = ms.gauss_map(entry.data).degree
            for _ in range(3):
                mob = well_conditioned_mobius(entry.data, rng)
                w2 = mobius_precompose(entry.data, mob)
                assert ms.gauss_map(w2).degree == d0
