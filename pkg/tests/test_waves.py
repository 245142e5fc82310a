import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wavevem.quadrature import segment_rule
from wavevem.waves import (
    TrefftzError,
    WaveFunction,
    edge_integral_matrix,
    edge_integral_pair,
    evanescent_directions,
    make_element_basis,
    plane_wave_directions,
)


def plane_wave(k, angle, center=(0.0, 0.0)):
    d = np.array([np.cos(angle), np.sin(angle)])
    return WaveFunction(kappa=k * d.astype(complex), center=np.array(center), k=k)


class TestDirections:
    def test_three_directions_at_zero_and_pm_120(self):
        d = plane_wave_directions(1)
        angles = np.degrees(np.arctan2(d[:, 1], d[:, 0])) % 360
        assert np.allclose(sorted(angles), [0.0, 120.0, 240.0], atol=1e-12)

    def test_directions_are_unit(self):
        for q in (1, 3, 6, 11):
            d = plane_wave_directions(q)
            assert len(d) == 2 * q + 1
            assert np.allclose(np.hypot(d[:, 0], d[:, 1]), 1.0, atol=1e-15)

    def test_q6_pairwise_minimum_angle(self):
        d = plane_wave_directions(6)
        assert len(d) == 13
        angles = np.sort(np.arctan2(d[:, 1], d[:, 0]) % (2 * np.pi))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
        assert np.allclose(gaps, 2 * np.pi / 13, atol=1e-12)

    def test_offset_rotates_fan(self):
        d0 = plane_wave_directions(2)
        d1 = plane_wave_directions(2, offset=0.3)
        rot = np.array(
            [[np.cos(0.3), -np.sin(0.3)], [np.sin(0.3), np.cos(0.3)]]
        )
        assert np.allclose(d1, d0 @ rot.T, atol=1e-14)

    def test_rejects_q_zero(self):
        with pytest.raises(ValueError):
            plane_wave_directions(0)


class TestEvanescentDirections:
    def test_single_pair_matches_30_degree_formula(self):
        d = evanescent_directions(1, 2.0, 1.0)
        # angle theta = 60deg/2 = 30deg: first components are -+ 2cos(30deg),
        # second component i*sqrt(4cos^2(30deg) - 1) = i*sqrt(2)
        assert d[0] == pytest.approx(np.array([-np.sqrt(3.0), 1j * np.sqrt(2.0)]))
        assert d[1] == pytest.approx(np.array([np.sqrt(3.0), 1j * np.sqrt(2.0)]))

    def test_zero_count_is_empty(self):
        assert evanescent_directions(0, 2.0, 1.0).shape == (0, 2)

    @pytest.mark.parametrize("q_ev,n1,n2", [(1, 2, 1), (3, 2, 1), (5, 1.5, 1.0), (2, 3.0, 1.2)])
    def test_trefftz_identity_d_dot_d(self, q_ev, n1, n2):
        d = evanescent_directions(q_ev, n1, n2)
        assert len(d) == 2 * q_ev
        dots = (d * d).sum(axis=1)
        assert np.allclose(dots, n2**2, rtol=1e-12)

    def test_requires_distinct_indices(self):
        with pytest.raises(ValueError):
            evanescent_directions(1, 1.0, 1.0)


class TestWaveFunction:
    def test_unity_at_center(self):
        w = plane_wave(7.0, 0.4, center=(0.3, -0.2))
        assert w(np.array([0.3, -0.2])) == pytest.approx(1.0)
        ev = WaveFunction(
            kappa=5.0 * evanescent_directions(1, 2.0, 1.0)[0],
            center=np.array([0.1, 0.2]),
            k=5.0,
        )
        assert ev(np.array([0.1, 0.2])) == pytest.approx(1.0)

    def test_plane_wave_has_unit_modulus(self):
        w = plane_wave(9.0, 1.1)
        pts = np.random.default_rng(0).normal(size=(50, 2))
        assert np.allclose(np.abs(w(pts)), 1.0, atol=1e-14)

    def test_trefftz_residual_enforced(self):
        with pytest.raises(TrefftzError):
            WaveFunction(kappa=np.array([7.0, 0.1]), center=np.zeros(2), k=7.0)

    def test_evanescent_decay_rate(self):
        # k=5, n1=2, n2=1, first evanescent wave: |w| = exp(-5*sqrt(2)*y)
        d = evanescent_directions(1, 2.0, 1.0)[0]
        w = WaveFunction(kappa=5.0 * d, center=np.zeros(2), k=5.0)
        ys = np.linspace(0.05, 0.5, 12)
        pts = np.column_stack([np.full_like(ys, 0.2), ys])
        mods = np.abs(w(pts))
        slope = np.polyfit(ys, np.log(mods), 1)[0]
        assert slope == pytest.approx(-5.0 * np.sqrt(2.0), rel=1e-10)
        # cross-check by finite differences of the log-modulus
        h = 1e-6
        fd = (np.log(np.abs(w(np.array([0.2, 0.3 + h]))))
              - np.log(np.abs(w(np.array([0.2, 0.3 - h]))))) / (2 * h)
        assert fd == pytest.approx(-5.0 * np.sqrt(2.0), rel=1e-6)

    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(3)
        waves = [
            plane_wave(7.0, rng.uniform(0, 2 * np.pi), center=rng.normal(size=2))
            for _ in range(3)
        ]
        waves.append(
            WaveFunction(
                kappa=6.0 * evanescent_directions(2, 2.0, 1.0)[1],
                center=np.array([0.2, 0.1]),
                k=6.0,
            )
        )
        h = 1e-6
        for w in waves:
            for _ in range(5):
                x = rng.normal(size=2)
                g = w.grad(x)
                fd = np.array(
                    [
                        (w(x + [h, 0]) - w(x - [h, 0])) / (2 * h),
                        (w(x + [0, h]) - w(x - [0, h])) / (2 * h),
                    ]
                )
                assert np.allclose(g, fd, rtol=1e-6, atol=1e-8)


class TestElementBasis:
    def test_counts_and_ordering(self):
        b = make_element_basis(
            0, (0.1, 0.5), 7.0, q=3, q_ev=2, n1=2.0, n2=1.0, k_base=7.0
        )
        assert len(b) == 7 + 4
        assert np.all(np.abs(b.kappas[:7].imag) < 1e-15)
        assert np.all(b.kappas[7:, 1].imag > 0)

    def test_all_waves_trefftz(self):
        b = make_element_basis(
            0, (0.0, 0.25), 7.0, q=4, q_ev=3, n1=2.0, n2=1.0, k_base=7.0
        )
        dots = (b.kappas * b.kappas).sum(axis=1)
        assert np.allclose(dots, 49.0, rtol=1e-12)

    def test_q_zero_pure_evanescent(self):
        b = make_element_basis(
            0, (0.0, 0.25), 7.0, q=0, q_ev=3, n1=2.0, n2=1.0, k_base=7.0
        )
        assert len(b) == 6

    def test_empty_basis_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            make_element_basis(0, (0.0, 0.0), 7.0, q=0, q_ev=0)


class TestEdgeIntegrals:
    def test_same_wave_gives_edge_length(self):
        w = plane_wave(7.0, 0.7, center=(0.2, 0.9))
        a, b = np.array([0.0, 0.0]), np.array([0.6, 0.8])
        assert edge_integral_pair(w, w, a, b) == pytest.approx(1.0, rel=1e-14)

    def test_conjugate_pair_constant_integrand(self):
        # kappa1 = conj(kappa2) with a shared center: w1 conj(w2) is constant
        d = evanescent_directions(1, 2.0, 1.0)[0]
        c = np.array([0.3, 0.3])
        w1 = WaveFunction(kappa=5.0 * d, center=c, k=5.0)
        w2 = WaveFunction(kappa=np.conj(5.0 * d), center=c, k=5.0)
        a, b = np.array([0.1, 0.2]), np.array([0.5, 0.2])
        val = edge_integral_pair(w1, w2, a, b)
        assert val == pytest.approx(0.4 * w1(a) * np.conj(w2(a)), rel=1e-13)

    def test_hermitian_symmetry(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            w1 = plane_wave(8.0, rng.uniform(0, 2 * np.pi), rng.normal(size=2))
            w2 = plane_wave(8.0, rng.uniform(0, 2 * np.pi), rng.normal(size=2))
            a, b = rng.normal(size=2), rng.normal(size=2)
            assert edge_integral_pair(w1, w2, a, b) == pytest.approx(
                np.conj(edge_integral_pair(w2, w1, a, b)), rel=1e-13
            )

    def test_thousand_random_triples_match_gauss(self):
        # Strict relative agreement whenever the integral is not wiped out by
        # oscillatory cancellation; otherwise relative to the natural bound
        # h * max|integrand| (below which every float method carries ~1e-15
        # absolute noise).
        rng = np.random.default_rng(2024)
        worst_rel, worst_scaled = 0.0, 0.0
        for _ in range(1000):
            k = rng.uniform(2.0, 12.0)
            if rng.uniform() < 0.3:
                d = evanescent_directions(2, 2.0, 1.0)[rng.integers(0, 4)]
                kap = k * d
            else:
                ang = rng.uniform(0, 2 * np.pi)
                kap = k * np.array([np.cos(ang), np.sin(ang)], dtype=complex)
            w1 = WaveFunction(kappa=kap, center=rng.uniform(-1, 1, 2), k=k)
            ang2 = rng.uniform(0, 2 * np.pi)
            w2 = WaveFunction(
                kappa=k * np.array([np.cos(ang2), np.sin(ang2)], dtype=complex),
                center=rng.uniform(-1, 1, 2),
                k=k,
            )
            a = rng.uniform(-1, 1, 2)
            b = a + rng.uniform(0.05, 1.0) * _unit(rng)
            closed = edge_integral_pair(w1, w2, a, b)
            pts, wts = segment_rule(a, b, 50)
            integrand = w1(pts) * np.conj(w2(pts))
            ref = wts @ integrand
            h = np.hypot(*(b - a))
            scale = h * np.max(np.abs(integrand))
            if abs(ref) > 0.05 * scale:
                worst_rel = max(worst_rel, abs(closed - ref) / abs(ref))
            worst_scaled = max(worst_scaled, abs(closed - ref) / scale)
        assert worst_rel < 1e-12
        assert worst_scaled < 1e-12

    def test_series_crossover_region(self):
        # |z| in [1e-8, 1e-2]: nearly equal tangential wavenumbers
        rng = np.random.default_rng(5)
        a, b = np.array([0.0, 0.0]), np.array([1.0, 0.0])
        for mag in (1e-8, 1e-6, 1e-4, 1e-3, 1e-2):
            k = 7.0
            ang = 0.3
            w1 = plane_wave(k, ang)
            # second direction perturbed so z = i(k cos a1 - k cos a2) ~ mag
            ang2 = np.arccos(np.cos(ang) - mag / k)
            w2 = plane_wave(k, ang2, center=rng.normal(size=2) * 0.1)
            closed = edge_integral_pair(w1, w2, a, b)
            pts, wts = segment_rule(a, b, 60)
            ref = wts @ (w1(pts) * np.conj(w2(pts)))
            assert closed == pytest.approx(ref, rel=1e-12)

    def test_matrix_form_agrees_with_pairs(self):
        rng = np.random.default_rng(8)
        waves = [
            plane_wave(6.0, rng.uniform(0, 2 * np.pi), rng.normal(size=2) * 0.3)
            for _ in range(4)
        ]
        a, b = np.array([-0.2, 0.1]), np.array([0.5, 0.4])
        kap = np.array([w.kappa for w in waves])
        cen = np.array([w.center for w in waves])
        mat = edge_integral_matrix(kap, cen, kap, cen, a, b)
        for i, wi in enumerate(waves):
            for j, wj in enumerate(waves):
                assert mat[i, j] == pytest.approx(
                    edge_integral_pair(wi, wj, a, b), rel=1e-13
                )


@settings(max_examples=60, deadline=None)
@given(
    k=st.floats(1.0, 12.0),
    ang1=st.floats(0.0, 6.28),
    ang2=st.floats(0.0, 6.28),
    ax=st.floats(-1.0, 1.0),
    ay=st.floats(-1.0, 1.0),
    blen=st.floats(0.05, 1.5),
    bang=st.floats(0.0, 6.28),
)
def test_property_closed_form_matches_quadrature(k, ang1, ang2, ax, ay, blen, bang):
    w1 = plane_wave(k, ang1, center=(0.1, -0.3))
    w2 = plane_wave(k, ang2, center=(-0.2, 0.4))
    a = np.array([ax, ay])
    b = a + blen * np.array([np.cos(bang), np.sin(bang)])
    closed = edge_integral_pair(w1, w2, a, b)
    pts, wts = segment_rule(a, b, 48)
    ref = wts @ (w1(pts) * np.conj(w2(pts)))
    assert abs(closed - ref) <= 1e-12 * max(abs(ref), blen)


def _unit(rng):
    v = rng.normal(size=2)
    return v / np.linalg.norm(v)
