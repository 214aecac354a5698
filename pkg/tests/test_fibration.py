import math

import numpy as np
import pytest

from gclink.angles import RationalAngle
from gclink.errors import InvalidInputError, NotDisjointError
from gclink.fibration import all_fibrations, fiber_points, fibration_certificate, sampled_winding
from gclink.geom4 import (
    GreatCircle,
    Isometry,
    apply_isometry,
    circle_distance,
    great_circle_from_axes,
    linking_number,
)
from gclink.greatlink import GreatCircleLink, construct_dpq

from conftest import coprime_pairs

Z_CIRCLE = GreatCircle([1, 0, 0, 0], [0, 1, 0, 0])
W_CIRCLE = GreatCircle([0, 0, 1, 0], [0, 0, 0, 1])
HOPF_PAIR = GreatCircleLink((Z_CIRCLE, W_CIRCLE))


def random_rotation(rng) -> Isometry:
    m, _ = np.linalg.qr(rng.normal(size=(4, 4)))
    if np.linalg.det(m) < 0:
        m[:, 3] = -m[:, 3]
    return Isometry(m)


class TestCertificate:
    def test_hopf_pair_closed_form(self):
        cert = fibration_certificate(HOPF_PAIR, 0)
        assert cert.fiber_punctures == 1
        assert cert.fiber_euler_characteristic == 0
        rec = cert.records[0]
        assert rec.winding_rate == pytest.approx(1.0)
        assert rec.clearance == pytest.approx(1.0)
        assert rec.winding_sign == 1

    def test_d25_all_bases_certify(self):
        link = construct_dpq(2, 5)
        for base in range(5):
            cert = fibration_certificate(link, base)
            assert len(cert.records) == 4
            assert cert.fiber_punctures == 4
            assert cert.fiber_euler_characteristic == -3

    def test_single_circle_link(self):
        link = GreatCircleLink((Z_CIRCLE,))
        cert = fibration_certificate(link, 0)
        assert cert.records == ()
        assert cert.fiber_punctures == 0
        assert cert.fiber_euler_characteristic == 1

    def test_base_index_validation(self):
        with pytest.raises(InvalidInputError):
            fibration_certificate(HOPF_PAIR, 2)

    def test_intersecting_circles_cannot_form_link(self):
        g1 = great_circle_from_axes(RationalAngle(0), RationalAngle(0))
        g2 = great_circle_from_axes(RationalAngle(0), RationalAngle(1, 2))
        with pytest.raises(NotDisjointError):
            GreatCircleLink((g1, g2))


class TestWindingProperties:
    def test_sign_equals_linking_number(self):
        for (p, q) in coprime_pairs(9):
            link = construct_dpq(p, q)
            for base in range(q):
                cert = fibration_certificate(link, base)
                for rec in cert.records:
                    lk = linking_number(link.components[base],
                                        link.components[rec.component])
                    assert rec.winding_sign == lk, (p, q, base, rec.component)

    def test_clearance_is_squared_sine_of_distance(self):
        for (p, q) in coprime_pairs(8):
            link = construct_dpq(p, q)
            cert = fibration_certificate(link, 0)
            for rec in cert.records:
                d = circle_distance(link.components[0], link.components[rec.component])
                assert rec.clearance == pytest.approx(math.sin(d) ** 2, abs=1e-9)

    def test_sampled_monotonicity_and_total_winding(self):
        link = construct_dpq(3, 7)
        for base in range(7):
            cert = fibration_certificate(link, base)
            for rec in cert.records:
                ang, total = sampled_winding(link, base, rec.component, 1000)
                diffs = np.diff(ang)
                assert np.all(diffs > 0) if rec.winding_sign > 0 else np.all(diffs < 0)
                assert total == pytest.approx(rec.winding_sign * 2 * math.pi, abs=1e-6)

    def test_invariance_under_global_isometry(self, rng):
        link = construct_dpq(2, 5)
        base_cert = fibration_certificate(link, 0)
        for _ in range(5):
            rot = random_rotation(rng)
            moved = GreatCircleLink(tuple(apply_isometry(rot, c) for c in link.components))
            cert = fibration_certificate(moved, 0)
            for rec, rec0 in zip(cert.records, base_cert.records):
                assert rec.winding_sign == rec0.winding_sign
                assert rec.clearance == pytest.approx(rec0.clearance, abs=1e-9)


class TestFiberPoints:
    def test_hopf_page_zero(self):
        pts = fiber_points(HOPF_PAIR, 0, 0.0)
        assert len(pts) == 1
        np.testing.assert_allclose(pts[0], [0, 0, 1, 0], atol=1e-12)

    def test_d25_four_points_on_page(self):
        link = construct_dpq(2, 5)
        theta = math.pi / 3
        pts = fiber_points(link, 0, theta, check_samples=720)
        assert len(pts) == 4
        for x in pts:
            assert np.linalg.norm(x) == pytest.approx(1.0, abs=1e-12)
            r = math.hypot(x[2], x[3])
            assert r > 0
            assert math.atan2(x[3], x[2]) == pytest.approx(theta, abs=1e-9)

    def test_full_turn_returns_same_points(self):
        link = construct_dpq(1, 3)
        a = fiber_points(link, 0, 0.25)
        b = fiber_points(link, 0, 0.25 + 2 * math.pi)
        for x, y in zip(a, b):
            np.testing.assert_allclose(x, y, atol=1e-9)


class TestAllFibrations:
    def test_one_per_component(self):
        assert len(all_fibrations(construct_dpq(2, 5))) == 5
        assert len(all_fibrations(construct_dpq(1, 2))) == 2
        assert len(all_fibrations(GreatCircleLink((Z_CIRCLE,)))) == 1
