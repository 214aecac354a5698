import math

import pytest

from gclink.angles import RationalAngle
from gclink.covering import (
    LensSpaceData,
    W_WEDGE,
    Z_WEDGE,
    covering_certificate,
    verify_free_action,
    wedge_arc_report,
)
from gclink.errors import InvalidInputError
from gclink.greatlink import SHIFTED, construct_dpq

from conftest import coprime_pairs


class TestFreeAction:
    def test_2_5_is_free(self):
        witness = verify_free_action(2, 5)
        assert witness.free
        assert len(witness.table) == 4
        assert all(z and w for _, z, w in witness.table)

    def test_trivial_group_vacuously_free(self):
        witness = verify_free_action(1, 1)
        assert witness.free
        assert witness.table == ()

    def test_non_coprime_reports_fixed_circle(self):
        witness = verify_free_action(2, 4)
        assert not witness.free
        assert "power 2" in witness.fixed_circle
        assert "w-axis" in witness.fixed_circle
        # 2*2 = 0 mod 4: the w-plane rotation of the square is trivial
        assert witness.table[1] == (2, True, False)

    def test_free_iff_coprime_sweep(self):
        for q in range(2, 30):
            for p in range(1, q):
                witness = verify_free_action(p, q)
                assert witness.free == (math.gcd(p, q) == 1), (p, q)

    def test_rejects_nonpositive_q(self):
        with pytest.raises(InvalidInputError):
            verify_free_action(1, 0)


class TestWedgeReports:
    def test_z_wedge_2_5(self):
        rep = wedge_arc_report(2, 5, Z_WEDGE)
        assert rep.arc_count == 3
        assert rep.arc_levels == (RationalAngle(0), RationalAngle(1, 5), RationalAngle(2, 5))
        assert rep.arc_rotations == (RationalAngle(0), RationalAngle(2, 5), RationalAngle(4, 5))

    def test_w_wedge_2_5_inverse_congruence(self):
        rep = wedge_arc_report(2, 5, W_WEDGE)
        assert rep.arc_count == 3
        # level pi/5 arc: rotation x*pi/5 with p*x = 1 (mod 5), found independently
        solutions = [x for x in range(5) if (2 * x) % 5 == 1]
        assert solutions == [3]
        assert rep.arc_rotations[1] == RationalAngle(3, 5)
        # level 2pi/5 arc: p*x = 2 (mod 5)
        assert rep.arc_rotations[2] == RationalAngle(1, 5)

    def test_even_q_middle_arc_is_shifted_orbit(self):
        for (p, q) in [(1, 2), (1, 4), (3, 4), (1, 6), (5, 8)]:
            rep = wedge_arc_report(p, q, Z_WEDGE)
            assert rep.carrier_orbits[1].kind == SHIFTED, (p, q)

    def test_wedge_rotation_matches_carrier_tag_mod_pi(self):
        for (p, q) in coprime_pairs(11):
            link = construct_dpq(p, q)
            for wedge in (Z_WEDGE, W_WEDGE):
                rep = wedge_arc_report(p, q, wedge, link)
                for slot, comp_index in enumerate(rep.carrier_components):
                    a, b = link.components[comp_index].axis_tag
                    level_tag = a if wedge == Z_WEDGE else b
                    rotation_tag = b if wedge == Z_WEDGE else a
                    assert level_tag.same_line(rep.arc_levels[slot])
                    assert rotation_tag.same_line(rep.arc_rotations[slot])

    def test_rejects_bad_wedge_name(self):
        with pytest.raises(InvalidInputError):
            wedge_arc_report(2, 5, "X")


class TestCoveringCertificate:
    def test_2_5_degree_ten(self):
        cert = covering_certificate(2, 5)
        assert cert.total_degree == 10
        assert cert.intermediate_quotient == LensSpaceData(q=5, p=2)
        assert cert.intermediate_quotient.name() == "L(5,2)"
        assert cert.orbit_structure == "one 5-cycle"
        assert cert.axis_pairing_verified

    def test_1_3_trefoil_degree_six(self):
        cert = covering_certificate(1, 3)
        assert cert.total_degree == 6
        assert cert.free_action.free

    def test_1_0_rejected_as_trivial_link(self):
        with pytest.raises(InvalidInputError, match="trivial two component link"):
            covering_certificate(1, 0)

    def test_q_one_rejected(self):
        with pytest.raises(InvalidInputError):
            covering_certificate(0, 1)

    def test_non_coprime_rejected(self):
        with pytest.raises(InvalidInputError):
            covering_certificate(2, 4)

    def test_even_q_structure(self):
        cert = covering_certificate(3, 8)
        assert cert.orbit_structure == "two 4-cycles"
        assert cert.total_degree == 16

    def test_certificates_deterministic(self):
        a = covering_certificate(3, 7)
        b = covering_certificate(3, 7)
        assert a == b

    def test_sweep_small_q(self):
        for (p, q) in coprime_pairs(12):
            cert = covering_certificate(p, q)
            assert cert.total_degree == 2 * q
            for rep in cert.wedge_reports:
                assert rep.arc_count == 3
                assert rep.arc_levels == (RationalAngle(0), RationalAngle(1, q),
                                          RationalAngle(2, q))
