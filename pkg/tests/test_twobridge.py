import math
from fractions import Fraction

import pytest

from gclink.errors import InvalidInputError
from gclink.twobridge import (
    EvenContinuedFraction,
    Pm2ValueTable,
    TwoBridgeFraction,
    VerdictStatus,
    blind_pm2_expansion,
    equivalence_class,
    find_pm2_expansion,
    schubert_equivalent,
    verdict,
)

from conftest import coprime_pairs


@pytest.fixture(scope="module")
def table16():
    return Pm2ValueTable(16)


class TestFractionNormalization:
    def test_parse_and_normalize(self):
        f = TwoBridgeFraction.parse("7/5")
        assert (f.p, f.q) == (2, 5)
        assert TwoBridgeFraction(-1, 3) == TwoBridgeFraction(2, 3)
        assert TwoBridgeFraction(3, -7) == TwoBridgeFraction(4, 7)

    def test_sentinel_trivial_link(self):
        f = TwoBridgeFraction.parse("1/0")
        assert f.is_trivial_link
        assert not f.is_knot and not f.is_link

    def test_parity(self):
        assert TwoBridgeFraction(2, 5).is_knot
        assert TwoBridgeFraction(1, 4).is_link

    def test_rejects_non_coprime_and_unknot(self):
        with pytest.raises(InvalidInputError):
            TwoBridgeFraction(2, 4)
        with pytest.raises(InvalidInputError):
            TwoBridgeFraction(3, 1)
        with pytest.raises(InvalidInputError):
            TwoBridgeFraction.parse("2/0")
        with pytest.raises(InvalidInputError):
            TwoBridgeFraction.parse("x/y")


class TestSchubertEquivalence:
    def test_known_equivalent_pairs(self):
        assert schubert_equivalent(TwoBridgeFraction(1, 3), TwoBridgeFraction(2, 3))
        assert schubert_equivalent(TwoBridgeFraction(3, 7), TwoBridgeFraction(5, 7))
        assert not schubert_equivalent(TwoBridgeFraction(1, 3), TwoBridgeFraction(1, 5))

    def test_equivalence_classes(self):
        def cls(p, q):
            return sorted((f.p, f.q) for f in equivalence_class(TwoBridgeFraction(p, q)))

        assert cls(1, 3) == [(1, 3), (2, 3)]
        assert cls(3, 7) == [(2, 7), (3, 7), (4, 7), (5, 7)]
        assert cls(1, 2) == [(1, 2)]

    def test_is_equivalence_relation_exhaustive(self):
        for q in range(2, 25):
            fractions = [TwoBridgeFraction(p, q) for p in range(1, q)
                         if math.gcd(p, q) == 1]
            classes = {f: frozenset(equivalence_class(f)) for f in fractions}
            for f in fractions:
                assert f in classes[f]  # reflexive
            for f1 in fractions:
                for f2 in fractions:
                    same = schubert_equivalent(f1, f2)
                    assert same == (f2 in classes[f1])
                    assert same == schubert_equivalent(f2, f1)  # symmetric
                    if same:
                        assert classes[f1] == classes[f2]  # transitive via class equality

    def test_members_pairwise_equivalent(self):
        for (p, q) in coprime_pairs(20):
            members = list(equivalence_class(TwoBridgeFraction(p, q)))
            for a in members:
                for b in members:
                    assert schubert_equivalent(a, b)


class TestExpansionSearch:
    def test_figure_eight_2_5(self):
        exp = find_pm2_expansion(TwoBridgeFraction(2, 5))
        assert exp.signs == (1, 1)
        assert exp.value() == Fraction(2, 5)

    def test_trefoil_1_3_via_class(self):
        exp = find_pm2_expansion(TwoBridgeFraction(1, 3))
        assert exp.signs == (1, -1)
        assert exp.value() == Fraction(2, 3)
        assert exp.target == Fraction(2, 3)

    def test_5_2_knot_3_7_has_none(self):
        assert find_pm2_expansion(TwoBridgeFraction(3, 7)) is None

    def test_evaluation_is_exact(self):
        exp = EvenContinuedFraction((1, -1, 1, -1, 1, -1))
        assert exp.value() == Fraction(6, 7)

    def test_nested_display(self):
        assert str(EvenContinuedFraction((1, -1))) == "1/(+2 + 1/(-2))"

    def test_witnesses_reevaluate_to_class_member(self):
        for (p, q) in coprime_pairs(24):
            exp = find_pm2_expansion(TwoBridgeFraction(p, q))
            if exp is None:
                continue
            members = {Fraction(m.p, m.q)
                       for m in equivalence_class(TwoBridgeFraction(p, q))}
            assert exp.value() == exp.target
            assert exp.target in members

    def test_torus_knots_all_fibered(self):
        for q in range(3, 22, 2):
            exp = find_pm2_expansion(TwoBridgeFraction(1, q))
            assert exp is not None, q
            # the witness is the alternating expansion of (q-1)/q
            assert exp.target == Fraction(q - 1, q)
            assert exp.signs == tuple(1 if i % 2 == 0 else -1 for i in range(q - 1))


class TestBlindOracle:
    def test_layer_values_are_reduced_and_bounded(self, table16):
        for num, den in table16.layers:
            assert (den > 0).all()
            assert (abs(num) < den).all()

    def test_shortest_witness_positions(self, table16):
        assert table16.find(Fraction(1, 2)) == (1,)
        assert table16.find(Fraction(-1, 2)) == (-1,)
        assert table16.find(Fraction(2, 5)) == (1, 1)
        assert table16.find(Fraction(3, 7)) is None

    def test_found_signs_reevaluate(self, table16):
        import numpy as np

        rng = np.random.default_rng(7)
        hits = 0
        for _ in range(200):
            d = int(rng.integers(1, 12))
            idx = int(rng.integers(0, 2 ** d))
            num, den = table16.layers[d - 1]
            target = Fraction(int(num[idx]), int(den[idx]))
            signs = table16.find(target)
            assert signs is not None
            assert EvenContinuedFraction(signs).value() == target
            hits += 1
        assert hits == 200

    def test_pruned_equals_blind_small_q(self, table16):
        for (p, q) in coprime_pairs(16):
            f = TwoBridgeFraction(p, q)
            pruned = find_pm2_expansion(f)
            blind = blind_pm2_expansion(f, 16, table16)
            assert (pruned is None) == (blind is None), (p, q)
            if pruned is not None:
                assert pruned.value() == pruned.target
                assert blind.value() == blind.target


class TestVerdicts:
    def test_fibered_cases(self):
        for text in ("2/5", "1/3", "1/7"):
            v = verdict(TwoBridgeFraction.parse(text), include_certificate=False)
            assert v.status is VerdictStatus.FIBERED
            assert v.expansion is not None

    def test_virtually_fibered_3_7(self):
        v = verdict(TwoBridgeFraction(3, 7))
        assert v.status is VerdictStatus.VIRTUALLY_FIBERED
        assert v.cover_name == "D_{3/7}"
        assert v.cover_degree == 14
        assert v.certificate is not None
        assert v.certificate.total_degree == 14

    def test_trivial_link_out_of_scope(self):
        v = verdict(TwoBridgeFraction.parse("1/0"))
        assert v.status is VerdictStatus.OUT_OF_SCOPE
        assert "trivial" in v.reason

    def test_fibered_requires_witness(self):
        from gclink.twobridge import VirtualFibrationVerdict

        with pytest.raises(InvalidInputError):
            VirtualFibrationVerdict(subject="x", status=VerdictStatus.FIBERED)
