import itertools
from math import gcd

import pytest

from cishift.delorme import (
    Leaf,
    SplitNode,
    certificate_from_json,
    certificate_to_json,
    enumerate_splits,
    format_certificate,
    is_complete_intersection,
    verify_certificate,
)
from cishift.semigroup import Representation
from cishift.seqcore import GeneratorSequence
from cishift.toricoracle import is_ci_oracle


def ci(gens):
    return is_complete_intersection(GeneratorSequence(gens))


class TestEnumerateSplits:
    def test_requires_three_entries(self):
        with pytest.raises(ValueError):
            enumerate_splits(GeneratorSequence((2, 3)))

    def test_469_contains_expected_split(self):
        splits = enumerate_splits(GeneratorSequence((4, 6, 9)))
        match = [
            s for s in splits
            if s.k1 == 2 and s.k2 == 9
            and s.left_reduced.gens == (2, 3) and s.right_reduced.gens == (1,)
        ]
        assert match, [repr(s) for s in splits]

    def test_worked_example_split_present(self):
        splits = enumerate_splits(GeneratorSequence((28, 31, 36, 48)))
        match = [
            s for s in splits
            if s.k1 == 31 and s.k2 == 4
            and s.left_reduced.gens == (1,) and s.right_reduced.gens == (7, 9, 12)
        ]
        assert match

    def test_345_has_no_splits(self):
        assert enumerate_splits(GeneratorSequence((3, 4, 5))) == []

    def test_canonical_order(self):
        # left bitmask ascending, then k1 descending, then k2 descending
        for gens in [(4, 6, 9), (28, 31, 36, 48), (2, 3, 6), (12, 18, 20, 27)]:
            splits = enumerate_splits(GeneratorSequence(gens))
            keys = [
                (sum(1 << i for i in s.left_indices), -s.k1, -s.k2) for s in splits
            ]
            assert keys == sorted(keys), gens

    def test_splits_validate(self):
        for gens in [(4, 6, 9), (28, 31, 36, 48), (2, 3, 6)]:
            entries = GeneratorSequence(gens)
            for s in enumerate_splits(entries):
                left_vals = [entries.gens[i] for i in s.left_indices]
                right_vals = [entries.gens[i] for i in s.right_indices]
                assert sorted(s.left_indices + s.right_indices) == list(range(len(gens)))
                assert all(v % s.k1 == 0 for v in left_vals)
                assert all(v % s.k2 == 0 for v in right_vals)
                assert gcd(s.k1, s.k2) == 1
                assert tuple(v // s.k1 for v in left_vals) == s.left_reduced.gens
                assert tuple(v // s.k2 for v in right_vals) == s.right_reduced.gens


class TestDecision:
    @pytest.mark.parametrize(
        "gens, expected",
        [
            ((28, 31, 36, 48), True),
            ((8, 17, 18), True),
            ((3, 4, 5), False),
            ((4, 6, 9), True),
            ((7, 9, 12), True),
            ((5,), True),
            ((4, 9), True),
        ],
    )
    def test_examples(self, gens, expected):
        assert (ci(gens) is not None) is expected

    def test_canonical_top_split(self):
        cert = ci((28, 31, 36, 48))
        assert isinstance(cert, SplitNode)
        assert cert.split.k1 == 31 and cert.split.k2 == 4
        assert cert.split.right_reduced.gens == (7, 9, 12)

    def test_leaves(self):
        assert isinstance(ci((5,)), Leaf)
        assert isinstance(ci((4, 9)), Leaf)
        # normalization happens before the leaf is recorded
        assert ci((10, 15)).entries == (2, 3)

    def test_scale_invariance(self):
        for gens in [(3, 4, 5), (4, 6, 9), (28, 31, 36, 48), (5, 6, 7)]:
            verdict = ci(gens) is not None
            for d in (2, 3, 5):
                scaled = tuple(d * g for g in gens)
                assert (ci(scaled) is not None) is verdict

    def test_redundant_generator_sequences(self):
        # sequences whose defining ideal eliminates a variable linearly
        assert ci((1, 2, 3)) is not None
        assert ci((2, 3, 6)) is not None
        assert ci((2, 3, 5)) is not None
        assert ci((3, 4, 5, 6)) is None  # adds a redundant entry to a non-CI core

    def test_witnesses_inside_certificate(self):
        cert = ci((28, 31, 36, 48))
        assert cert.k1_witness.is_valid() and cert.k1_witness.target == 31
        assert cert.k2_witness.is_valid() and cert.k2_witness.target == 4


class TestVerifier:
    def test_round_trip_accepts(self):
        for gens in [(28, 31, 36, 48), (4, 6, 9), (8, 17, 18), (2, 3), (7,), (1, 2, 3)]:
            cert = ci(gens)
            assert cert is not None
            assert verify_certificate(GeneratorSequence(gens), cert)

    def test_rejects_wrong_sequence(self):
        cert = ci((28, 31, 36, 48))
        assert not verify_certificate(GeneratorSequence((3, 4, 5)), cert)

    def test_rejects_tampered_witness(self):
        cert = ci((4, 6, 9))
        assert isinstance(cert, SplitNode)
        bad_witness = Representation(
            tuple(c + 1 for c in cert.k1_witness.coefficients),
            cert.k1_witness.target,
            cert.k1_witness.gens,
        )
        tampered = SplitNode(
            cert.split, bad_witness, cert.k2_witness, cert.left_cert, cert.right_cert
        )
        assert not verify_certificate(GeneratorSequence((4, 6, 9)), tampered)

    def test_rejects_malformed_tree(self):
        assert not verify_certificate(GeneratorSequence((4, 6, 9)), Leaf((4, 6, 9)))
        assert not verify_certificate(GeneratorSequence((4, 6, 9)), "garbage")


class TestSerialization:
    def test_json_round_trip(self):
        for gens in [(28, 31, 36, 48), (4, 6, 9), (2, 3)]:
            cert = ci(gens)
            again = certificate_from_json(certificate_to_json(cert))
            assert again == cert

    def test_text_form(self):
        cert = ci((28, 31, 36, 48))
        text = format_certificate(cert)
        assert text.startswith("31·(1) ⊔ 4·(7,9,12)")
        assert format_certificate(ci((2, 3))) == "(2,3)"


class TestOracleAgreementDeskScale:
    def test_exhaustive_small(self):
        # the full <= 40 sweep lives in the acceptance suite
        for n in (3, 4):
            for comb in itertools.combinations(range(1, 15), n):
                d = 0
                for g in comb:
                    d = gcd(d, g)
                if d != 1:
                    continue
                assert (ci(comb) is not None) == is_ci_oracle(comb), comb
