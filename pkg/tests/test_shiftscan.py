import pytest

from cishift.delorme import Leaf
from cishift.errors import (
    InvalidCertificateError,
    NotCompleteIntersectionError,
    WindowTooLargeError,
)
from cishift.seqcore import BaseSequence
from cishift.shiftscan import (
    ci_at,
    converse_predicate,
    eventual_report,
    main_theorem_witness,
    n2_criterion,
    n3_criterion,
    report_from_dict,
    report_to_dict,
    scan,
    solve_two_term,
    top_split_anatomy,
)


class TestCiAt:
    def test_examples(self):
        assert ci_at(BaseSequence((3, 8, 20)), 28) is not None
        assert ci_at(BaseSequence((11, 16, 28)), 56) is not None
        assert ci_at(BaseSequence((1, 2)), 3) is None


class TestScan:
    def test_family_window(self):
        result = scan(BaseSequence((11, 16, 28)), 785, 841)
        assert result.members == (812, 840)

    def test_finite_family_windows_empty(self):
        assert scan(BaseSequence((3, 8, 20)), 401, 440).members == ()
        assert scan(BaseSequence((8, 17, 18)), 325, 360).members == ()

    def test_window_validation(self):
        with pytest.raises(ValueError):
            scan(BaseSequence((1, 2)), 5, 4)
        with pytest.raises(ValueError):
            scan(BaseSequence((1, 2)), 0, 4)

    def test_cost_cap(self):
        with pytest.raises(WindowTooLargeError):
            scan(BaseSequence((11, 16, 28)), 1, 10 ** 7)
        # explicit budgets loosen or tighten the cap
        with pytest.raises(WindowTooLargeError):
            scan(BaseSequence((1, 2)), 1, 50, budget=10)

    def test_jobs_deterministic(self):
        base = BaseSequence((3, 5, 9))
        seq = scan(base, 80, 180)
        par = scan(base, 80, 180, jobs=4)
        assert seq == par


class TestEventualReport:
    def test_family(self):
        report = eventual_report(BaseSequence((11, 16, 28)))
        assert report.residues == frozenset({0})
        assert not report.eventually_empty
        assert report.window_consistent
        assert report.base_is_ci
        assert report.threshold == 784 and report.period == 28

    def test_finite_families(self):
        r1 = eventual_report(BaseSequence((3, 8, 20)))
        assert r1.eventually_empty and r1.base_is_ci
        r2 = eventual_report(BaseSequence((8, 17, 18)))
        assert r2.eventually_empty and r2.base_is_ci

    def test_threshold_override(self):
        report = eventual_report(BaseSequence((3, 8, 20)), threshold=20)
        assert not report.eventually_empty  # the sporadic j=28 lands in the window

    def test_json_round_trip(self):
        report = eventual_report(BaseSequence((11, 16, 28)))
        assert report_from_dict(report_to_dict(report)) == report


class TestN2Criterion:
    def test_examples(self):
        w = n2_criterion(1, 2, 4)
        assert (w.k, w.alpha, w.beta) == (2, 1, 1)
        assert n2_criterion(1, 2, 3) is None
        w = n2_criterion(3, 9, 81)
        assert (w.k, w.alpha, w.beta) == (9, 6, 3)
        assert w.equation_holds() and w.alpha + w.beta == w.k

    def test_precondition(self):
        with pytest.raises(ValueError):
            n2_criterion(2, 5, 9)  # below max(10, 15)
        with pytest.raises(ValueError):
            n2_criterion(5, 3, 100)

    def test_agrees_with_recursive_decision(self):
        for b in range(2, 11):
            for a in range(1, b):
                start = max(a * b, b * (b - a))
                for j in range(start, start + 2 * b + 1):
                    present = n2_criterion(a, b, j) is not None
                    actual = ci_at(BaseSequence((a, b)), j) is not None
                    assert present == actual, (a, b, j)

    def test_witness_sum_is_k(self):
        for b in range(2, 11):
            for a in range(1, b):
                start = max(a * b, b * (b - a))
                for j in range(start, start + 2 * b + 1):
                    w = n2_criterion(a, b, j)
                    if w is not None:
                        assert w.equation_holds()
                        assert w.alpha + w.beta == w.k

    def test_non_coprime_cofactor_case(self):
        # (10, 12, 14) solves k(j+a) = aj + b(j+b) yet is not CI; the
        # cofactor conditions must reject it
        assert n2_criterion(2, 4, 10) is None
        assert ci_at(BaseSequence((2, 4)), 10) is None


class TestOffPeriodMembers:
    def test_n2_family_with_off_period_ci(self):
        # CI shifts above a_n^2 need not be multiples of a_n when the
        # differences share a factor: gcd(333, 18) = 9 and 9*(333+4) is
        # representable over (333/9, 351/9), so (333, 337, 351) is CI.
        base = BaseSequence((4, 18))
        assert 333 % 18 != 0 and 333 > 18 * 18
        cert = ci_at(base, 333)
        assert cert is not None
        anatomy = top_split_anatomy(cert)
        assert anatomy.s == 1 and anatomy.k == 9
        # the witness extraction reports the anomaly by returning None
        assert main_theorem_witness(base, 333, cert) is None

    def test_residues_report_off_period_classes(self):
        report = eventual_report(BaseSequence((4, 18)))
        assert report.residues == frozenset({0, 9})
        assert report.window_consistent and report.base_is_ci


class TestN3Criterion:
    def test_family_witness(self):
        w = n3_criterion(11, 16, 28, 812)
        assert (w.s, w.k, w.m) == (1, 4, 29)
        assert (w.alpha, w.beta, w.gamma) == (2, 1, 1)
        assert w.k * w.a == w.beta * w.b + w.gamma * w.c

    def test_unsolvable_families(self):
        assert n3_criterion(3, 8, 20, 420) is None
        assert n3_criterion(8, 17, 18, 648) is None

    def test_non_multiple_rejected(self):
        assert n3_criterion(11, 16, 28, 812 + 1) is None

    def test_precondition(self):
        with pytest.raises(ValueError):
            n3_criterion(11, 16, 28, 784)
        with pytest.raises(ValueError):
            n3_criterion(5, 4, 9, 100)

    def test_agrees_with_recursive_decision(self):
        for c in range(3, 15):
            for b in range(2, c):
                for a in range(1, b):
                    for m in (c + 1, c + 2):
                        j = c * m
                        if j <= c * c or j > c * c + 2 * c:
                            continue
                        present = n3_criterion(a, b, c, j) is not None
                        actual = ci_at(BaseSequence((a, b, c)), j) is not None
                        assert present == actual, (a, b, c, j)


class TestMainTheoremWitness:
    def test_family_extraction(self):
        base = BaseSequence((11, 16, 28))
        cert = ci_at(base, 812)
        w = main_theorem_witness(base, 812, cert)
        assert (w.s, w.k, w.m, w.kprime) == (1, 4, 29, 1)
        assert w.alphas.coefficients == (2, 1, 1)
        assert w.alphas.coefficient_sum == w.k

    def test_below_threshold_rejected(self):
        base = BaseSequence((3, 8, 20))
        cert = ci_at(base, 28)
        with pytest.raises(ValueError):
            main_theorem_witness(base, 28, cert)

    def test_threshold_override_allows_small_shifts(self):
        base = BaseSequence((11, 16, 28))
        cert = ci_at(base, 56)
        w = main_theorem_witness(base, 56, cert, threshold=0)
        assert (w.s, w.k, w.m) == (1, 4, 2)

    def test_invalid_certificate(self):
        base = BaseSequence((11, 16, 28))
        with pytest.raises(InvalidCertificateError):
            main_theorem_witness(base, 812, Leaf((1, 2)))

    def test_scaled_base(self):
        base = BaseSequence((22, 32, 56))  # 2 * (11, 16, 28)
        j = 56 * 57
        cert = ci_at(base, j)
        assert cert is not None
        w = main_theorem_witness(base, j, cert)
        assert w.kprime == 2 and w.s == 1
        assert w.alphas.coefficient_sum == w.k

    def test_small_base_extraction(self):
        base = BaseSequence((1, 2, 4))
        cert = ci_at(base, 20)
        assert cert is not None
        w = main_theorem_witness(base, 20, cert)
        assert w.s in (1, 2) and w.m == 5
        assert w.alphas.coefficient_sum == w.k == 2


class TestConversePredicate:
    def test_examples(self):
        assert converse_predicate(BaseSequence((11, 16, 28))) is True
        assert converse_predicate(BaseSequence((8, 17, 18))) is False
        assert converse_predicate(BaseSequence((2, 4))) is True

    def test_requires_ci_base(self):
        with pytest.raises(NotCompleteIntersectionError):
            converse_predicate(BaseSequence((3, 4, 5)))


class TestSolveTwoTerm:
    def test_cases(self):
        assert solve_two_term(12, 8, 20) is None
        assert solve_two_term(34, 8, 18) == (2, 1)
        assert solve_two_term(34, 8, 18, max_sum=2) is None
        assert solve_two_term(44, 16, 28, max_sum=4) == (1, 1)
        assert solve_two_term(0, 3, 5) == (0, 0)
