import numpy as np
import pytest

from signrank.errors import DomainError, PatternFormatError, ResourceExhausted
from signrank.fixtures import A0_PATTERN, A1_PATTERN, A2_PATTERN
from signrank.pattern import (
    EquivalenceWitness,
    MrBoundsOptions,
    SignPattern,
    condense,
    is_equivalent,
    is_mr1,
    is_mr2,
    is_sns,
    max_sns_submatrix,
    mr_bounds,
    term_rank,
)

from conftest import (
    factorial_term_rank,
    permutation_sns,
    random_pattern,
    random_witness,
)


class TestTextFormat:
    def test_roundtrip(self):
        text = "+-0\n0+-"
        P = SignPattern.from_text(text)
        assert P.to_text() == text

    def test_comments_and_whitespace(self):
        P = SignPattern.from_text("# header\n+ - 0\n0 + -\n")
        assert P == SignPattern(["+-0", "0+-"])

    def test_bad_character_position(self):
        with pytest.raises(PatternFormatError) as exc:
            SignPattern.from_text("+-0\n0x-")
        assert exc.value.line == 2
        assert exc.value.column == 2

    def test_ragged_rows(self):
        with pytest.raises(PatternFormatError):
            SignPattern.from_text("+-\n+")

    def test_invalid_values(self):
        with pytest.raises(DomainError):
            SignPattern([[2]])


def _replay_log(P: SignPattern, report):
    rows = list(range(P.m))
    cols = list(range(P.n))
    for event in report.log:
        if event.axis == "row":
            rows.remove(event.index)
        else:
            cols.remove(event.index)
    return P.submatrix(rows, cols)


class TestCondense:
    def test_all_plus_square(self):
        report = condense(SignPattern(["++", "++"]))
        assert report.condensed == SignPattern(["+"])
        assert report.kept_rows == (0,) and report.kept_cols == (0,)

    def test_opposite_rows_then_columns(self):
        # hand application: row 2 is opposite of row 1, row 3 is zero,
        # then the second column is opposite of the first
        report = condense(SignPattern(["+-", "-+", "00"]))
        assert report.condensed == SignPattern(["+"])
        kinds = [(e.axis, e.kind) for e in report.log]
        assert ("row", "opposite") in kinds
        assert ("row", "zero") in kinds
        assert ("col", "opposite") in kinds

    def test_a0_already_condensed(self):
        report = condense(A0_PATTERN)
        assert report.condensed == A0_PATTERN
        assert report.log == ()

    def test_zero_pattern_gives_empty(self):
        report = condense(SignPattern.zeros(3, 2))
        assert report.condensed.m == 0 and report.condensed.n == 0

    def test_log_replay(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            P = random_pattern(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)), 0.4)
            report = condense(P)
            assert _replay_log(P, report) == report.condensed
            assert P.submatrix(report.kept_rows, report.kept_cols) == report.condensed

    def test_idempotent(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            P = random_pattern(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)), 0.35)
            once = condense(P).condensed
            assert condense(once).condensed == once


class TestEquivalence:
    def test_identity(self):
        w = is_equivalent(A1_PATTERN, A1_PATTERN)
        assert w is not None and w.apply(A1_PATTERN) == A1_PATTERN

    def test_negation(self):
        w = is_equivalent(A1_PATTERN, A1_PATTERN.negate())
        assert w is not None
        assert w.apply(A1_PATTERN) == A1_PATTERN.negate()

    def test_recovers_constructed_transform(self):
        # swap rows 1 and 2, negate column 2
        swapped = EquivalenceWitness(
            row_perm=(1, 0, 2),
            col_perm=(0, 1, 2),
            row_signs=(1, 1, 1),
            col_signs=(1, -1, 1),
        )
        B = swapped.apply(A1_PATTERN)
        w = is_equivalent(A1_PATTERN, B)
        assert w is not None and w.apply(A1_PATTERN) == B

    def test_recovers_random_transforms(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            m, n = int(rng.integers(2, 7)), int(rng.integers(2, 7))
            A = random_pattern(rng, m, n, 0.25)
            B = random_witness(rng, m, n).apply(A)
            w = is_equivalent(A, B)
            assert w is not None
            assert w.apply(A) == B

    def test_detects_inequivalence(self):
        A = SignPattern(["+0", "0+"])
        B = SignPattern(["++", "++"])
        assert is_equivalent(A, B) is None

    def test_size_mismatch_is_absent_not_error(self):
        assert is_equivalent(SignPattern(["+"]), SignPattern(["++"])) is None

    def test_node_budget(self):
        rng = np.random.default_rng(1)
        A = random_pattern(rng, 7, 7, 0.0)
        B = random_witness(rng, 7, 7).apply(A)
        with pytest.raises(ResourceExhausted):
            is_equivalent(A, B, node_budget=2)


class TestTermRank:
    def test_zero(self):
        assert term_rank(SignPattern.zeros(2, 3)) == 0

    def test_single(self):
        assert term_rank(SignPattern(["+0", "00"])) == 1

    def test_a0_against_factorial_enumeration(self):
        assert term_rank(A0_PATTERN) == factorial_term_rank(A0_PATTERN)

    def test_random_against_factorial_enumeration(self):
        rng = np.random.default_rng(12)
        for _ in range(150):
            P = random_pattern(rng, int(rng.integers(1, 7)), int(rng.integers(1, 7)), 0.45)
            assert term_rank(P) == factorial_term_rank(P)


class TestSns:
    def test_a0_witness_block(self):
        sub = A0_PATTERN.submatrix((3, 4, 5), (6, 7, 8))
        assert is_sns(sub)
        assert permutation_sns(sub)

    def test_diagonal(self):
        assert is_sns(SignPattern(["+0", "0+"]))

    def test_all_plus_two(self):
        assert not is_sns(SignPattern(["++", "++"]))

    def test_non_square(self):
        with pytest.raises(DomainError):
            is_sns(SignPattern(["++"]))

    def test_cap(self):
        big = SignPattern([["+"] * 11 for _ in range(11)])
        with pytest.raises(ResourceExhausted):
            is_sns(big)

    def test_random_against_permutation_expansion(self):
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = int(rng.integers(1, 6))
            P = random_pattern(rng, n, n, 0.4)
            assert is_sns(P) == permutation_sns(P)


class TestMaxSns:
    def test_all_plus(self):
        size, rows, cols = max_sns_submatrix(SignPattern(["++", "++"]))
        assert size == 1

    def test_diag3(self):
        size, rows, cols = max_sns_submatrix(SignPattern(["+00", "0+0", "00+"]))
        assert size == 3 and rows == (0, 1, 2)

    def test_zero_pattern(self):
        assert max_sns_submatrix(SignPattern.zeros(2, 2)) == (0, (), ())

    def test_witness_is_sns(self):
        rng = np.random.default_rng(31)
        for _ in range(40):
            P = random_pattern(rng, 5, 5, 0.4)
            size, rows, cols = max_sns_submatrix(P, cap=4)
            if size:
                assert is_sns(P.submatrix(rows, cols))


class TestMr1Mr2:
    def test_single_plus(self):
        assert is_mr1(SignPattern(["+"]))
        assert not is_mr2(SignPattern(["+"])).value

    def test_all_ones_block(self):
        assert is_mr1(SignPattern(["++", "++"]))

    def test_a1_not_mr1(self):
        assert not is_mr1(A1_PATTERN)

    def test_a1_a2_are_mr2(self):
        assert is_mr2(A1_PATTERN).value
        assert is_mr2(A2_PATTERN).value

    def test_a0_not_mr2(self):
        assert not is_mr2(A0_PATTERN).value

    def test_witness_is_nondecreasing_arrangement(self):
        result = is_mr2(A1_PATTERN)
        arranged = result.witness.apply(result.condensation.condensed)
        for i in range(arranged.m):
            row = arranged.row(i)
            assert list(row) == sorted(row)
        for j in range(arranged.n):
            col = arranged.col(j)
            assert list(col) == sorted(col)

    def test_mr1_mr2_mutually_exclusive(self):
        rng = np.random.default_rng(8)
        for _ in range(150):
            P = random_pattern(rng, int(rng.integers(1, 6)), int(rng.integers(1, 6)), 0.3)
            assert not (is_mr1(P) and is_mr2(P).value)

    def test_column_limit(self):
        # 25 pairwise distinct, non-opposite sign columns survive condensation
        cols = [[1 if (j >> bit) & 1 else -1 for bit in range(6)] for j in range(25)]
        wide = SignPattern(list(zip(*cols)))
        assert condense(wide).condensed.n == 25
        with pytest.raises(ResourceExhausted):
            is_mr2(wide)

    def test_tiny_instance_trichotomy(self):
        # with at most 3 rows, exactly one of mr=0 / mr=1 / mr=2 / mr=3 holds
        rng = np.random.default_rng(14)
        for _ in range(200):
            P = random_pattern(rng, 3, int(rng.integers(1, 7)), 0.3)
            states = [P.is_zero(), is_mr1(P), is_mr2(P).value]
            assert sum(states) <= 1
            condensed = condense(P).condensed
            if not any(states):
                assert min(condensed.m, condensed.n) == 3


class TestMrBounds:
    def test_zero(self):
        b = mr_bounds(SignPattern.zeros(2, 3))
        assert (b.lower, b.upper) == (0, 0)

    def test_diag2(self):
        b = mr_bounds(SignPattern(["+0", "0+"]))
        assert (b.lower, b.upper) == (2, 2)

    def test_lower_never_exceeds_upper(self):
        rng = np.random.default_rng(17)
        for _ in range(80):
            P = random_pattern(rng, int(rng.integers(1, 6)), int(rng.integers(1, 6)), 0.3)
            b = mr_bounds(P, MrBoundsOptions(sns_cap=3))
            assert b.lower <= b.upper

    def test_sns_pattern_bound(self):
        b = mr_bounds(SignPattern(["+00", "0+0", "00+"]))
        assert b.lower >= 3


class TestEquivalenceInvariance:
    def test_rank_statistics_invariant(self):
        rng = np.random.default_rng(23)
        for _ in range(40):
            m, n = int(rng.integers(2, 6)), int(rng.integers(2, 6))
            A = random_pattern(rng, m, n, 0.25)
            B = random_witness(rng, m, n).apply(A)
            assert is_mr1(A) == is_mr1(B)
            assert is_mr2(A).value == is_mr2(B).value
            assert term_rank(A) == term_rank(B)
            assert max_sns_submatrix(A, 3)[0] == max_sns_submatrix(B, 3)[0]
            ba, bb = mr_bounds(A, MrBoundsOptions(sns_cap=3)), mr_bounds(B, MrBoundsOptions(sns_cap=3))
            assert (ba.lower, ba.upper) == (bb.lower, bb.upper)
