"""
Tests for xmoments.py
Tests for the expectations of X, the closed-form conjectures, binomial-basis
fitting and the asymptotic expansion.
"""

import math
from fractions import Fraction

import pytest

from src.partition_distributions.errors import OutOfDomainError, SingularSystemError
from src.partition_distributions.reference import (
    reference_coefficients,
    reference_polynomial,
    reference_sequence,
)
from src.partition_distributions.xmoments import (
    BinomialFit,
    coefficient_claims,
    conjecture_closed_form,
    conjectured_polynomial,
    default_samples,
    expand_binomial_form,
    expected_largest_cycle,
    fit_binomial_basis,
    leading_asymptotics_check,
    scaled_component_sequence,
    scaled_expectation_triangle,
    solve_exact,
    x1_sequence,
    x2_sequence,
    x_distribution,
    x_expectations,
)

# a_2 .. a_2j of n! E(X_{n-j}) = 1 + sum a_i C(n, i)
FITTED = {
    1: {2: 1},
    2: {2: 1, 3: 2, 4: 3},
    3: {2: 1, 3: 2, 4: 9, 5: 20, 6: 15},
    4: {2: 1, 3: 2, 4: 9, 5: 44, 6: 145, 7: 210, 8: 105},
}


class TestExpectations:
    """Tests for x_expectations and the scaled sequences."""

    def test_x1_sequence(self):
        """n! E(X_1) for n = 1..10."""
        assert x1_sequence(10) == [1, 3, 13, 67, 411, 2911, 23563, 213543, 2149927, 23759791]

    def test_x1_matches_reference(self):
        """The computed X_1 sequence equals the stored one."""
        expected = reference_sequence("x1")
        assert dict(zip(range(1, 11), x1_sequence(10))) == expected

    def test_x2_sequence(self):
        """n! E(X_2) for n = 2..8 equals the stored sequence."""
        assert x2_sequence(8) == [1, 4, 21, 131, 950, 7694, 70343]
        assert dict(zip(range(2, 9), x2_sequence(8))) == reference_sequence("x2")

    def test_x2_domain(self):
        """X_2 needs n >= 2."""
        with pytest.raises(OutOfDomainError):
            x2_sequence(1)

    def test_printed_example_values(self):
        """4! E(X_1) = 67 and 5! E(X_3) = 46."""
        assert x_expectations(4).scaled_value(1) == 67
        assert x_expectations(5).scaled_value(3) == 46

    def test_table_values(self):
        """Values are exact fractions and indices are range-checked."""
        table = x_expectations(5)
        assert table.value(1) == Fraction(411, 120)
        assert expected_largest_cycle(5) == Fraction(411, 120)
        with pytest.raises(OutOfDomainError):
            table.value(6)
        with pytest.raises(OutOfDomainError):
            table.scaled_value(0)

    @pytest.mark.parametrize("n", range(1, 16))
    def test_components_sum_to_n(self, n):
        """sum_j X_j = n for every permutation."""
        assert sum(x_expectations(n).values) == n

    @pytest.mark.parametrize("n", range(1, 16))
    def test_components_decrease_and_last_is_one_over_n_factorial(self, n):
        """E(X_j) is non-increasing and n! E(X_n) = 1."""
        scaled = x_expectations(n).scaled
        assert all(a >= b for a, b in zip(scaled, scaled[1:]))
        assert scaled[-1] == 1

    def test_second_moments_n3(self):
        """X_1 at n=3 is 3, 2, 1 with probabilities 1/3, 1/2, 1/6."""
        table = x_expectations(3)
        assert table.second_moments == (Fraction(31, 6), Fraction(2, 3), Fraction(1, 6))
        assert table.variance(1) == Fraction(17, 36)
        assert table.variance(3) == Fraction(1, 6) - Fraction(1, 36)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_variance_matches_distribution(self, n):
        """Var(X_j) from the table equals the variance over x_distribution."""
        table = x_expectations(n)
        dist = x_distribution(n)
        for j in range(1, n + 1):
            mean = sum(p * lam.entries[j - 1] for lam, p in dist)
            square = sum(p * lam.entries[j - 1] ** 2 for lam, p in dist)
            assert table.variance(j) == square - mean * mean
            assert table.variance(j) >= 0

    def test_triangle(self):
        """The first rows of the scaled triangle."""
        assert scaled_expectation_triangle(3) == [(1,), (3, 1), (13, 4, 1)]

    def test_workers_independent(self):
        """Thread count does not change the table."""
        assert x_expectations(16, workers=1) == x_expectations(16, workers=3)

    def test_distribution(self):
        """The pmf of X at n=3."""
        dist = x_distribution(3)
        assert [(lam.entries, p) for lam, p in dist] == [
            ((3, 0, 0), Fraction(1, 3)),
            ((2, 1, 0), Fraction(1, 2)),
            ((1, 1, 1), Fraction(1, 6)),
        ]

    def test_domain(self):
        """n must be positive."""
        with pytest.raises(OutOfDomainError):
            x_expectations(0)


class TestSequenceRows:
    """Tests for scaled_component_sequence."""

    def test_provenance(self):
        """Stored values are marked reference, the rest computed."""
        rows = scaled_component_sequence(1, 12)
        assert [r.provenance for r in rows[:10]] == ["reference"] * 10
        assert [r.provenance for r in rows[10:]] == ["computed"] * 2
        assert all(r.match is None for r in rows)

    def test_from_end_rows(self):
        """From the end, row n holds component n - j and its conjectured value."""
        rows = scaled_component_sequence(1, 5, from_end=True)
        assert [r.n for r in rows] == [2, 3, 4, 5]
        assert [r.component for r in rows] == [1, 2, 3, 4]
        assert [r.scaled for r in rows] == [3, 4, 7, 11]
        assert rows[0].in_conjectured_range is False
        assert rows[0].conjecture is None
        assert all(r.in_conjectured_range and r.match for r in rows[1:])

    def test_from_end_outside_conjectures(self):
        """No closed form is claimed for j = 4."""
        rows = scaled_component_sequence(4, 9, from_end=True)
        assert all(r.conjecture is None and not r.in_conjectured_range for r in rows)


class TestConjectures:
    """Tests for the closed forms of n! E(X_{n-j}), j = 1, 2, 3."""

    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_closed_forms_agree_with_enumeration(self, j):
        """Each closed form equals enumeration for n >= 2j + 1."""
        for n in range(2 * j + 1, 16):
            assert conjecture_closed_form(n, j) == x_expectations(n).scaled_value(n - j)

    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_polynomial_forms_match_binomial_forms(self, j):
        """Expanding the binomial forms gives the stored polynomials."""
        coefficients = {i: Fraction(a) for i, a in enumerate(reference_coefficients(j), start=2)}
        assert list(expand_binomial_form(coefficients)) == conjectured_polynomial(j)

    def test_j1_values(self):
        """1 + C(n, 2) at n = 3, 4, 5."""
        assert [conjecture_closed_form(n, 1) for n in (3, 4, 5)] == [4, 7, 11]

    @pytest.mark.parametrize("n,j", [(5, 4), (5, 0), (2, 1), (4, 2), (6, 3)])
    def test_domain(self, n, j):
        """n below 2j + 1 or j outside 1..3 is rejected."""
        with pytest.raises(OutOfDomainError):
            conjecture_closed_form(n, j)

    def test_no_polynomial_for_j4(self):
        """Only j = 1, 2, 3 have a conjectured polynomial."""
        with pytest.raises(OutOfDomainError):
            conjectured_polynomial(4)


class TestSolveExact:
    """Tests for solve_exact."""

    def test_two_by_two(self):
        """A small system solved in exact arithmetic."""
        solution = solve_exact([[2, 1], [1, 3]], [3, 5])
        assert solution == [Fraction(4, 5), Fraction(7, 5)]

    def test_needs_pivoting(self):
        """A zero pivot is swapped out."""
        assert solve_exact([[0, 1], [1, 0]], [2, 3]) == [3, 2]

    def test_singular(self):
        """A singular system raises."""
        with pytest.raises(SingularSystemError):
            solve_exact([[1, 2], [2, 4]], [1, 2])

    def test_not_square(self):
        """Non-square and empty systems raise."""
        with pytest.raises(SingularSystemError):
            solve_exact([[1, 2]], [1])
        with pytest.raises(SingularSystemError):
            solve_exact([], [])


class TestBinomialFit:
    """Tests for fit_binomial_basis."""

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_default_fit(self, j):
        """The default samples give positive integer coefficients that pass the holdouts."""
        fit = fit_binomial_basis(j, default_samples(j))
        assert fit.coefficients == FITTED[j]
        assert fit.all_positive_integers
        assert fit.holdouts_ok
        assert fit.claims_ok
        assert fit.ok

    def test_default_samples(self):
        """Default samples start at 2j + 1."""
        assert default_samples(1) == [3]
        assert default_samples(3) == [7, 8, 9, 10, 11]

    def test_holdouts(self):
        """Samples beyond the 2j consecutive ones become holdouts."""
        fit = fit_binomial_basis(2, [5, 6, 7, 9], holdout_ns=[12])
        assert fit.sample_range == (5, 6, 7)
        assert [h.n for h in fit.holdouts] == [9, 10, 11, 12]
        assert all(h.matches for h in fit.holdouts)

    def test_prediction(self):
        """j = 1 predicts 1 + C(n, 2)."""
        fit = fit_binomial_basis(1, [3])
        assert fit.predict(10) == 1 + math.comb(10, 2)

    def test_first_coefficients_agree_with_printed(self):
        """Fitted coefficients equal the stored ones."""
        for j in (1, 2, 3):
            fit = fit_binomial_basis(j, default_samples(j))
            assert [fit.coefficients[i] for i in range(2, 2 * j + 1)] == reference_coefficients(j)

    def test_too_few_samples(self):
        """Fewer than 2j distinct samples raise."""
        with pytest.raises(OutOfDomainError):
            fit_binomial_basis(2, [5, 6, 6])

    def test_samples_below_range(self):
        """Samples below 2j + 1 raise."""
        with pytest.raises(OutOfDomainError):
            fit_binomial_basis(2, [4, 5, 6])

    def test_claims_flag_wrong_coefficients(self):
        """A wrong a_4 fails only its own claim."""
        claims = {c.name: c for c in coefficient_claims(3, {2: 1, 3: 2, 4: 8, 5: 20, 6: 15})}
        assert not claims["a_4"].matches
        assert claims["a_2j"].matches
        assert claims["a_2j-1"].matches

    def test_ok_requires_integers(self):
        """Non-integer coefficients make the fit fail."""
        fit = BinomialFit(j=1, coefficients={2: Fraction(1, 2)}, sample_range=(3,))
        assert not fit.all_positive_integers
        assert not fit.ok


class TestAsymptotics:
    """Tests for leading_asymptotics_check."""

    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_leading_terms(self, j):
        """Degree 2j, leading 1/(j! 2^j), and the sign-corrected next coefficient."""
        report = leading_asymptotics_check(j)
        assert report.degree == 2 * j
        assert report.leading == Fraction(1, math.factorial(j) * 2 ** j)
        assert report.leading_ok
        assert report.next_matches_sign_corrected
        assert not report.next_matches_printed
        assert report.ok

    def test_j1_polynomial(self):
        """j = 1 expands to 1 - n/2 + n^2/2."""
        report = leading_asymptotics_check(1)
        assert report.polynomial == (1, Fraction(-1, 2), Fraction(1, 2))
        assert report.matches_printed_polynomial is True

    def test_j4_has_no_printed_polynomial(self):
        """There is nothing to compare for j = 4."""
        assert leading_asymptotics_check(4).matches_printed_polynomial is None
        assert reference_polynomial(4) is None

    def test_fit_for_other_j_rejected(self):
        """A fit for another j is refused."""
        with pytest.raises(OutOfDomainError):
            leading_asymptotics_check(2, fit=fit_binomial_basis(1, [3]))
