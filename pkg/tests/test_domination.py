"""
Domination test suite

Covers the clause test, eta and theta witnesses, relative domination, the
b/g conversion and the enumeration of dominating characters.
"""

from collections import Counter
from itertools import combinations_with_replacement

import pytest

from services.characters import AdmissibleCharacter, IntFn
from services.domination import (
    BMInvariant,
    domination_violation,
    dominates_at,
    enumerate_dominating,
    enumerate_thetas,
    eta_from_theta,
    eta_of,
    from_bm,
    relative_eta,
    relative_theta,
    sigma_from_eta,
    theta_of,
    to_bm,
    validate_theta,
    witness,
)
from services.errors import DominationError, InvalidInputError

# skew lines at height two with theta = {8:1, 9:1}
HEIGHT_TWO_SIGMA = {0: -1, 1: -1, 2: -1, 3: -1, 4: 3, 5: -1, 8: 1, 9: 1}


class TestDominationClauses:
    """Direct clause-by-clause test"""

    def test_every_character_dominates_itself_at_height_zero(self, skew_gamma):
        """gamma <=_0 gamma"""
        assert dominates_at(skew_gamma, skew_gamma, 0)

    def test_curve_dominates_skew_lines(self, skew_gamma, curve_gamma):
        """The degree ten curve sits one step above the skew lines"""
        assert dominates_at(skew_gamma, curve_gamma, 1)
        assert not dominates_at(curve_gamma, skew_gamma, 1)

    def test_failing_clause_is_reported(self, skew_gamma):
        """gamma does not dominate itself at height one: clause 3 fails at l=3"""
        clause, degree, message = domination_violation(skew_gamma, skew_gamma, 1)
        assert (clause, degree) == (3, 3)
        assert "clause 3" in message

    def test_s0_out_of_range(self, skew_gamma):
        """s0 of sigma must lie in [s0, s0 + h]"""
        line = AdmissibleCharacter.of({0: -1, 1: 1})
        clause, degree, _ = domination_violation(skew_gamma, line, 2)
        assert (clause, degree) == (1, 1)

    def test_negative_height_rejected(self, skew_gamma):
        with pytest.raises(InvalidInputError):
            dominates_at(skew_gamma, skew_gamma, -1)


class TestEtaAndTheta:
    """eta and theta witnesses"""

    def test_eta_of_curve(self, skew_gamma, curve_gamma):
        """eta of the skew lines under the curve is a single unit at 8"""
        outcome = eta_of(skew_gamma, curve_gamma, 1)
        assert outcome.success
        assert outcome.eta == IntFn({8: 1})
        assert outcome.to_dict() == {"success": True, "eta": {"entries": [[8, 1]]}}

    def test_eta_failure_names_the_degree(self, skew_gamma):
        """A negative eta value is the first failing condition"""
        outcome = eta_of(skew_gamma, skew_gamma, 1)
        assert not outcome.success
        assert outcome.clause == "nonnegative"
        assert outcome.degree == 3

    def test_sigma_from_eta_inverts_eta(self, skew_gamma, curve_gamma):
        assert sigma_from_eta(skew_gamma, 1, IntFn({8: 1})) == curve_gamma

    def test_sigma_from_eta_rejects_bad_sums(self, skew_gamma):
        """eta has to sum to the height"""
        with pytest.raises(DominationError) as exc_info:
            sigma_from_eta(skew_gamma, 2, IntFn({8: 1}))
        assert exc_info.value.clause == "sum"

    def test_sigma_from_eta_rejects_gaps(self, skew_gamma):
        """eta has to be connected below s0 + h"""
        with pytest.raises(DominationError) as exc_info:
            sigma_from_eta(skew_gamma, 2, IntFn({1: 1, 3: 1}))
        assert exc_info.value.clause == "connected"
        assert exc_info.value.degree == 2

    def test_theta_round_trip(self, skew_gamma, curve_gamma):
        """theta of the curve is {8:1} and maps back to the same eta"""
        theta = theta_of(skew_gamma, curve_gamma, 1)
        assert theta == IntFn({8: 1})
        assert eta_from_theta(skew_gamma, 1, theta) == IntFn({8: 1})

    def test_theta_drops_the_block_below_s0_plus_h(self, skew_gamma):
        """A height two double link at s0 leaves theta empty"""
        sigma = AdmissibleCharacter.of({0: -1, 1: -1, 4: 3, 5: -1})
        outcome = eta_of(skew_gamma, sigma, 2)
        assert outcome.eta == IntFn({2: 1, 3: 1})
        assert theta_of(skew_gamma, sigma, 2) == IntFn()

    def test_theta_of_requires_domination(self, skew_gamma):
        with pytest.raises(DominationError):
            theta_of(skew_gamma, skew_gamma, 1)

    def test_witness_bundle(self, skew_gamma, curve_gamma):
        wit = witness(skew_gamma, curve_gamma, 1)
        assert wit.m == 1
        assert wit.to_dict()["theta"] == {"entries": [[8, 1]]}

    @pytest.mark.parametrize(
        "theta,h,clause",
        [
            ({8: -1}, 1, "nonnegative"),
            ({8: 2}, 1, "sum"),
            ({2: 1}, 1, "support"),
        ],
    )
    def test_validate_theta(self, skew_gamma, theta, h, clause):
        """theta must be nonnegative, sum to at most h and start at s0 + m"""
        with pytest.raises(DominationError) as exc_info:
            validate_theta(skew_gamma, h, IntFn(theta))
        assert exc_info.value.clause == clause


class TestRelativeDomination:
    """tau <=_{k-h} sigma computed through gamma"""

    def test_relative_eta_and_theta(self, skew_gamma, curve_gamma):
        sigma = AdmissibleCharacter.of(HEIGHT_TWO_SIGMA)
        assert relative_eta(skew_gamma, curve_gamma, sigma, 1, 2) == IntFn({8: 1})
        assert relative_theta(skew_gamma, curve_gamma, sigma, 1, 2) == IntFn({8: 1})

    def test_relative_agrees_with_direct_domination(self, skew_gamma, curve_gamma):
        """The relative theta equals theta of tau under sigma"""
        sigma = AdmissibleCharacter.of(HEIGHT_TWO_SIGMA)
        assert dominates_at(curve_gamma, sigma, 1)
        assert theta_of(curve_gamma, sigma, 1) == IntFn({8: 1})

    def test_no_relative_domination(self, skew_gamma, curve_gamma):
        """A model at the same height with another theta is not above the curve"""
        sigma = AdmissibleCharacter.of({0: -1, 1: -1, 2: -1, 3: 4, 4: -1})
        assert relative_theta(skew_gamma, curve_gamma, sigma, 1, 1) is None
        assert relative_eta(skew_gamma, curve_gamma, sigma, 1, 1) is None

    def test_tau_must_dominate_gamma(self, skew_gamma, curve_gamma):
        with pytest.raises(DominationError):
            relative_theta(skew_gamma, skew_gamma, curve_gamma, 1, 1)


class TestBMInvariant:
    """b, g_2 <= ... <= g_r"""

    @pytest.mark.parametrize(
        "theta,h,b,g",
        [
            ({8: 1}, 2, 0, (8,)),
            ({5: 1, 6: 1}, 4, 1, (5, 5)),
            ({5: 2}, 3, 0, (4, 5)),
            ({}, 1, 0, ()),
        ],
    )
    def test_to_bm(self, theta, h, b, g):
        invariant = to_bm(IntFn(theta), h)
        assert invariant == BMInvariant(b=b, g=g)
        assert from_bm(invariant) == (IntFn(theta), h)

    @pytest.mark.parametrize("m", range(5))
    def test_round_trip_exhaustive(self, m):
        """Every theta of total m on [0, 9] at every height m < h <= 6"""
        for degrees in combinations_with_replacement(range(10), m):
            theta = IntFn(Counter(degrees))
            for h in range(m + 1, 7):
                invariant = to_bm(theta, h)
                assert list(invariant.g) == sorted(invariant.g), (theta, h)
                assert from_bm(invariant) == (theta, h), (theta, h)

    def test_b_must_be_nonnegative(self):
        """m = h leaves no room for b"""
        with pytest.raises(InvalidInputError):
            to_bm(IntFn({8: 1}), 1)

    def test_g_must_be_sorted(self):
        with pytest.raises(InvalidInputError):
            from_bm(BMInvariant(b=0, g=(5, 4)))

    def test_to_dict(self):
        assert BMInvariant(b=1, g=(5, 5)).to_dict() == {"b": 1, "g": [5, 5]}


class TestEnumeration:
    """Finite enumeration inside a window"""

    def test_dominating_in_small_window(self, skew_gamma):
        """Two characters dominate the skew lines at height one with eta in [2, 3]"""
        results = enumerate_dominating(skew_gamma, 1, (2, 3))
        assert [wit.eta for wit in results] == [IntFn({2: 1}), IntFn({3: 1})]
        assert results[0].sigma.fn == IntFn({0: -1, 1: -1, 3: 3, 4: -1})
        assert all(dominates_at(skew_gamma, wit.sigma, 1) for wit in results)

    def test_disconnected_eta_skipped(self, skew_gamma):
        """eta must stay positive from its first degree up to s0 + h - 1 = 3"""
        etas = {wit.eta for wit in enumerate_dominating(skew_gamma, 2, (1, 3))}
        assert etas == {IntFn({2: 1, 3: 1}), IntFn({3: 2})}

    def test_height_zero_gives_gamma(self, skew_gamma):
        results = enumerate_dominating(skew_gamma, 0, (0, 5))
        assert len(results) == 1
        assert results[0].sigma == skew_gamma

    def test_thetas(self, skew_gamma):
        """Height one thetas in [0, 4]: empty, {3:1} and {4:1}"""
        thetas = enumerate_thetas(skew_gamma, 1, (0, 4))
        assert thetas == [IntFn(), IntFn({3: 1}), IntFn({4: 1})]

    def test_empty_window_rejected(self, skew_gamma):
        with pytest.raises(InvalidInputError):
            enumerate_dominating(skew_gamma, 1, (3, 2))

    def test_enumerated_sigmas_are_admissible(self, curve_gamma):
        """Every enumerated sigma dominates the curve by the clause test too"""
        results = enumerate_dominating(curve_gamma, 2, (3, 9))
        assert results
        assert all(dominates_at(curve_gamma, wit.sigma, 2) for wit in results)
        assert all(theta_of(curve_gamma, wit.sigma, 2) == wit.theta for wit in results)
