"""
Hilbert data and resolution shapes

Tests for characters read off resolutions, Hilbert functions and polynomials,
and the twist-level transforms under links and double links.
"""

from fractions import Fraction
from itertools import product

import pytest

from models.oracle import SubschemeConfig, SubschemeKind
from models.resolution import CoreDelta, ResolutionData, ResolutionKind
from services.characters import AdmissibleCharacter, IntFn
from services.errors import InvalidInputError, LinkageError, ResolutionError
from services.hilbert import (
    align_for_domination,
    bootstrap_minimal_resolution,
    degree_genus,
    gamma_from_free_resolution,
    gamma_from_hilbert_function,
    gamma_from_N_data,
    gamma_from_resolution,
    gamma_values,
    h0_dissocie,
    hilbert_function,
    hilbert_polynomial,
    minimize_resolution,
    resolution_domination_check,
    resolution_double_link,
    resolution_link,
)
from services.linkage import dominates_model, double_link, link_dual, minimal_element, model_gamma
from services.oracle import hilbert_oracle
from utils.file_handler import fixture_path, load_free_resolution, load_resolution

LINE = {0: -1, 1: 1}
CI_22 = {0: -1, 1: -1, 2: 1, 3: 1}
TWISTED_CUBIC = {0: -1, 1: -1, 2: 2}


def resolution(name):
    return load_resolution(fixture_path(f"resolutions/{name}"))


def double_linked(cls):
    """The minimal skew model and its double links (s, h) with s <= 9 and h <= 2, with resolutions"""
    minimal, base = minimal_element(cls), resolution("skew_minimal_N")
    yield minimal, base
    for s, h in product(range(cls.s0, 10), (1, 2)):
        yield double_link(minimal, s, h), resolution_double_link(base, s, h)


ORACLE_GATE = [
    ("line_free", SubschemeConfig(kind=SubschemeKind.LINE), (1, 0)),
    ("ci22_free", SubschemeConfig(kind=SubschemeKind.COMPLETE_INTERSECTION, a=2, b=2), (4, 1)),
    ("skew_free", SubschemeConfig(kind=SubschemeKind.DISJOINT_LINES, d=2), (2, -1)),
]


class TestDissocie:
    def test_h0_of_sums_of_line_bundles(self):
        """h0 O(2) on P^3 is 10; twists above l contribute nothing"""
        assert h0_dissocie([0], 3, 2) == 10
        assert h0_dissocie([1, 1], 3, 1) == 2
        assert h0_dissocie([3], 3, 2) == 0

    def test_dimension_checked(self):
        with pytest.raises(InvalidInputError):
            h0_dissocie([0], 0, 1)


class TestFreeResolutions:
    """gamma-characters of graded free resolutions"""

    @pytest.mark.parametrize(
        "name,expected",
        [
            ("line_free", LINE),
            ("ci22_free", CI_22),
            ("skew_free", {0: -1, 1: -1, 2: 3, 3: -1}),
        ],
    )
    def test_fixture_resolutions(self, name, expected):
        stages = load_free_resolution(fixture_path(f"resolutions/{name}")).stages
        assert gamma_from_free_resolution(stages, 3).fn == IntFn(expected)

    @pytest.mark.parametrize("name,config,expected", ORACLE_GATE)
    def test_matches_closed_form_h0(self, name, config, expected):
        """Resolution characters give the closed-form h0 in every degree up to 10"""
        stages = load_free_resolution(fixture_path(f"resolutions/{name}")).stages
        gamma = gamma_from_free_resolution(stages, 3)
        for l in range(-3, 11):
            assert hilbert_function(gamma, 3, l) == hilbert_oracle(config, l), l
        assert degree_genus(gamma, 3) == expected

    def test_rank_must_settle(self):
        """A resolution whose ranks do not cancel is rejected"""
        with pytest.raises(InvalidInputError):
            gamma_from_free_resolution([[1, 1], [2, 2]], 3)


class TestHilbertFunctions:
    """Hilbert functions, polynomials, degree and genus"""

    @pytest.mark.parametrize(
        "gamma,degree,genus",
        [
            (LINE, 1, 0),
            (CI_22, 4, 1),
            ({0: -1, 1: -1, 2: 3, 3: -1}, 2, -1),
            (TWISTED_CUBIC, 3, 0),
        ],
    )
    def test_degree_genus(self, gamma, degree, genus):
        assert degree_genus(AdmissibleCharacter.of(gamma), 3) == (degree, genus)

    def test_hilbert_function_values(self, skew_gamma):
        """Two linear forms vanish on a line; four quadrics on two skew lines"""
        line = AdmissibleCharacter.of(LINE)
        assert hilbert_function(line, 3, 0) == 0
        assert hilbert_function(line, 3, 1) == 2
        assert hilbert_function(skew_gamma, 3, 2) == 4

    def test_hilbert_polynomial(self):
        """P(l) = 4l for the (2, 2) complete intersection"""
        assert hilbert_polynomial(AdmissibleCharacter.of(CI_22), 3) == [Fraction(0), Fraction(4)]
        assert hilbert_polynomial(AdmissibleCharacter.of(LINE), 3) == [Fraction(1), Fraction(1)]

    def test_gamma_from_hilbert_function(self, skew_gamma):
        """The third difference of h0 recovers gamma"""
        recovered = gamma_from_hilbert_function(
            lambda l: hilbert_function(skew_gamma, 3, l), 3, 8
        )
        assert recovered == skew_gamma

    def test_hilbert_function_window_too_small(self, curve_gamma):
        with pytest.raises(InvalidInputError):
            gamma_from_hilbert_function(lambda l: hilbert_function(curve_gamma, 3, l), 3, 5)


class TestResolutionData:
    """Characters from N-type and E-type data"""

    def test_line_E_type(self):
        assert gamma_from_resolution(resolution("line_E"), 3).fn == IntFn(LINE)

    def test_minimal_skew_lines(self, skew_gamma):
        assert gamma_from_N_data(resolution("skew_minimal_N"), 3) == skew_gamma

    def test_curve_from_N_data(self, curve_gamma):
        assert gamma_values(resolution("skew_curve_N")) == curve_gamma.fn

    def test_N_data_kind_checked(self):
        with pytest.raises(ResolutionError):
            gamma_from_N_data(resolution("line_E"), 3)

    def test_core_window_below_tail(self):
        with pytest.raises(ValueError):
            CoreDelta(window=IntFn({5: 1}), tail_rank=1, tail_start=4)

    def test_twists_sorted(self):
        res = ResolutionData(kind=ResolutionKind.E, p=(3, 1), q=(2,))
        assert res.p == (1, 3)


class TestResolutionTransforms:
    """Double links, links and minimization at the twist level"""

    def test_double_link(self):
        """A (8, 1) double link of the minimal skew resolution gives the curve's"""
        assert resolution_double_link(resolution("skew_minimal_N"), 8, 1) == resolution("skew_curve_N")

    def test_double_links_commute_with_models(self, skew_class):
        """Two successive double links agree at the twist level and the model level"""
        checked = 0
        for X, res in double_linked(skew_class):
            for s, h in product(range(skew_class.s0 + X.m, 10), (1, 2)):
                expected = model_gamma(double_link(X, s, h)).fn
                assert gamma_values(resolution_double_link(res, s, h)) == expected, (X.label(), s, h)
                checked += 1
        assert checked

    def test_links_commute_with_models(self, skew_class):
        """Where the residual model exists, the linked resolution carries its character"""
        checked = 0
        for X, res in double_linked(skew_class):
            s0X = skew_class.s0 + X.m
            for s, t in product(range(s0X, s0X + 3), range(s0X, 11)):
                try:
                    Y = link_dual(X, s, t)
                except LinkageError:
                    continue
                assert gamma_values(resolution_link(res, s, t)) == model_gamma(Y).fn, (X.label(), s, t)
                checked += 1
        assert checked

    def test_link_line_to_twisted_cubic(self):
        """A line linked by two quadrics leaves a twisted cubic"""
        cubic = resolution_link(resolution("line_E"), 2, 2)
        assert cubic.kind == ResolutionKind.N
        assert (cubic.p, cubic.q) == ((3, 3), (2, 2, 2))
        assert gamma_values(cubic) == IntFn(TWISTED_CUBIC)

    def test_link_back_and_minimize(self):
        """Linking the cubic back produces a non-minimal resolution of the line"""
        back = resolution_link(resolution_link(resolution("line_E"), 2, 2), 2, 2)
        assert (back.p, back.q) == ((2, 2, 2), (1, 1, 2, 2))
        assert gamma_values(back) == IntFn(LINE)
        assert minimize_resolution(back) == resolution("line_E")

    def test_link_swaps_cores(self):
        linked = resolution_link(resolution("skew_curve_N"), 3, 8)
        source = resolution("skew_curve_N")
        assert linked.kind == ResolutionKind.E
        assert linked.core == source.dual_core
        assert linked.dual_core == source.core
        assert linked.core_twist == 10

    def test_link_needs_dual_core(self):
        res = resolution("skew_curve_N").model_copy(update={"dual_core": None})
        with pytest.raises(ResolutionError):
            resolution_link(res, 3, 8)

    def test_bootstrap(self, skew_gamma):
        """Both cores of the minimal skew resolution from gamma0 and its dual"""
        res = bootstrap_minimal_resolution(skew_gamma, skew_gamma, 2, [4])
        assert res == resolution("skew_minimal_N")


class TestResolutionDomination:
    def test_sharp_comparison(self):
        assert resolution_domination_check([5, 8], [5, 9], 0, 1)
        assert not resolution_domination_check([5, 9], [5, 8], 0, 1)
        assert not resolution_domination_check([5, 8], [5, 9], 1, 0)

    def test_align(self):
        """The minimal skew resolution against the curve's, padded to a common middle"""
        r, s, h1, h2 = align_for_domination(resolution("skew_minimal_N"), resolution("skew_curve_N"))
        assert (r, s, h1, h2) == ([4, 7], [4, 8], 0, 1)
        assert resolution_domination_check(r, s, h1, h2)

    def test_sharp_comparison_agrees_with_model_domination(self, skew_class):
        """The skew lines and the curve one double link above, in every order"""
        minimal = minimal_element(skew_class)
        pairs = [
            (minimal, resolution("skew_minimal_N")),
            (double_link(minimal, 8, 1), resolution("skew_curve_N")),
        ]
        for (X, res_x), (Y, res_y) in product(pairs, repeat=2):
            r, s, h1, h2 = align_for_domination(res_x, res_y)
            assert resolution_domination_check(r, s, h1, h2) == (dominates_model(X, Y) is not None)

    def test_align_needs_N_type(self):
        with pytest.raises(ResolutionError):
            align_for_domination(resolution("line_E"), resolution("skew_curve_N"))
