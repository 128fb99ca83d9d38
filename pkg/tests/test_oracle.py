"""
Brute-force verification engine
"""

import time

import pytest
from pydantic import ValidationError

from config import settings
from models.oracle import ClaimName, ClaimReport, SearchWindow, SubschemeConfig, SubschemeKind
from services.characters import IntFn
from services.oracle import (
    ClaimChecker,
    check_claim,
    enumerate_admissible,
    hilbert_oracle,
    oracle_gamma,
)

SMALL = SearchWindow(lo=0, hi=3, max_abs=2, max_height=2)


def config(kind, **params):
    return SubschemeConfig(kind=kind, **params)


class TestHilbertOracle:
    """Closed-form h0 of fixture subschemes"""

    @pytest.mark.parametrize(
        "cfg,l,expected",
        [
            (config(SubschemeKind.LINE), 1, 2),
            (config(SubschemeKind.LINE), 0, 0),
            (config(SubschemeKind.COMPLETE_INTERSECTION, a=2, b=2), 2, 2),
            (config(SubschemeKind.DISJOINT_LINES, d=2), 2, 4),
            (config(SubschemeKind.DISJOINT_LINES, d=2), 1, 0),
            (config(SubschemeKind.LINES_ON_QUADRIC, d=4), 2, 1),
            (config(SubschemeKind.LINE), -3, 0),
        ],
    )
    def test_values(self, cfg, l, expected):
        assert hilbert_oracle(cfg, l) == expected

    def test_skew_lines_gamma(self, skew_gamma):
        assert oracle_gamma(config(SubschemeKind.DISJOINT_LINES, d=2)) == skew_gamma

    def test_lines_on_quadric_gamma(self, quadric_class):
        """Four lines of one ruling give the quadric class's minimal character"""
        gamma = oracle_gamma(config(SubschemeKind.LINES_ON_QUADRIC, d=4))
        assert gamma.fn == quadric_class.gamma0

    def test_complete_intersection_gamma(self):
        gamma = oracle_gamma(config(SubschemeKind.COMPLETE_INTERSECTION, a=2, b=2))
        assert gamma.fn == IntFn({0: -1, 1: -1, 2: 1, 3: 1})

    def test_parameters_required(self):
        with pytest.raises(ValidationError):
            config(SubschemeKind.COMPLETE_INTERSECTION, a=2)
        with pytest.raises(ValidationError):
            config(SubschemeKind.DISJOINT_LINES)


class TestEnumerateAdmissible:
    def test_window_without_positive_degrees_is_empty(self):
        assert list(enumerate_admissible(SearchWindow(lo=0, hi=0, max_abs=3))) == []
        assert list(enumerate_admissible(SearchWindow(lo=1, hi=4, max_abs=3))) == []

    def test_line_only(self):
        found = list(enumerate_admissible(SearchWindow(lo=0, hi=1, max_abs=1)))
        assert [gamma.fn for gamma in found] == [IntFn({0: -1, 1: 1})]

    def test_two_degrees(self):
        found = {gamma.fn for gamma in enumerate_admissible(SearchWindow(lo=0, hi=2, max_abs=1))}
        assert found == {IntFn({0: -1, 1: 1}), IntFn({0: -1, 2: 1})}

    def test_skew_lines_found(self, skew_gamma):
        found = list(enumerate_admissible(SearchWindow(lo=0, hi=3, max_abs=3)))
        assert skew_gamma in found
        assert all(gamma.fn(0) == -1 for gamma in found)


class TestClaims:
    """Every claim holds on a small window"""

    @pytest.mark.parametrize("claim", list(ClaimName))
    def test_claim_holds(self, claim):
        report = check_claim(claim, SMALL)
        assert report.holds, report.counterexamples
        assert report.instances > 0

    def test_checker_caches_enumeration(self):
        checker = ClaimChecker(SMALL)
        first = checker.admissible()
        assert checker.admissible() is first
        assert checker.cls.name == "two skew lines"

    def test_family_of_small_window(self):
        """Models of the skew class with h <= 2 and theta inside [0, 3]"""
        family = ClaimChecker(SMALL).family()
        assert [(X.h, X.theta) for X in family] == [
            (0, IntFn()),
            (1, IntFn()),
            (1, IntFn({3: 1})),
            (2, IntFn()),
            (2, IntFn({3: 1})),
        ]

    def test_other_class(self, quadric_class):
        report = check_claim(
            ClaimName.DUALITY_INVOLUTION,
            SearchWindow(lo=0, hi=6, max_abs=2, max_height=2),
            quadric_class,
        )
        assert report.holds, report.counterexamples

    def test_report_caps_counterexamples(self, monkeypatch):
        monkeypatch.setattr(settings, "ORACLE_MAX_COUNTEREXAMPLES", 2)
        report = ClaimReport(claim=ClaimName.TRANSITIVITY, window=SMALL)
        for i in range(5):
            report.record({"i": i})
        assert report.counterexample_count == 5
        assert len(report.counterexamples) == 2
        assert not report.holds
        assert report.model_dump(mode="json")["holds"] is False

    def test_empty_window_rejected(self):
        with pytest.raises(ValidationError):
            SearchWindow(lo=3, hi=2)

    def test_eta_criterion_disagreement_is_reported(self, monkeypatch):
        """A clause test that never holds leaves every enumerated character unmatched"""
        monkeypatch.setattr("services.oracle.dominates_at", lambda gamma, sigma, h: False)
        report = check_claim(ClaimName.ETA_BIJECTION, SMALL)
        assert not report.holds
        assert report.counterexamples[0]["eta_criterion"] is True
        assert report.counterexamples[0]["dominates"] is False

    @pytest.mark.slow
    @pytest.mark.parametrize("claim", list(ClaimName))
    def test_claim_holds_on_default_window(self, claim):
        """Each claim finishes within 30 seconds on the default window"""
        started = time.perf_counter()
        report = check_claim(claim)
        elapsed = time.perf_counter() - started
        assert report.holds, report.counterexamples
        assert elapsed < 30, f"{claim.value} took {elapsed:.1f}s"
