"""
Brute-force verification engine.

Admissible characters and subscheme models are enumerated exhaustively inside
a SearchWindow and every claim is evaluated on each instance. Counterexamples
are collected as JSON-ready witnesses in a ClaimReport.
"""

import logging
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from models.linkage import IntegralVariant, LinkageClassDescriptor, SubschemeModel
from models.oracle import ClaimName, ClaimReport, SearchWindow, SubschemeConfig, SubschemeKind
from services.characters import AdmissibleCharacter, IntFn, classify
from services.domination import (
    DominationWitness,
    dominates_at,
    enumerate_dominating,
    enumerate_thetas,
    eta_from_theta,
    eta_of,
    relative_eta,
    relative_theta,
    relative_theta_from,
    sigma_from_eta,
    theta_of,
)
from services.errors import InvalidInputError, LiaisonError, LinkageError
from services.hilbert import binomial, degree_of, gamma_from_hilbert_function
from services.linkage import (
    dominates_model,
    integral_chain,
    integral_necessary,
    invariants,
    link_dual,
    lr_decompose,
    model_eta,
    model_gamma,
    t1_bound,
    t1_witness_chain,
)
from services.poset import model_family
from utils.file_handler import load_fixture_class

logger = logging.getLogger(__name__)


def hilbert_oracle(config: SubschemeConfig, l: int) -> int:
    """
    Closed-form h0 of the ideal sheaf in P^3 twisted by l.

    line: C(l+3,3) - (l+1)
    complete intersection (a, b): Koszul count C(l-a+3,3) + C(l-b+3,3) - C(l-a-b+3,3)
    d disjoint general lines: max(0, C(l+3,3) - d(l+1))
    d lines of one ruling of a smooth quadric: C(l+1,3) + max(0, l-d+1)(l+1)
    """
    if l < 0:
        return 0
    kind = config.kind
    if kind == SubschemeKind.LINE:
        return binomial(l + 3, 3) - (l + 1)
    if kind == SubschemeKind.COMPLETE_INTERSECTION:
        a, b = config.a, config.b
        return binomial(l - a + 3, 3) + binomial(l - b + 3, 3) - binomial(l - a - b + 3, 3)
    if kind == SubschemeKind.DISJOINT_LINES:
        return max(0, binomial(l + 3, 3) - config.d * (l + 1))
    if kind == SubschemeKind.LINES_ON_QUADRIC:
        return binomial(l + 1, 3) + max(0, l - config.d + 1) * (l + 1)
    raise InvalidInputError(f"No closed form for subscheme kind {kind!r}")


def oracle_gamma(config: SubschemeConfig, upto: int = 12) -> AdmissibleCharacter:
    """gamma-character of a fixture subscheme, read off its h0 values"""
    return gamma_from_hilbert_function(lambda l: hilbert_oracle(config, l), 3, upto)


def enumerate_admissible(w: SearchWindow) -> Iterator[AdmissibleCharacter]:
    """
    Every admissible character supported in [lo, hi] with values bounded by max_abs.

    Characters come out in lexicographic order of their value vectors on
    degrees 1..hi, each coordinate running from -max_abs to max_abs.
    """
    if w.lo > 0 or w.hi < 1:
        return
    degrees = list(range(1, w.hi + 1))
    values = range(-w.max_abs, w.max_abs + 1)
    for vector in product(values, repeat=len(degrees)):
        if sum(vector) != 1:
            continue
        fn = IntFn(zip(degrees, vector)) + IntFn({0: -1})
        verdict = classify(fn)
        if verdict.is_admissible:
            yield AdmissibleCharacter(fn, verdict.s0, verdict.s1)


def _witness(**fields) -> Dict:
    return {
        key: value.to_json() if isinstance(value, IntFn) else value
        for key, value in fields.items()
    }


class ClaimChecker:
    """
    Evaluates claims over one window.

    Admissible characters and dominating sets are cached, so checking
    several claims with the same checker reuses the enumeration.
    """

    def __init__(self, window: SearchWindow, cls: Optional[LinkageClassDescriptor] = None):
        self.window = window
        self._cls = cls
        self._admissible: Optional[List[AdmissibleCharacter]] = None
        self._members: Optional[set] = None
        self._dominating: Dict[Tuple[IntFn, int], List[DominationWitness]] = {}
        self._family: Optional[List[SubschemeModel]] = None

    @property
    def cls(self) -> LinkageClassDescriptor:
        if self._cls is None:
            self._cls = load_fixture_class("two_skew_lines")
        return self._cls

    def admissible(self) -> List[AdmissibleCharacter]:
        if self._admissible is None:
            self._admissible = list(enumerate_admissible(self.window))
            self._members = {gamma.fn for gamma in self._admissible}
            logger.info(f"{len(self._admissible)} admissible characters in window {self.window}")
        return self._admissible

    def _eta_window(self, h: int) -> Tuple[int, int]:
        return (0, self.window.hi + h)

    def dominating(self, gamma: AdmissibleCharacter, h: int) -> List[DominationWitness]:
        """Dominating characters at height h that stay inside the window"""
        key = (gamma.fn, h)
        if key not in self._dominating:
            self.admissible()
            self._dominating[key] = [
                wit
                for wit in enumerate_dominating(gamma, h, self._eta_window(h))
                if wit.sigma.fn in self._members
            ]
        return self._dominating[key]

    def family(self) -> List[SubschemeModel]:
        """Models of the class with h <= max_height and theta inside the window"""
        if self._family is None:
            self._family = model_family(self.cls, self.window.max_height, self.window.degrees)
            logger.info(f"{len(self._family)} models in the family of {self.cls.name}")
        return self._family

    def _heights(self) -> range:
        return range(self.window.max_height + 1)

    def run(self, claim: ClaimName) -> ClaimReport:
        claim = ClaimName(claim)
        report = ClaimReport(claim=claim, window=self.window)
        handlers: Dict[ClaimName, Callable[[ClaimReport], None]] = {
            ClaimName.TRANSITIVITY: self._transitivity,
            ClaimName.ETA_BIJECTION: self._eta_bijection,
            ClaimName.THETA_BIJECTION: self._theta_bijection,
            ClaimName.RELATIVE_ETA: self._relative_eta,
            ClaimName.RELATIVE_THETA: self._relative_theta,
            ClaimName.INVARIANT_FORMULAS: self._invariant_formulas,
            ClaimName.DUALITY_INVOLUTION: self._duality_involution,
            ClaimName.T1_SHARPNESS: self._t1_sharpness,
            ClaimName.DECOMPOSE_REPLAY: self._decompose_replay,
        }
        handlers[claim](report)
        logger.info(
            f"claim {claim.value}: {report.instances} instances, {report.skipped} skipped, "
            f"{report.counterexample_count} counterexamples"
        )
        return report

    def _transitivity(self, report: ClaimReport) -> None:
        for gamma in self.admissible():
            for h in self._heights():
                for first in self.dominating(gamma, h):
                    for k in self._heights():
                        for second in self.dominating(first.sigma, k):
                            report.instances += 1
                            if not dominates_at(gamma, second.sigma, h + k):
                                report.record(
                                    _witness(
                                        gamma=gamma.fn, sigma=first.sigma.fn,
                                        tau=second.sigma.fn, h=h, k=k,
                                    )
                                )

    def _by_s0(self) -> Dict[int, List[AdmissibleCharacter]]:
        buckets: Dict[int, List[AdmissibleCharacter]] = {}
        for sigma in self.admissible():
            buckets.setdefault(sigma.s0, []).append(sigma)
        return buckets

    def _eta_bijection(self, report: ClaimReport) -> None:
        """
        Direct domination and the eta criterion select the same characters.

        The eta side is the enumeration of valid eta inside the window; the
        direct side runs the clause test on every character whose s0 lies in
        [s0(gamma), s0(gamma) + h], the only place clause 1 allows.
        """
        by_s0 = self._by_s0()
        for gamma in self.admissible():
            for h in self._heights():
                enumerated = set()
                for wit in self.dominating(gamma, h):
                    report.instances += 1
                    outcome = eta_of(gamma, wit.sigma, h)
                    if not outcome.success or outcome.eta != wit.eta:
                        report.record(
                            _witness(gamma=gamma.fn, h=h, eta=wit.eta, sigma=wit.sigma.fn)
                        )
                    enumerated.add(wit.sigma.fn)
                direct = set()
                for s0 in range(gamma.s0, gamma.s0 + h + 1):
                    for sigma in by_s0.get(s0, []):
                        report.instances += 1
                        if dominates_at(gamma, sigma, h):
                            direct.add(sigma.fn)
                for sigma in sorted(direct ^ enumerated, key=IntFn.items):
                    report.record(
                        _witness(
                            gamma=gamma.fn, sigma=sigma, h=h,
                            dominates=sigma in direct, eta_criterion=sigma in enumerated,
                        )
                    )

    def _theta_bijection(self, report: ClaimReport) -> None:
        for gamma in self.admissible():
            for h in self._heights():
                for wit in self.dominating(gamma, h):
                    report.instances += 1
                    theta = theta_of(gamma, wit.sigma, h)
                    if eta_from_theta(gamma, h, theta) != wit.eta:
                        report.record(
                            _witness(gamma=gamma.fn, h=h, sigma=wit.sigma.fn, theta=theta)
                        )
                for theta in enumerate_thetas(gamma, h, self.window.degrees):
                    report.instances += 1
                    sigma = sigma_from_eta(gamma, h, eta_from_theta(gamma, h, theta))
                    if theta_of(gamma, sigma, h) != theta:
                        report.record(
                            _witness(gamma=gamma.fn, h=h, theta=theta, sigma=sigma.fn)
                        )

    def _relative_pairs(self) -> Iterator[Tuple]:
        for gamma in self.admissible():
            for h in self._heights():
                for lower in self.dominating(gamma, h):
                    for k in self._heights():
                        for upper in self.dominating(gamma, k):
                            yield gamma, lower.sigma, upper.sigma, h, k

    def _relative_eta(self, report: ClaimReport) -> None:
        for gamma, tau, sigma, h, k in self._relative_pairs():
            report.instances += 1
            eta = relative_eta(gamma, tau, sigma, h, k)
            direct = k >= h and dominates_at(tau, sigma, k - h)
            if (eta is not None) != direct or (
                direct and eta != eta_of(tau, sigma, k - h).eta
            ):
                report.record(
                    _witness(
                        gamma=gamma.fn, tau=tau.fn, sigma=sigma.fn, h=h, k=k,
                        dominates=direct, relative_eta=eta,
                    )
                )

    def _relative_theta(self, report: ClaimReport) -> None:
        for gamma, tau, sigma, h, k in self._relative_pairs():
            report.instances += 1
            theta = relative_theta(gamma, tau, sigma, h, k)
            direct = k >= h and dominates_at(tau, sigma, k - h)
            if (theta is not None) != direct or (
                direct and theta != theta_of(tau, sigma, k - h)
            ):
                report.record(
                    _witness(
                        gamma=gamma.fn, tau=tau.fn, sigma=sigma.fn, h=h, k=k,
                        dominates=direct, relative_theta=theta,
                    )
                )

    def _invariant_formulas(self, report: ClaimReport) -> None:
        for X in self.family():
            report.instances += 1
            derived = invariants(X)
            gamma = model_gamma(X)
            agrees = (
                derived.s0X == gamma.s0
                and derived.s1X == gamma.s1
                and derived.s1X <= t1_bound(X)
                and derived.degree == degree_of(gamma)
            )
            if not agrees:
                report.record(
                    _witness(
                        h=X.h, theta=X.theta, s0X=derived.s0X, s1X=derived.s1X,
                        gamma_s0=gamma.s0, gamma_s1=gamma.s1, t1_bound=t1_bound(X),
                    )
                )

    def _link_pairs(self, X: SubschemeModel) -> Iterator[Tuple[int, int]]:
        s0X = X.cls.s0 + X.m
        bound = t1_bound(X)
        for s in range(s0X, s0X + 3):
            start = max(s, bound)
            for t in range(start, start + 3):
                yield s, t

    def _duality_involution(self, report: ClaimReport) -> None:
        cls = self.cls
        for X in self.family():
            degree_X = invariants(X).degree
            for s, t in self._link_pairs(X):
                try:
                    Y = link_dual(X, s, t)
                except LinkageError:
                    report.skipped += 1
                    continue
                report.instances += 1
                identity = (
                    model_eta(X) - model_eta(Y).reflect(s + t - 1)
                    == -(
                        IntFn.step_difference(cls.s0 + X.h, s)
                        + IntFn.step_difference(cls.t1 + X.h, t)
                    )
                )
                heights = X.h + Y.h == s + t - cls.s0 - cls.t1
                degrees = degree_X + invariants(Y).degree == s * t
                try:
                    back = link_dual(Y, s, t).same_as(X)
                except LiaisonError:
                    back = False
                if not (identity and heights and degrees and back):
                    report.record(
                        _witness(
                            h=X.h, theta=X.theta, s=s, t=t, h_Y=Y.h, theta_Y=Y.theta,
                            pointwise=identity, height_identity=heights,
                            degree_identity=degrees, involution=back,
                        )
                    )

    def _t1_sharpness(self, report: ClaimReport) -> None:
        for X in self.family():
            report.instances += 1
            try:
                chain = t1_witness_chain(X)
                sharp = chain.bound == t1_bound(X) and invariants(X).s1X <= chain.bound
            except LiaisonError as e:
                logger.debug(f"t1 chain failed for {X.label()}: {e.detail}")
                sharp = False
            if not sharp:
                report.record(_witness(h=X.h, theta=X.theta, t1_bound=t1_bound(X)))

    def _decompose_replay(self, report: ClaimReport) -> None:
        family = self.family()
        strict = {
            X.key(): integral_necessary(X, IntegralVariant.STRICT_S0).passed for X in family
        }
        for X in family:
            for Y in family:
                # cheap prefilter on the stored thetas
                if relative_theta_from(X.theta, Y.theta, X.h, Y.h) is None:
                    continue
                if dominates_model(X, Y) is None:
                    report.record(
                        _witness(h=X.h, theta=X.theta, target_h=Y.h, target_theta=Y.theta,
                                 failure="theta criterion without domination")
                    )
                    continue
                report.instances += 1
                try:
                    lr_decompose(X, Y)
                except LiaisonError as e:
                    report.record(
                        _witness(h=X.h, theta=X.theta, target_h=Y.h, target_theta=Y.theta,
                                 failure=f"lr: {e.detail}")
                    )
                if not (strict[X.key()] and strict[Y.key()]):
                    continue
                try:
                    integral_chain(X, Y, IntegralVariant.STRICT_S0)
                except LiaisonError as e:
                    report.record(
                        _witness(h=X.h, theta=X.theta, target_h=Y.h, target_theta=Y.theta,
                                 failure=f"integral: {e.detail}")
                    )


def check_claim(
    claim: ClaimName,
    w: Optional[SearchWindow] = None,
    cls: Optional[LinkageClassDescriptor] = None,
) -> ClaimReport:
    """Exhaustively evaluate one claim; counterexamples are data, never errors"""
    return ClaimChecker(w or SearchWindow(), cls).run(claim)
