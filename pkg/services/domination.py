"""
Domination of admissible characters and its eta/theta witnesses.

gamma <=_h sigma is tested clause by clause, and equivalently through the eta
function eta(l) = sigma(l) - gamma(l-h) + step(l) - step(l-h). theta trades
the block of eta sitting just below s0(gamma)+h for a cleaner normal form.
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Dict, List, Optional, Tuple

from services.characters import (
    AdmissibleCharacter,
    ConnectivityMode,
    IntFn,
    connected_in_degrees,
)
from services.errors import DominationError, InvalidInputError

logger = logging.getLogger(__name__)


def _require_height(h: int) -> None:
    if h < 0:
        raise InvalidInputError(f"Height must be >= 0, got {h}")


def raw_eta(gamma: AdmissibleCharacter, sigma: IntFn, h: int) -> IntFn:
    return sigma - gamma.fn.shift(h) + IntFn.indicator(0, h - 1)


def domination_violation(
    gamma: AdmissibleCharacter, sigma: AdmissibleCharacter, h: int
) -> Optional[Tuple[int, int, str]]:
    """First failing domination clause as (clause, degree, message), or None"""
    _require_height(h)
    ceiling = gamma.s0 + h
    if not gamma.s0 <= sigma.s0 <= ceiling:
        return (
            1,
            sigma.s0,
            f"domination clause 1 fails: s0(sigma)={sigma.s0} not in [{gamma.s0}, {ceiling}]",
        )
    for l in range(sigma.s0, ceiling):
        if sigma(l) < 0:
            return 2, l, f"domination clause 2 fails at l={l}: sigma({l})={sigma(l)} < 0"
    top = max(sigma.fn.max_degree() or 0, (gamma.fn.max_degree() or 0) + h)
    for l in range(ceiling, top + 1):
        if sigma(l) < gamma(l - h):
            return (
                3,
                l,
                f"domination clause 3 fails at l={l}: "
                f"sigma({l})={sigma(l)} < gamma({l - h})={gamma(l - h)}",
            )
    return None


def dominates_at(gamma: AdmissibleCharacter, sigma: AdmissibleCharacter, h: int) -> bool:
    return domination_violation(gamma, sigma, h) is None


@dataclass(frozen=True)
class EtaOutcome:
    success: bool
    eta: IntFn
    clause: Optional[str] = None
    degree: Optional[int] = None
    message: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"success": self.success, "eta": self.eta.to_json()}
        if not self.success:
            payload.update(
                {"clause": self.clause, "degree": self.degree, "message": self.message}
            )
        return payload


def _eta_problem(eta: IntFn, s0: int, h: int) -> Optional[Tuple[str, Optional[int], str]]:
    negative = eta.first_negative()
    if negative is not None:
        return "nonnegative", negative, f"eta({negative})={eta(negative)} < 0"
    bound = s0 + h
    if not connected_in_degrees(eta, ConnectivityMode.BELOW, bound):
        low = eta.min_degree()
        gap = next(l for l in range(low, bound) if eta(l) == 0)
        return "connected", gap, f"eta is not connected in degrees < {bound}, gap at l={gap}"
    if eta.total() != h:
        return "sum", None, f"eta sums to {eta.total()}, expected {h}"
    return None


def eta_of(gamma: AdmissibleCharacter, sigma: AdmissibleCharacter, h: int) -> EtaOutcome:
    _require_height(h)
    eta = raw_eta(gamma, sigma.fn, h)
    problem = _eta_problem(eta, gamma.s0, h)
    if problem is None:
        return EtaOutcome(True, eta)
    clause, degree, message = problem
    return EtaOutcome(False, eta, clause, degree, message)


def sigma_from_eta(gamma: AdmissibleCharacter, h: int, eta: IntFn) -> AdmissibleCharacter:
    _require_height(h)
    problem = _eta_problem(eta, gamma.s0, h)
    if problem is not None:
        clause, degree, message = problem
        raise DominationError(message, clause=clause, degree=degree)
    sigma = eta + gamma.fn.shift(h) - IntFn.indicator(0, h - 1)
    return AdmissibleCharacter.of(sigma)


def theta_from_eta(gamma: AdmissibleCharacter, h: int, eta: IntFn, sigma_s0: int) -> IntFn:
    return eta - IntFn.step_difference(sigma_s0, gamma.s0 + h)


def theta_of(gamma: AdmissibleCharacter, sigma: AdmissibleCharacter, h: int) -> IntFn:
    outcome = eta_of(gamma, sigma, h)
    if not outcome.success:
        raise DominationError(
            f"sigma does not dominate gamma at height {h}: {outcome.message}",
            clause=outcome.clause,
            degree=outcome.degree,
        )
    return theta_from_eta(gamma, h, outcome.eta, sigma.s0)


def validate_theta(gamma: AdmissibleCharacter, h: int, theta: IntFn) -> int:
    """Check theta is a valid theta for height h and return m = sum of theta"""
    _require_height(h)
    negative = theta.first_negative()
    if negative is not None:
        raise DominationError(
            f"theta({negative})={theta(negative)} < 0", clause="nonnegative", degree=negative
        )
    m = theta.total()
    if m > h:
        raise DominationError(f"theta sums to {m} > height {h}", clause="sum")
    low = theta.min_degree()
    if low is not None and low < gamma.s0 + m:
        raise DominationError(
            f"theta({low})={theta(low)} is nonzero below s0+m={gamma.s0 + m}",
            clause="support",
            degree=low,
        )
    return m


def eta_from_theta(gamma: AdmissibleCharacter, h: int, theta: IntFn) -> IntFn:
    m = validate_theta(gamma, h, theta)
    return theta + IntFn.step_difference(gamma.s0 + m, gamma.s0 + h)


@dataclass(frozen=True)
class DominationWitness:
    gamma: AdmissibleCharacter
    sigma: AdmissibleCharacter
    h: int
    eta: IntFn
    theta: IntFn

    @property
    def m(self) -> int:
        return self.theta.total()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": self.gamma.fn.to_json(),
            "sigma": self.sigma.fn.to_json(),
            "h": self.h,
            "m": self.m,
            "eta": self.eta.to_json(),
            "theta": self.theta.to_json(),
        }


def witness(gamma: AdmissibleCharacter, sigma: AdmissibleCharacter, h: int) -> DominationWitness:
    theta = theta_of(gamma, sigma, h)
    return DominationWitness(gamma, sigma, h, raw_eta(gamma, sigma.fn, h), theta)


def _witnessed_eta(gamma, other, height, name) -> IntFn:
    outcome = eta_of(gamma, other, height)
    if not outcome.success:
        raise DominationError(
            f"{name} does not dominate gamma at height {height}: {outcome.message}",
            clause=outcome.clause,
            degree=outcome.degree,
        )
    return outcome.eta


def relative_eta(
    gamma: AdmissibleCharacter,
    tau: AdmissibleCharacter,
    sigma: AdmissibleCharacter,
    h: int,
    k: int,
) -> Optional[IntFn]:
    """eta of tau <=_{k-h} sigma, or None when sigma does not dominate tau"""
    eta_tau = _witnessed_eta(gamma, tau, h, "tau")
    eta_sigma = _witnessed_eta(gamma, sigma, k, "sigma")
    eta = eta_sigma - eta_tau.shift(k - h)
    if eta.first_negative() is not None:
        return None
    return eta


def relative_theta_from(theta_tau: IntFn, theta_sigma: IntFn, h: int, k: int) -> Optional[IntFn]:
    theta = theta_sigma - theta_tau.shift(k - h)
    if theta.first_negative() is not None or theta.total() > k - h:
        return None
    return theta


def relative_theta(
    gamma: AdmissibleCharacter,
    tau: AdmissibleCharacter,
    sigma: AdmissibleCharacter,
    h: int,
    k: int,
) -> Optional[IntFn]:
    """theta of tau <=_{k-h} sigma, or None when sigma does not dominate tau"""
    _witnessed_eta(gamma, tau, h, "tau")
    _witnessed_eta(gamma, sigma, k, "sigma")
    return relative_theta_from(theta_of(gamma, tau, h), theta_of(gamma, sigma, k), h, k)


@dataclass(frozen=True)
class BMInvariant:
    """
    b together with g_2 <= ... <= g_r, stored as a tuple starting at g_2.

    Convention: r = m + 1 and b = h - m - 1 where m = sum of theta, and
    theta(l) = #{k : g_k + r - k = l}.
    """

    b: int
    g: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.g) + 1

    def to_dict(self) -> Dict[str, Any]:
        return {"b": self.b, "g": list(self.g)}


def to_bm(theta: IntFn, h: int) -> BMInvariant:
    """
    Lexicographically greatest nondecreasing g realising theta.

    Units of theta are handed out from the top; a unit is skipped when taking
    it would leave the remaining units unable to continue a sorted sequence.
    """
    negative = theta.first_negative()
    if negative is not None:
        raise InvalidInputError(f"theta({negative})={theta(negative)} < 0")
    m = theta.total()
    b = h - m - 1
    if b < 0:
        raise InvalidInputError(f"b = h - m - 1 = {b} < 0 for h={h}, m={m}")

    remaining = sorted(l for l, v in theta.items() for _ in range(v))
    r = m + 1
    g: List[int] = []
    previous = None
    for k in range(2, r + 1):
        later = r - k
        for unit in sorted(set(remaining), reverse=True):
            value = unit - later
            if previous is not None and value < previous:
                continue
            rest = list(remaining)
            rest.remove(unit)
            if rest and rest[0] - (later - 1) < value:
                continue
            break
        remaining.remove(unit)
        g.append(value)
        previous = value
    return BMInvariant(b=b, g=tuple(g))


def from_bm(invariant: BMInvariant) -> Tuple[IntFn, int]:
    if invariant.b < 0:
        raise InvalidInputError(f"b must be >= 0, got {invariant.b}")
    g = list(invariant.g)
    if any(x > y for x, y in zip(g, g[1:])):
        raise InvalidInputError(f"g must be nondecreasing, got {g}")
    r = invariant.r
    theta = IntFn((g_k + r - k, 1) for k, g_k in enumerate(g, start=2))
    m = r - 1
    return theta, invariant.b + m + 1


def _check_window(window: Tuple[int, int]) -> Tuple[int, int]:
    lo, hi = window
    if lo > hi:
        raise InvalidInputError(f"Empty window [{lo}, {hi}]")
    return lo, hi


def enumerate_dominating(
    gamma: AdmissibleCharacter, h: int, window: Tuple[int, int]
) -> List[DominationWitness]:
    """Every sigma >=_h gamma whose eta is supported in the window"""
    _require_height(h)
    lo, hi = _check_window(window)
    bound = gamma.s0 + h
    results = []
    for degrees in combinations_with_replacement(range(lo, hi + 1), h):
        eta = IntFn((l, 1) for l in degrees)
        if not connected_in_degrees(eta, ConnectivityMode.BELOW, bound):
            continue
        sigma = sigma_from_eta(gamma, h, eta)
        theta = theta_from_eta(gamma, h, eta, sigma.s0)
        results.append(DominationWitness(gamma, sigma, h, eta, theta))
    logger.debug(f"{len(results)} characters dominate {gamma} at height {h} in [{lo}, {hi}]")
    return results


def enumerate_thetas(
    gamma: AdmissibleCharacter, h: int, window: Tuple[int, int]
) -> List[IntFn]:
    """Every valid theta for height h with support in the window, ordered by (m, entries)"""
    _require_height(h)
    lo, hi = _check_window(window)
    thetas = []
    for m in range(h + 1):
        start = max(lo, gamma.s0 + m)
        for degrees in combinations_with_replacement(range(start, hi + 1), m):
            thetas.append(IntFn((l, 1) for l in degrees))
    return thetas
