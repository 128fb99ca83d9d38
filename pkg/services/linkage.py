"""
Linkage class calculus on (class, h, theta) models.

Every operation here works on the numeric model of a deformation class:
invariants, double links, domination, decompositions into double links,
the linkage duality and the t1 and integrality tests.
"""

import logging
from typing import List, Optional, Tuple

from pydantic import ValidationError

from config import settings
from models.linkage import (
    DerivedInvariants,
    DoubleLinkStep,
    IntegralVariant,
    IntegralVerdict,
    LinkageClassDescriptor,
    LinkKind,
    SubschemeModel,
    T1Witness,
)
from services.characters import (
    AdmissibleCharacter,
    IntFn,
    bounds,
    connected_about,
    is_connected,
)
from services.domination import (
    enumerate_thetas,
    eta_from_theta,
    relative_eta,
    relative_theta,
    sigma_from_eta,
    theta_from_eta,
)
from services.errors import ChainError, LinkageError, PreconditionError
from services.hilbert import degree_of

logger = logging.getLogger(__name__)


def minimal_element(cls: LinkageClassDescriptor) -> SubschemeModel:
    return SubschemeModel(cls=cls, h=0, theta=IntFn())


def model_eta(X: SubschemeModel) -> IntFn:
    return eta_from_theta(X.cls.gamma, X.h, X.theta)


def model_gamma(X: SubschemeModel) -> AdmissibleCharacter:
    return sigma_from_eta(X.cls.gamma, X.h, model_eta(X))


def model_from_eta(cls: LinkageClassDescriptor, h: int, eta: IntFn) -> SubschemeModel:
    sigma = sigma_from_eta(cls.gamma, h, eta)
    theta = theta_from_eta(cls.gamma, h, eta, sigma.s0)
    return SubschemeModel(cls=cls, h=h, theta=theta)


def invariants(X: SubschemeModel) -> DerivedInvariants:
    cls = X.cls
    eta = model_eta(X)
    gamma = sigma_from_eta(cls.gamma, X.h, eta)
    theta_a = bounds(X.theta)[0]
    eta_o = bounds(eta)[1]
    s1X = cls.s1 + X.h if not X.theta else min(cls.s1 + X.h, int(theta_a))
    eX = cls.e + X.h if not eta else max(cls.e + X.h, int(eta_o) - cls.n)
    return DerivedInvariants(
        s0X=cls.s0 + X.m,
        s1X=s1X,
        eX=eX,
        degree=degree_of(gamma),
        gammaX=gamma.fn,
        etaX=eta,
    )


def double_link(
    X: SubschemeModel, s: int, h: int, kind: LinkKind = LinkKind.ELEMENTARY
) -> SubschemeModel:
    """Double link of type (s, h): adds step(l-s) - step(l-s-h) to the shifted eta"""
    if h < 0:
        raise LinkageError(f"double link height must be >= 0, got {h}", clause="height")
    s0X = X.cls.s0 + X.m
    if s < s0X:
        raise LinkageError(
            f"double link degree s={s} is below s0X={s0X}", clause="degree"
        )
    eta = model_eta(X).shift(h) + IntFn.indicator(s, s + h - 1)
    result = model_from_eta(X.cls, X.h + h, eta)
    logger.debug(f"{LinkKind(kind).value} double link ({s},{h}): {X.label()} -> {result.label()}")
    return result


def replay(X: SubschemeModel, steps: List[DoubleLinkStep]) -> SubschemeModel:
    for step in steps:
        X = double_link(X, step.s, step.h, step.kind)
    return X


def _require_same_class(X: SubschemeModel, Y: SubschemeModel) -> None:
    if not X.cls.same_class(Y.cls):
        raise LinkageError("models belong to different linkage classes", clause="class")


def dominates_model(X: SubschemeModel, Y: SubschemeModel) -> Optional[int]:
    """Height h with X <=_h Y, or None"""
    _require_same_class(X, Y)
    h = Y.h - X.h
    if h < 0:
        return None
    gamma = X.cls.gamma
    theta = relative_theta(gamma, model_gamma(X), model_gamma(Y), X.h, Y.h)
    return h if theta is not None else None


def _relative_eta(X: SubschemeModel, Y: SubschemeModel) -> IntFn:
    eta = relative_eta(X.cls.gamma, model_gamma(X), model_gamma(Y), X.h, Y.h)
    if eta is None:
        raise LinkageError(f"{Y.label()} does not dominate {X.label()}", clause="domination")
    return eta


def _check_replay(result: SubschemeModel, target: SubschemeModel, what: str) -> None:
    if not result.same_as(target):
        raise ChainError(f"{what} replays to {result.label()}, expected {target.label()}")


def lr_decompose(X: SubschemeModel, target: SubschemeModel) -> List[DoubleLinkStep]:
    """Basic double links of height one leading from X to target"""
    h = dominates_model(X, target)
    if h is None:
        raise LinkageError(
            f"{target.label()} does not dominate {X.label()}", clause="domination"
        )
    steps = []
    current = X
    for _ in range(h):
        eta = _relative_eta(current, target)
        s = int(bounds(eta)[1]) - (target.h - current.h) + 1
        step = DoubleLinkStep(s=s, h=1, kind=LinkKind.BASIC)
        current = double_link(current, s, 1, LinkKind.BASIC)
        steps.append(step)
    _check_replay(current, target, "basic double link decomposition")
    logger.info(f"decomposed {X.label()} -> {target.label()} into {len(steps)} basic links")
    return steps


def t1_bound(X: SubschemeModel) -> int:
    cls = X.cls
    theta_o = bounds(X.theta)[1]
    if theta_o < cls.t1 + X.h - 1:
        return cls.t1 + X.h
    return max(l for l in X.theta.support() if X.theta(l - 1) == 0)


def link_dual(X: SubschemeModel, s: int, t: int) -> SubschemeModel:
    """
    Residual of X in a complete intersection of degrees (s, t), in the dual class.

    eta_Y(s+t-1-l) = eta_X(l) - step(l-s) - step(l-t) + step(l-s0-h) + step(l-t1-h)
    """
    cls = X.cls
    dual = cls.dual_class()
    s0X = cls.s0 + X.m
    if min(s, t) < s0X:
        raise LinkageError(f"min(s,t)={min(s, t)} < s0X={s0X}", clause="min-degree")
    bound = t1_bound(X)
    if max(s, t) < bound:
        raise LinkageError(f"max(s,t)={max(s, t)} < t1 bound {bound}", clause="max-degree")
    h_Y = s + t - cls.s0 - cls.t1 - X.h
    if h_Y < 0:
        raise LinkageError(
            f"residual height s+t-s0-t1-h = {h_Y} is negative", clause="height"
        )
    shifted = (
        model_eta(X)
        + IntFn.step_difference(cls.s0 + X.h, s)
        + IntFn.step_difference(cls.t1 + X.h, t)
    )
    eta_Y = shifted.reflect(s + t - 1)
    try:
        Y = model_from_eta(dual, h_Y, eta_Y)
    except (PreconditionError, ValidationError) as e:
        raise LinkageError(
            f"residual eta {eta_Y} is not realizable at height {h_Y}: {getattr(e, 'detail', e)}",
            clause="residual",
        )
    logger.info(f"linked {X.label()} by ({s},{t}) to {Y.label()}")
    return Y


def link_minimal_ci(X: SubschemeModel, t: Optional[int] = None) -> SubschemeModel:
    """
    Link X by the complete intersection of degrees (s0X, t).

    t defaults to the t1 bound; for theta != 0 it has to be theta_a and theta
    has to be connected.
    """
    cls = X.cls
    s = cls.s0 + X.m
    bound = t1_bound(X)
    t = bound if t is None else t
    if t < bound:
        raise LinkageError(f"t={t} is below the t1 bound {bound}", clause="t1")
    theta_Y = IntFn()
    if X.theta:
        if not is_connected(X.theta):
            raise LinkageError(f"theta {X.theta} is not connected", clause="connected")
        theta_a, theta_o = (int(v) for v in bounds(X.theta))
        if t != theta_a:
            raise LinkageError(
                f"t={t} differs from theta_a={theta_a}", clause="theta_a"
            )
        theta_Y = (X.theta - IntFn.indicator(theta_a, theta_o)).reflect(s + t - 1)
    h_Y = s + t - cls.s0 - cls.t1 - X.h
    try:
        return SubschemeModel(cls=cls.dual_class(), h=h_Y, theta=theta_Y)
    except ValidationError as e:
        raise LinkageError(
            f"dual theta {theta_Y} is not valid at height {h_Y}: {e.errors()[0]['msg']}",
            clause="residual",
        )


def t1_witness_chain(X: SubschemeModel) -> T1Witness:
    """
    Elementary double links from a minimal element to X's deformation class.

    The rightmost block [r, theta_o] of theta is peeled off as a link of type
    (r, w) and the rest is shifted left by w, until theta vanishes; the
    remaining height is a single (s0, h') link.
    """
    cls = X.cls
    steps: List[DoubleLinkStep] = []
    theta, h = X.theta, X.h
    while theta:
        if len(steps) >= settings.CHAIN_MAX_STEPS:
            raise ChainError(f"t1 chain exceeded {settings.CHAIN_MAX_STEPS} steps")
        theta_o = theta.max_degree()
        r = max(l for l in theta.support() if theta(l - 1) == 0)
        w = theta_o - r + 1
        steps.append(DoubleLinkStep(s=r, h=w, kind=LinkKind.ELEMENTARY))
        theta = theta.shift(-w) - IntFn.indicator(r - w, r - 1)
        h -= w
    steps.reverse()
    witness = T1Witness(
        bound=t1_bound(X), base_height=h, base_link=(cls.s0, cls.t1 + h), steps=steps
    )
    _check_replay(replay(minimal_element(cls), witness.chain), X, "t1 witness chain")
    return witness


def s1_t1_deformable(X: SubschemeModel) -> bool:
    cls = X.cls
    return connected_about(X.theta, cls.s1 + X.h, cls.t1 + X.h - 1)


def minimal_M(cls: LinkageClassDescriptor) -> SubschemeModel:
    """Least model whose deformation class allows s1 = t1"""
    h = cls.t1 - cls.s1
    return model_from_eta(cls, h, IntFn.indicator(cls.t1, 2 * cls.t1 - cls.s1 - 1))


def minimal_gap(cls: LinkageClassDescriptor) -> int:
    """s0 - e - n - 1"""
    return cls.s0 - cls.e - cls.n - 1


def unique_minimal(cls: LinkageClassDescriptor) -> bool:
    return minimal_gap(cls) > 0


def contains_minimal(X: SubschemeModel) -> bool:
    cls = X.cls
    return cls.s0 + X.m > cls.e + cls.n + 1 + X.h


def integral_necessary(
    X: SubschemeModel, variant: IntegralVariant = IntegralVariant.STRICT_S0
) -> IntegralVerdict:
    """Numeric necessary conditions for an integral representative"""
    variant = IntegralVariant(variant)
    cls = X.cls
    if X.h == 0:
        return IntegralVerdict(
            passed=True,
            variant=variant,
            notes=["minimal element: the conditions only constrain non-minimal models"],
        )

    failures = []
    top = cls.t1 + X.h - 1
    if variant == IntegralVariant.STRICT_S0:
        low = cls.s0 + X.h
        if not connected_about(X.theta, low, top):
            failures.append(f"theta {X.theta} is not connected about [{low}, {top}]")
    else:
        low = cls.s1 + X.h
        if not connected_about(X.theta, low, top):
            failures.append(f"theta {X.theta} is not connected about [{low}, {top}]")
        if X.theta:
            theta_a = int(bounds(X.theta)[0])
            if theta_a > cls.s0 + X.h:
                failures.append(f"theta_a={theta_a} > s0+h={cls.s0 + X.h}")

    s0X = cls.s0 + X.m
    ceiling = cls.e + cls.n + 1 + X.h
    if s0X > ceiling:
        failures.append(f"s0X={s0X} > e+n+1+h={ceiling}")
    return IntegralVerdict(passed=not failures, variant=variant, failures=failures)


def integral_chain(
    X: SubschemeModel,
    Y: SubschemeModel,
    variant: Optional[IntegralVariant] = IntegralVariant.STRICT_S0,
) -> List[DoubleLinkStep]:
    """
    Elementary double links from an integral X up to Y.

    At each stage r ends the first block of the relative eta, the step is
    (A, w) with A = r - (h_Y - h) + 1 and w = r - eta_a + 1, and A has to
    satisfy A = s0X or A >= s1X together with A <= eX + n + 1 + w.
    With variant None the Y-side necessary conditions are not checked.
    """
    if dominates_model(X, Y) is None:
        raise LinkageError(f"{Y.label()} does not dominate {X.label()}", clause="domination")
    if variant is not None:
        verdict = integral_necessary(Y, variant)
        if not verdict.passed:
            raise LinkageError(
                f"{Y.label()} fails the {verdict.variant.value} conditions: "
                + "; ".join(verdict.failures),
                clause="integral",
            )

    n = X.cls.n
    steps: List[DoubleLinkStep] = []
    current = X
    while current.h < Y.h:
        if len(steps) >= settings.CHAIN_MAX_STEPS:
            raise ChainError(f"integral chain exceeded {settings.CHAIN_MAX_STEPS} steps")
        eta = _relative_eta(current, Y)
        r = min(l for l in eta.support() if eta(l + 1) == 0)
        A = r - (Y.h - current.h) + 1
        w = r - int(bounds(eta)[0]) + 1
        derived = invariants(current)
        index = len(steps) + 1
        if not (A == derived.s0X or A >= derived.s1X):
            raise ChainError(
                f"step {index}: A={A} is neither s0X={derived.s0X} nor >= s1X={derived.s1X}",
                step=index,
            )
        ceiling = derived.eX + n + 1 + w
        if A > ceiling:
            raise ChainError(f"step {index}: A={A} > eX+n+1+w={ceiling}", step=index)
        bound = t1_bound(current)
        if A != derived.s0X and A < bound:
            logger.warning(
                f"step {index}: A={A} passes the s1X={derived.s1X} form "
                f"but is below the t1 bound {bound}"
            )
        steps.append(DoubleLinkStep(s=A, h=w, kind=LinkKind.ELEMENTARY))
        current = double_link(current, A, w, LinkKind.ELEMENTARY)

    _check_replay(current, Y, "integral chain")
    logger.info(f"integral chain {X.label()} -> {Y.label()}: {[s.as_pair() for s in steps]}")
    return steps


def enumerate_models(
    cls: LinkageClassDescriptor, h: int, window: Tuple[int, int]
) -> List[SubschemeModel]:
    """All models of height h whose theta is supported in the window"""
    return [
        SubschemeModel(cls=cls, h=h, theta=theta)
        for theta in enumerate_thetas(cls.gamma, h, window)
    ]
