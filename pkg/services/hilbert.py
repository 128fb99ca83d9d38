"""
Hilbert data from resolution-shaped input.

Characters are rebuilt from twist multisets and an abstract core function,
Hilbert functions and polynomials are recovered from characters, and the
resolution shapes are transformed under links and double links.
"""

import logging
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from models.resolution import CoreDelta, ResolutionData, ResolutionKind
from services.characters import (
    AdmissibleCharacter,
    IntFn,
    diff,
    partial_sum,
    sharp,
)
from services.errors import InvalidInputError, ResolutionError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def binomial(top: int, k: int) -> int:
    """C(top, k), zero when top < 0 or k < 0"""
    if top < 0 or k < 0:
        return 0
    return math.comb(top, k)


def multiplicity(twists: Iterable[int]) -> IntFn:
    return IntFn(Counter(twists))


def h0_dissocie(twists: Iterable[int], n: int, l: int) -> int:
    """h0 of the sum of O(l - a) on P^n"""
    if n < 1:
        raise InvalidInputError(f"Dimension must be >= 1, got {n}")
    return sum(binomial(l - a + n, n) for a in twists if l - a >= 0)


def _spikes(twists: Iterable[int], sign: int = 1) -> IntFn:
    return multiplicity(twists) * sign


def _integrate(delta: IntFn, what: str) -> IntFn:
    summed = partial_sum(delta)
    if summed.tail != 0:
        raise InvalidInputError(f"{what} does not settle to 0, tail value {summed.tail}")
    return summed.body


def gamma_from_free_resolution(stages: Sequence[Iterable[int]], n: int) -> AdmissibleCharacter:
    """gamma(l) = sum_i (-1)^i sum_{a in stage i} step(l - a) - step(l)"""
    delta = IntFn({0: -1})
    for i, stage in enumerate(stages):
        delta = delta + _spikes(stage, (-1) ** i)
    gamma = _integrate(delta, "alternating rank of the resolution")
    logger.debug(f"free resolution {list(map(list, stages))} in P^{n} gives {gamma}")
    return AdmissibleCharacter.of(gamma)


def _core_delta(core: Optional[CoreDelta]) -> IntFn:
    if core is None or core.is_zero:
        return IntFn()
    return diff(core.function())


def _sign(kind: ResolutionKind) -> int:
    return 1 if kind == ResolutionKind.N else -1


def gamma_values(res: ResolutionData) -> IntFn:
    """
    sign * core(l - core_twist) + sum_q step(l - q) - sum_p step(l - p) - step(l)

    sign is +1 for N-type and -1 for E-type.
    """
    delta = (
        _core_delta(res.core).shift(res.core_twist) * _sign(res.kind)
        + _spikes(res.q)
        - _spikes(res.p)
        - IntFn({0: 1})
    )
    return _integrate(delta, "resolution rank count")


def gamma_from_resolution(res: ResolutionData, n: int) -> AdmissibleCharacter:
    return AdmissibleCharacter.of(gamma_values(res))


def gamma_from_N_data(res: ResolutionData, n: int) -> AdmissibleCharacter:
    if res.kind != ResolutionKind.N:
        raise ResolutionError(f"expected an N-type resolution, got {res.kind.value}", clause="kind")
    return gamma_from_resolution(res, n)


def core_from_minimal(
    gamma: AdmissibleCharacter,
    p: Iterable[int],
    q: Iterable[int],
    n: int,
    kind: ResolutionKind = ResolutionKind.N,
    core_twist: int = 0,
) -> CoreDelta:
    """Solve the gamma identity of a resolution for its core function"""
    delta = (
        diff(gamma.fn) + IntFn({0: 1}) + _spikes(p) - _spikes(q)
    ) * _sign(kind)
    core = partial_sum(delta.shift(-core_twist))
    if core.tail < 0:
        raise ResolutionError(f"core has negative tail rank {core.tail}", clause="tail_rank")
    return CoreDelta.from_function(core)


def bootstrap_minimal_resolution(
    gamma0: AdmissibleCharacter,
    dual_gamma0: AdmissibleCharacter,
    t1: int,
    p: Iterable[int],
    q: Iterable[int] = (),
    n: int = 3,
) -> ResolutionData:
    """
    N-type resolution of a minimal element with both core functions.

    The dual core is solved from the E-type resolution of the dual minimal
    element, which is the residual in the (s0, t1) complete intersection.
    """
    p, q = tuple(p), tuple(q)
    core = core_from_minimal(gamma0, p, q, n)
    d = gamma0.s0 + t1
    linked_kernel = [d - x for x in q]
    linked_middle = [d - x for x in p] + [gamma0.s0, t1]
    dual_core = core_from_minimal(
        dual_gamma0, linked_kernel, linked_middle, n, ResolutionKind.E, core_twist=d
    )
    return ResolutionData(
        kind=ResolutionKind.N, p=p, q=q, core=core, dual_core=dual_core, core_twist=0
    )


def resolution_double_link(res: ResolutionData, s: int, h: int) -> ResolutionData:
    if h < 0:
        raise InvalidInputError(f"Height must be >= 0, got {h}")
    return res.model_copy(
        update={
            "p": tuple(sorted([x + h for x in res.p] + [s + h])),
            "q": tuple(sorted([x + h for x in res.q] + [s])),
            "core_twist": res.core_twist + h,
        }
    )


def resolution_link(res: ResolutionData, s: int, t: int) -> ResolutionData:
    """
    Mapping cone of the dual resolution twisted by -(s + t).

    The O(-d) ends cancel against each other, kernel and middle swap roles,
    and the core is replaced by its dual.
    """
    if res.has_core and res.dual_core is None:
        raise ResolutionError("linking needs the dual core of the resolution", clause="dual_core")
    d = s + t
    return ResolutionData(
        kind=res.kind.flipped(),
        p=tuple(sorted(d - x for x in res.q)),
        q=tuple(sorted([d - x for x in res.p] + [s, t])),
        core=res.dual_core,
        dual_core=res.core,
        core_twist=d - res.core_twist,
    )


def minimize_resolution(res: ResolutionData) -> ResolutionData:
    """Cancel twists shared by kernel and middle; syntactic only"""
    common = Counter(res.p) & Counter(res.q)
    if not common:
        return res
    p = Counter(res.p) - common
    q = Counter(res.q) - common
    logger.debug(f"cancelled twists {sorted(common.elements())}")
    return res.model_copy(
        update={"p": tuple(sorted(p.elements())), "q": tuple(sorted(q.elements()))}
    )


def resolution_domination_check(
    r: Iterable[int], s: Iterable[int], h1: int, h2: int
) -> bool:
    """h2 - h1 >= 0 and sharp(r, a) >= sharp(s, a) for every a"""
    if h2 - h1 < 0:
        return False
    r_fn, s_fn = multiplicity(r), multiplicity(s)
    degrees = set(r_fn.support()) | set(s_fn.support())
    return all(sharp(r_fn, a) >= sharp(s_fn, a) for a in degrees)


def align_for_domination(
    res_x: ResolutionData, res_y: ResolutionData
) -> Tuple[List[int], List[int], int, int]:
    """
    Pad two N-type resolutions with the same core to a common middle term.

    Returns (r, s, h1, h2) with 0 -> O(-r) -> N -> I_X(h1) and
    0 -> O(-s) -> N -> I_Y(h2).
    """
    for res in (res_x, res_y):
        if res.kind != ResolutionKind.N:
            raise ResolutionError("alignment needs N-type resolutions", clause="kind")
    if (res_x.core or CoreDelta()) != (res_y.core or CoreDelta()):
        raise ResolutionError("resolutions do not share a core", clause="core")
    cx, cy = res_x.core_twist, res_y.core_twist
    r = sorted([x - cx for x in res_x.p] + [x - cy for x in res_y.q])
    s = sorted([x - cy for x in res_y.p] + [x - cx for x in res_x.q])
    return r, s, cx, cy


def hilbert_function(gamma: AdmissibleCharacter, n: int, l: int) -> int:
    """h0 of the ideal sheaf: h0 O(l) plus the n-fold partial sum of gamma"""
    value = binomial(l + n, n)
    for k, v in gamma.fn.items():
        if k <= l:
            value += v * binomial(l - k + n - 1, n - 1)
    return value


def _hilbert_expression(gamma: AdmissibleCharacter, n: int, x: sp.Symbol) -> sp.Expr:
    expr = sp.Integer(0)
    for k, v in gamma.fn.items():
        expr -= v * sp.ff(x - k + n - 1, n - 1) / sp.factorial(n - 1)
    return sp.expand(expr)


def hilbert_polynomial(gamma: AdmissibleCharacter, n: int) -> List[Fraction]:
    """Coefficients of P_X, constant term first"""
    x = sp.Symbol("l")
    poly = sp.Poly(_hilbert_expression(gamma, n, x), x)
    coefficients = [sp.Rational(c) for c in reversed(poly.all_coeffs())]
    return [Fraction(int(c.p), int(c.q)) for c in coefficients]


def degree_of(gamma: AdmissibleCharacter) -> int:
    return gamma.fn.weighted_total()


def degree_genus(gamma: AdmissibleCharacter, n: int) -> Tuple[int, Optional[int]]:
    """
    Degree from sum of l * gamma(l), cross-checked against the Hilbert
    polynomial; arithmetic genus from P(l) = d l + 1 - g when n = 3.
    """
    degree = degree_of(gamma)
    coefficients = hilbert_polynomial(gamma, n)
    coefficients += [Fraction(0)] * (n - 1 - len(coefficients))
    leading = coefficients[n - 2] * math.factorial(n - 2)
    if leading != degree:
        raise InvalidInputError(
            f"degree functional {degree} disagrees with Hilbert polynomial degree {leading}"
        )
    genus = None
    if n == 3:
        genus = int(1 - coefficients[0])
    return degree, genus


def gamma_from_hilbert_function(
    h0: Callable[[int], int], n: int, upto: int
) -> AdmissibleCharacter:
    """
    gamma = n-th difference of h0 I(l) - h0 O(l), evaluated on [0, upto].

    upto has to reach past the degrees where gamma is nonzero.
    """
    phi = {l: h0(l) - binomial(l + n, n) for l in range(0, upto + 1)}
    values = {}
    for l in range(0, upto + 1):
        values[l] = sum(
            (-1) ** i * binomial(n, i) * phi.get(l - i, 0) for i in range(n + 1)
        )
    gamma = IntFn(values)
    if gamma.total() != 0:
        raise InvalidInputError(f"window [0, {upto}] is too small, difference sums to {gamma.total()}")
    return AdmissibleCharacter.of(gamma)
