"""Evaluation functions over population health distributions.

Every family reduces to a sum of per-profile terms. The three
equivalent-function families aggregate a user-supplied f(a, p, t); the
parametric families are weighted power sums w(a, p) * t^gamma whose
per-individual full-health, full-productivity equivalent lifetime is
w(a, p)^(1/gamma) * t.

Conventions: 0^x = 0 for exponents x in (0, 1), so zero lifetimes and zero
productivities are admitted without special cases. Sums use exact float
summation, which makes evaluation order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import (
    InvalidParameter,
    NegativeOrNonFiniteLifetime,
    NonPositiveLifetime,
    UnknownHealthState,
)
from .model import (
    Distribution,
    EvalSpec,
    Family,
    Profile,
    Ranking,
    Verdict,
    indifference_tolerance,
)

Row = tuple[str, float, float]
TermFn = Callable[[str, float, float], float]


@dataclass(frozen=True)
class HpyeValue:
    """Full-health, maximal-productivity equivalent lifetime of one profile."""

    years: float


def _lookup(table, a: str) -> float:
    try:
        return table[a]
    except KeyError:
        raise UnknownHealthState(f"health state {a!r} not in value table") from None


def weight_function(spec: EvalSpec) -> Callable[[str, float], float]:
    """Lifetime weight w(a, p) of a parametric family; w(full_health, 1) = 1."""
    fam = spec.family
    if fam is Family.POWER_QALY:
        q = spec.value_set.q
        return lambda a, p: _lookup(q, a)
    if fam is Family.POWER_PALY:
        return lambda a, p: p
    if fam is Family.POWER_PQALY:
        q = spec.value_set.q
        return lambda a, p: _lookup(q, a) * p
    if fam is Family.QALY_PALY:
        q = spec.value_set.q
        sg, so = spec.sigma, 1.0 - spec.sigma
        return lambda a, p: sg * _lookup(q, a) + so * p
    if fam is Family.QALY_PQALY:
        if spec.value_set.r is None:
            raise InvalidParameter("QalyPqaly requires r and s tables in the value set")
        r, s = spec.value_set.r, spec.value_set.s
        return lambda a, p: _lookup(r, a) + _lookup(s, a) * p
    if fam is Family.BI_POWER_PQALY:
        q, eps = spec.value_set.q, spec.epsilon
        return lambda a, p: _lookup(q, a) * p**eps
    if fam is Family.PQ_POWER_LIFETIME:
        return spec.phi
    raise InvalidParameter(f"{fam.value} has no closed lifetime-weight form")


def compile_term(spec: EvalSpec) -> TermFn:
    """Per-profile contribution (a, p, t) -> term, precompiled for tight loops."""
    fam = spec.family
    if fam is Family.GENERALIZED_HPYE:
        f, g = spec.hpye_fn, spec.aggregator_g
        return lambda a, p, t: g(f(a, p, t))
    if fam is Family.UTILITARIAN_HPYE:
        return spec.hpye_fn
    if fam is Family.POWER_HPYE:
        f, gm = spec.hpye_fn, spec.gamma
        return lambda a, p, t: f(a, p, t) ** gm
    w, gm = weight_function(spec), spec.gamma
    return lambda a, p, t: w(a, p) * t**gm


def sum_terms(rows: Iterable[Row], term: TermFn) -> float:
    """Exactly-rounded sum of per-profile terms (order-independent)."""
    return math.fsum(term(a, p, t) for (a, p, t) in rows)


def evaluate(d: Distribution, spec: EvalSpec) -> float:
    """Value of the spec's evaluation function on a distribution; higher is more preferred."""
    return sum_terms(d.rows(), compile_term(spec))


def hpye(profile: Profile, spec: EvalSpec) -> HpyeValue:
    """Equivalent lifetime at full health and maximal productivity.

    For the parametric families this is w(a, p)^(1/gamma) * t; for the
    equivalent-function families it is the user-supplied f itself.
    """
    a, p, t = profile.as_row()
    if spec.family in (Family.GENERALIZED_HPYE, Family.UTILITARIAN_HPYE, Family.POWER_HPYE):
        years = spec.hpye_fn(a, p, t)
    else:
        w = weight_function(spec)(a, p)
        years = w ** (1.0 / spec.gamma) * t
    slack = 1e-9 * max(1.0, t)
    if not (-slack <= years <= t + slack):
        raise InvalidParameter(
            f"equivalent lifetime {years!r} escapes [0, t] for profile {profile!r}"
        )
    return HpyeValue(years)


def compare(d_a: Distribution, d_b: Distribution, spec: EvalSpec) -> Ranking:
    """Rank two equal-size distributions; ties within tolerance are indifferent."""
    if d_a.n != d_b.n:
        raise InvalidParameter(
            f"comparisons are fixed-population: got sizes {d_a.n} and {d_b.n}"
        )
    term = compile_term(spec)
    ea = sum_terms(d_a.rows(), term)
    eb = sum_terms(d_b.rows(), term)
    gap = ea - eb
    if abs(gap) <= indifference_tolerance(ea, eb):
        return Ranking(Verdict.indifferent, gap)
    if gap > 0:
        return Ranking(Verdict.A_strictly_preferred, gap)
    return Ranking(Verdict.B_strictly_preferred, gap)


def _require_gamma(gamma: float) -> float:
    if not (isinstance(gamma, (int, float)) and 0.0 < gamma < 1.0):
        raise InvalidParameter(f"gamma must lie strictly inside (0, 1), got {gamma!r}")
    return float(gamma)


def marginal_priority_ratio(t1: float, t2: float, gamma: float) -> float:
    """Ratio of marginal social values of lifetime for two fully healthy,
    fully productive individuals: (t2 / t1)^(1 - gamma).

    Grows without bound as t1 approaches zero, expressing strong priority
    to those with the shortest lifetimes.
    """
    _require_gamma(gamma)
    for t in (t1, t2):
        if not (isinstance(t, (int, float)) and math.isfinite(t) and t > 0.0):
            raise NonPositiveLifetime(f"lifetimes must be finite and > 0, got {t!r}")
    return (t2 / t1) ** (1.0 - gamma)


def bounded_gain_check(t: float, delta: float, gamma: float) -> float:
    """Social value of a finite lifetime gain: (t + delta)^gamma - t^gamma.

    Approaches delta^gamma as t -> 0, so finite gains stay finitely valued
    even where marginal priority diverges.
    """
    _require_gamma(gamma)
    if not (isinstance(t, (int, float)) and math.isfinite(t) and t >= 0.0):
        raise NegativeOrNonFiniteLifetime(f"lifetime must be finite and >= 0, got {t!r}")
    if not (isinstance(delta, (int, float)) and math.isfinite(delta) and delta > 0.0):
        raise InvalidParameter(f"delta must be finite and > 0, got {delta!r}")
    return (t + delta) ** gamma - t**gamma
