"""Built-in fixtures: default value tables, reference callables for the
equivalent-function families, one preset spec per family, and the embedded
two-population worked example used by the `example1` CLI report.

The preset specs exist so the axiom matrix can be run out of the box. The
reference equivalent function and the cubic productivity weight are chosen
to be *generic* members of their families: they depend on both health and
productivity, are nonlinear in productivity, keep zero-productivity
lifetime relevant, and are not multiplicatively separable in lifetime, so
none of the independence or scale axioms hold for them accidentally.
"""

from __future__ import annotations

import math
from typing import Callable

from .model import Distribution, EvalSpec, Family, ValueSet

FULL_HEALTH = "11111"
SLIGHT_IMPAIRMENT = "11211"
SEVERE_IMPAIRMENT = "32411"


def default_value_set() -> ValueSet:
    """Three-state EQ-5D-5L-style table with split (r, s) tables attached."""
    return ValueSet(
        full_health=FULL_HEALTH,
        q={FULL_HEALTH: 1.0, SLIGHT_IMPAIRMENT: 0.95, SEVERE_IMPAIRMENT: 0.5},
        r={FULL_HEALTH: 0.6, SLIGHT_IMPAIRMENT: 0.57, SEVERE_IMPAIRMENT: 0.3},
        s={FULL_HEALTH: 0.4, SLIGHT_IMPAIRMENT: 0.38, SEVERE_IMPAIRMENT: 0.2},
    )


def saturating_equivalent(vs: ValueSet) -> Callable[[str, float, float], float]:
    """Reference equivalent function f(a, p, t) = t * (w + (1 - w) * t / (1 + t))
    with w = q(a) * p^2.

    Identity at (full health, max productivity); bounded by t; monotone in
    health and productivity; deliberately not of the form weight * t, so
    lifetime rescaling genuinely changes the induced ranking.
    """
    q = dict(vs.q)

    def f(a: str, p: float, t: float) -> float:
        w = q[a] * p * p
        return t * (w + (1.0 - w) * (t / (1.0 + t)))

    return f


def cubic_productivity_weight(vs: ValueSet) -> Callable[[str, float], float]:
    """Reference bivariate weight phi(a, p) = q(a) * (0.3 + 0.2 p + 0.5 p^3).

    Equals 1 at (full health, 1); strictly increasing but nonlinear (and
    convex) in productivity; positive at p = 0.
    """
    q = dict(vs.q)

    def phi(a: str, p: float) -> float:
        return q[a] * (0.3 + 0.2 * p + 0.5 * p * p * p)

    return phi


def log_aggregator(x: float) -> float:
    """Strictly concave non-power aggregator log(1 + x)."""
    return math.log1p(x)


def identity_aggregator(x: float) -> float:
    return x


def power_aggregator(gamma: float) -> Callable[[float], float]:
    """Concave power aggregator x^gamma for gamma in (0, 1)."""
    return lambda x: x**gamma


def preset_family_specs(
    gamma: float = 0.5, epsilon: float = 0.5, sigma: float = 0.5
) -> dict[str, EvalSpec]:
    """One ready-to-run spec per family, keyed by family name, in the
    canonical reporting order. All share the default value set."""
    vs = default_value_set()
    f = saturating_equivalent(vs)
    return {
        Family.GENERALIZED_HPYE.value: EvalSpec(
            Family.GENERALIZED_HPYE, value_set=vs, hpye_fn=f, aggregator_g=log_aggregator
        ),
        Family.POWER_HPYE.value: EvalSpec(
            Family.POWER_HPYE, gamma=gamma, value_set=vs, hpye_fn=f
        ),
        Family.PQ_POWER_LIFETIME.value: EvalSpec(
            Family.PQ_POWER_LIFETIME,
            gamma=gamma,
            value_set=vs,
            phi=cubic_productivity_weight(vs),
        ),
        Family.POWER_QALY.value: EvalSpec(Family.POWER_QALY, gamma=gamma, value_set=vs),
        Family.POWER_PALY.value: EvalSpec(Family.POWER_PALY, gamma=gamma, value_set=vs),
        Family.POWER_PQALY.value: EvalSpec(Family.POWER_PQALY, gamma=gamma, value_set=vs),
        Family.QALY_PALY.value: EvalSpec(
            Family.QALY_PALY, gamma=gamma, sigma=sigma, value_set=vs
        ),
        Family.QALY_PQALY.value: EvalSpec(Family.QALY_PQALY, gamma=gamma, value_set=vs),
        Family.BI_POWER_PQALY.value: EvalSpec(
            Family.BI_POWER_PQALY, gamma=gamma, epsilon=epsilon, value_set=vs
        ),
    }


def utilitarian_spec() -> EvalSpec:
    """Plain sum of equivalents (identity aggregation): the equity-blind benchmark."""
    vs = default_value_set()
    return EvalSpec(
        Family.GENERALIZED_HPYE,
        value_set=vs,
        hpye_fn=saturating_equivalent(vs),
        aggregator_g=identity_aggregator,
    )


# --- Embedded worked example: two five-person populations -------------------
#
# omega: everyone fully healthy; lifetimes and productivities vary widely.
# phi(p): one fully healthy long-lived person; everyone else slightly
# impaired at lifetime 10, with a single person of productivity p.

def example_value_set() -> ValueSet:
    return ValueSet(
        full_health=FULL_HEALTH,
        q={FULL_HEALTH: 1.0, SLIGHT_IMPAIRMENT: 0.95},
    )


def omega_distribution() -> Distribution:
    return Distribution.from_rows(
        [
            (FULL_HEALTH, 1.0, 40.0),
            (FULL_HEALTH, 0.5, 5.0),
            (FULL_HEALTH, 0.0, 20.0),
            (FULL_HEALTH, 0.5, 5.0),
            (FULL_HEALTH, 0.0, 0.0),
        ]
    )


def phi_distribution(p: float) -> Distribution:
    return Distribution.from_rows(
        [
            (FULL_HEALTH, 1.0, 40.0),
            (SLIGHT_IMPAIRMENT, 0.0, 10.0),
            (SLIGHT_IMPAIRMENT, p, 10.0),
            (SLIGHT_IMPAIRMENT, 0.0, 10.0),
            (SLIGHT_IMPAIRMENT, 0.0, 0.0),
        ]
    )
