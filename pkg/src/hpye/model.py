"""Domain types and validation shared by every other module.

An individual is a profile (health state, productivity, lifetime); a
population is an ordered distribution of profiles; value tables map
health-state labels to unit-interval weights with a designated full-health
state; an evaluation spec selects one family of evaluation functions and
fixes its parameters.

Health states are opaque labels: no structure beyond identity and the
designated full-health member is imposed. All types are immutable after
construction and safe to share across threads. Validation is total -
every input either yields a value or a specific error, never a silent
clamp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from types import MappingProxyType
from typing import Callable, Mapping

from .errors import (
    FullHealthWeightNotOne,
    InvalidHealthState,
    InvalidParameter,
    NegativeOrNonFiniteLifetime,
    OutOfRangeProductivity,
    RSConstraintViolated,
    UnknownHealthState,
    UnsupportedFamily,
    WeightOutOfRange,
)

HealthStateId = str

# Relative indifference tolerance: |gap| <= RELATIVE_TOLERANCE * max(1, |E_A|, |E_B|)
# makes the social indifference relation decidable in floating point.
RELATIVE_TOLERANCE = 1e-9

# Joint table sums are allowed this much rounding slack around exact bounds.
_TABLE_SLACK = 1e-12


def indifference_tolerance(value_a: float, value_b: float = 0.0) -> float:
    """Absolute tolerance below which two evaluation values count as socially indifferent."""
    return RELATIVE_TOLERANCE * max(1.0, abs(value_a), abs(value_b))


def _require_state(state: object) -> HealthStateId:
    if not isinstance(state, str) or not state:
        raise InvalidHealthState(f"health state must be a non-empty string, got {state!r}")
    return state


@dataclass(frozen=True)
class Profile:
    """One individual: health state, productivity share in [0, 1], lifetime in years >= 0."""

    state: HealthStateId
    productivity: float
    lifetime: float

    def __post_init__(self) -> None:
        _require_state(self.state)
        p = self.productivity
        if not isinstance(p, (int, float)) or isinstance(p, bool) or not (0.0 <= float(p) <= 1.0):
            raise OutOfRangeProductivity(f"productivity must be in [0, 1], got {p!r}")
        t = self.lifetime
        if (
            not isinstance(t, (int, float))
            or isinstance(t, bool)
            or not math.isfinite(float(t))
            or float(t) < 0.0
        ):
            raise NegativeOrNonFiniteLifetime(f"lifetime must be finite and >= 0, got {t!r}")
        object.__setattr__(self, "productivity", float(p))
        object.__setattr__(self, "lifetime", float(t))

    def as_row(self) -> tuple[str, float, float]:
        return (self.state, self.productivity, self.lifetime)


def validate_profile(state: HealthStateId, p: float, t: float) -> Profile:
    """Build a profile, rejecting out-of-range productivity or bad lifetimes."""
    return Profile(state, p, t)


@dataclass(frozen=True, init=False)
class Distribution:
    """An ordered population of n >= 1 profiles."""

    profiles: tuple[Profile, ...]

    def __init__(self, profiles) -> None:
        profs = tuple(profiles)
        if not profs:
            raise InvalidParameter("a distribution requires at least one profile")
        for pr in profs:
            if not isinstance(pr, Profile):
                raise InvalidParameter(f"expected Profile, got {type(pr).__name__}")
        object.__setattr__(self, "profiles", profs)

    @classmethod
    def from_rows(cls, rows) -> "Distribution":
        """Build from (state, productivity, lifetime) triples, validating each."""
        return cls(Profile(*row) for row in rows)

    @property
    def n(self) -> int:
        return len(self.profiles)

    def rows(self) -> tuple[tuple[str, float, float], ...]:
        return tuple(pr.as_row() for pr in self.profiles)

    def replaced(self, index: int, profile: Profile) -> "Distribution":
        profs = list(self.profiles)
        profs[index] = profile
        return Distribution(profs)


def scale_lifetimes(d: Distribution, c: float) -> Distribution:
    """Multiply every lifetime by a common constant c > 0."""
    if not (math.isfinite(c) and c > 0.0):
        raise InvalidParameter(f"lifetime scale must be a finite positive number, got {c!r}")
    return Distribution(
        Profile(pr.state, pr.productivity, pr.lifetime * c) for pr in d.profiles
    )


def scale_productivities(d: Distribution, c: float) -> Distribution:
    """Multiply every productivity by a common constant 0 < c <= 1."""
    if not (math.isfinite(c) and 0.0 < c <= 1.0):
        raise InvalidParameter(f"productivity scale must lie in (0, 1], got {c!r}")
    return Distribution(
        Profile(pr.state, pr.productivity * c, pr.lifetime) for pr in d.profiles
    )


def _frozen_table(raw: Mapping[str, float], name: str) -> Mapping[str, float]:
    table: dict[str, float] = {}
    for state, w in raw.items():
        _require_state(state)
        if not isinstance(w, (int, float)) or isinstance(w, bool) or not math.isfinite(float(w)):
            raise WeightOutOfRange(f"{name}[{state!r}] must be a finite number, got {w!r}")
        if not (0.0 <= float(w) <= 1.0):
            raise WeightOutOfRange(f"{name}[{state!r}] must be in [0, 1], got {w!r}")
        table[state] = float(w)
    return MappingProxyType(table)


@dataclass(frozen=True)
class ValueSet:
    """Weight tables over health states with a designated full-health state.

    `q` maps every known state to a quality weight in [0, 1] with
    q[full_health] = 1. The optional pair (r, s) supports the split
    quality/productivity-quality family and must satisfy, for every state a:
    0 <= r[a] <= r[full_health], 0 <= s[a] <= 1, and
    r[a] + s[a] <= r[full_health] + s[full_health] = 1.
    """

    full_health: HealthStateId
    q: Mapping[str, float]
    r: Mapping[str, float] | None = None
    s: Mapping[str, float] | None = None

    def __post_init__(self) -> None:
        _require_state(self.full_health)
        object.__setattr__(self, "q", _frozen_table(self.q, "q"))
        if self.full_health not in self.q:
            raise FullHealthWeightNotOne(
                f"full-health state {self.full_health!r} missing from q table"
            )
        if self.q[self.full_health] != 1.0:
            raise FullHealthWeightNotOne(
                f"q[{self.full_health!r}] must equal 1, got {self.q[self.full_health]!r}"
            )
        if (self.r is None) != (self.s is None):
            raise RSConstraintViolated("r and s tables must be supplied together")
        if self.r is not None and self.s is not None:
            r = _frozen_table(self.r, "r")
            s = _frozen_table(self.s, "s")
            object.__setattr__(self, "r", r)
            object.__setattr__(self, "s", s)
            if set(r) != set(s):
                raise RSConstraintViolated("r and s must be defined on the same states")
            if self.full_health not in r:
                raise RSConstraintViolated(
                    f"full-health state {self.full_health!r} missing from r/s tables"
                )
            top = r[self.full_health] + s[self.full_health]
            if abs(top - 1.0) > _TABLE_SLACK:
                raise RSConstraintViolated(
                    f"r[a*] + s[a*] must equal 1, got {top!r}"
                )
            for a in r:
                if r[a] > r[self.full_health] + _TABLE_SLACK:
                    raise RSConstraintViolated(
                        f"r[{a!r}]={r[a]!r} exceeds r[full_health]={r[self.full_health]!r}"
                    )
                if r[a] + s[a] > top + _TABLE_SLACK:
                    raise RSConstraintViolated(
                        f"r[{a!r}] + s[{a!r}] = {r[a] + s[a]!r} exceeds r[a*] + s[a*] = {top!r}"
                    )

    def states(self) -> tuple[str, ...]:
        return tuple(self.q)


def validate_value_set(raw: ValueSet) -> ValueSet:
    """Re-verify all value-set invariants and return the set unchanged."""
    ValueSet(raw.full_health, dict(raw.q), None if raw.r is None else dict(raw.r),
             None if raw.s is None else dict(raw.s))
    return raw


def quality_weight(vs: ValueSet, a: HealthStateId) -> float:
    """Look up q[a]; unknown states raise rather than defaulting."""
    try:
        return vs.q[a]
    except KeyError:
        raise UnknownHealthState(f"health state {a!r} not in value set") from None


class Family(Enum):
    """Evaluation-function families.

    The first three aggregate a user-supplied per-individual equivalent
    function f(a, p, t); the rest are parametric power forms over lifetime
    with a family-specific weight.
    """

    GENERALIZED_HPYE = "GeneralizedHPYE"       # sum of g(f(a_i, p_i, t_i))
    UTILITARIAN_HPYE = "UtilitarianHPYE"       # sum of f(a_i, p_i, t_i)
    POWER_HPYE = "PowerHPYE"                   # sum of f(a_i, p_i, t_i)^gamma
    PQ_POWER_LIFETIME = "PQPowerLifetime"      # sum of phi(a_i, p_i) * t_i^gamma
    POWER_QALY = "PowerQALY"                   # sum of q(a_i) * t_i^gamma
    POWER_PALY = "PowerPALY"                   # sum of p_i * t_i^gamma
    POWER_PQALY = "PowerPQALY"                 # sum of q(a_i) * p_i * t_i^gamma
    QALY_PALY = "QalyPaly"                     # sigma * power QALY + (1 - sigma) * power PALY
    QALY_PQALY = "QalyPqaly"                   # sum of (r(a_i) + s(a_i) * p_i) * t_i^gamma
    BI_POWER_PQALY = "BiPowerPQALY"            # sum of q(a_i) * p_i^epsilon * t_i^gamma


# Families whose value is a weighted sum of t^gamma terms; lifetime scaling by
# c multiplies the value by c^gamma for exactly these.
LIFETIME_POWER_FAMILIES = frozenset(
    {
        Family.PQ_POWER_LIFETIME,
        Family.POWER_QALY,
        Family.POWER_PALY,
        Family.POWER_PQALY,
        Family.QALY_PALY,
        Family.QALY_PQALY,
        Family.BI_POWER_PQALY,
    }
)

_GAMMA_FAMILIES = LIFETIME_POWER_FAMILIES | {Family.POWER_HPYE}
_HPYE_FN_FAMILIES = frozenset(
    {Family.GENERALIZED_HPYE, Family.UTILITARIAN_HPYE, Family.POWER_HPYE}
)
_VALUE_SET_OPTIONAL = frozenset({Family.POWER_PALY})

# Deterministic sampling grids for validating user-supplied callables.
_SAMPLE_P = (0.0, 0.25, 0.5, 0.75, 1.0)
_SAMPLE_T = (0.0, 0.01, 0.5, 1.0, 7.0, 50.0)
_SAMPLE_X = (0.0, 1e-3, 0.1, 1.0, 10.0, 100.0)
_SAMPLE_SLACK = 1e-9


def _open_unit(value: float | None, name: str) -> float:
    if value is None:
        raise InvalidParameter(f"{name} is required by this family")
    if not (isinstance(value, (int, float)) and not isinstance(value, bool)):
        raise InvalidParameter(f"{name} must be a number, got {value!r}")
    if not (0.0 < float(value) < 1.0):
        raise InvalidParameter(f"{name} must lie strictly inside (0, 1), got {value!r}")
    return float(value)


def _validate_phi(phi: Callable[[str, float], float], vs: ValueSet) -> None:
    star = vs.full_health
    top = phi(star, 1.0)
    if abs(top - 1.0) > _SAMPLE_SLACK:
        raise InvalidParameter(f"phi(full_health, 1) must equal 1, got {top!r}")
    for a in vs.states():
        for p in _SAMPLE_P:
            v = phi(a, p)
            if not (-_SAMPLE_SLACK <= v <= 1.0 + _SAMPLE_SLACK):
                raise InvalidParameter(f"phi({a!r}, {p}) = {v!r} outside [0, 1]")
            if v > phi(star, p) + _SAMPLE_SLACK:
                raise InvalidParameter(f"phi({a!r}, {p}) exceeds phi(full_health, {p})")
            if v > phi(a, 1.0) + _SAMPLE_SLACK:
                raise InvalidParameter(f"phi({a!r}, {p}) exceeds phi({a!r}, 1)")


def _validate_hpye_fn(fn: Callable[[str, float, float], float], vs: ValueSet) -> None:
    star = vs.full_health
    for t in _SAMPLE_T:
        ft = fn(star, 1.0, t)
        if abs(ft - t) > _SAMPLE_SLACK * max(1.0, t):
            raise InvalidParameter(
                f"equivalent function must be the identity at (full_health, 1): f={ft!r} at t={t}"
            )
        for a in vs.states():
            for p in _SAMPLE_P:
                v = fn(a, p, t)
                if not (-_SAMPLE_SLACK <= v <= t + _SAMPLE_SLACK * max(1.0, t)):
                    raise InvalidParameter(
                        f"equivalent function must satisfy 0 <= f <= t: f({a!r},{p},{t}) = {v!r}"
                    )
                if v > fn(a, 1.0, t) + _SAMPLE_SLACK * max(1.0, t):
                    raise InvalidParameter(
                        f"equivalent function must not exceed its value at maximal productivity"
                        f" (state {a!r}, p={p}, t={t})"
                    )
                if v > fn(star, p, t) + _SAMPLE_SLACK * max(1.0, t):
                    raise InvalidParameter(
                        f"equivalent function must not exceed its value at full health"
                        f" (state {a!r}, p={p}, t={t})"
                    )


def _validate_aggregator(g: Callable[[float], float]) -> None:
    prev_x, prev_g = None, None
    for x in _SAMPLE_X:
        gx = g(x)
        if not math.isfinite(gx):
            raise InvalidParameter(f"aggregator must be finite on [0, inf): g({x}) = {gx!r}")
        if prev_g is not None and gx <= prev_g:
            raise InvalidParameter(
                f"aggregator must be strictly increasing: g({prev_x}) = {prev_g!r}"
                f" >= g({x}) = {gx!r}"
            )
        prev_x, prev_g = x, gx


@dataclass(frozen=True)
class EvalSpec:
    """Family selector plus parameters, fully determining one evaluation function.

    gamma and epsilon live strictly inside (0, 1); sigma in [0, 1]. User
    callables are constraint-checked on a deterministic sample grid at
    construction (the constraints are sampled, not proven). Unused
    parameters for the chosen family are rejected rather than ignored.
    """

    family: Family
    gamma: float | None = None
    epsilon: float | None = None
    sigma: float | None = None
    value_set: ValueSet | None = None
    phi: Callable[[str, float], float] | None = None
    hpye_fn: Callable[[str, float, float], float] | None = None
    aggregator_g: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        fam = self.family
        if not isinstance(fam, Family):
            raise InvalidParameter(f"family must be a Family member, got {fam!r}")

        if fam in _GAMMA_FAMILIES:
            object.__setattr__(self, "gamma", _open_unit(self.gamma, "gamma"))
        elif self.gamma is not None:
            raise InvalidParameter(f"{fam.value} does not take gamma")

        if fam is Family.BI_POWER_PQALY:
            object.__setattr__(self, "epsilon", _open_unit(self.epsilon, "epsilon"))
        elif self.epsilon is not None:
            raise InvalidParameter(f"{fam.value} does not take epsilon")

        if fam is Family.QALY_PALY:
            s = self.sigma
            if s is None or isinstance(s, bool) or not isinstance(s, (int, float)):
                raise InvalidParameter(f"sigma is required and must be a number, got {s!r}")
            if not (0.0 <= float(s) <= 1.0):
                raise InvalidParameter(f"sigma must lie in [0, 1], got {s!r}")
            object.__setattr__(self, "sigma", float(s))
        elif self.sigma is not None:
            raise InvalidParameter(f"{fam.value} does not take sigma")

        if self.value_set is None and fam not in _VALUE_SET_OPTIONAL:
            raise InvalidParameter(f"{fam.value} requires a value_set")

        if fam is Family.PQ_POWER_LIFETIME:
            if self.phi is None:
                raise InvalidParameter(f"{fam.value} requires a phi weight function")
            _validate_phi(self.phi, self.value_set)
        elif self.phi is not None:
            raise InvalidParameter(f"{fam.value} does not take phi")

        if fam in _HPYE_FN_FAMILIES:
            if self.hpye_fn is None:
                raise UnsupportedFamily(
                    f"{fam.value} requires a user-supplied equivalent function"
                )
            _validate_hpye_fn(self.hpye_fn, self.value_set)
        elif self.hpye_fn is not None:
            raise InvalidParameter(f"{fam.value} does not take an equivalent function")

        if fam is Family.GENERALIZED_HPYE:
            if self.aggregator_g is None:
                raise UnsupportedFamily(f"{fam.value} requires an aggregator function")
            _validate_aggregator(self.aggregator_g)
        elif self.aggregator_g is not None:
            raise InvalidParameter(f"{fam.value} does not take an aggregator")

    def with_params(self, **changes) -> "EvalSpec":
        """Return a copy with the given parameters replaced (revalidated)."""
        return replace(self, **changes)

    def states(self) -> tuple[str, ...]:
        if self.value_set is None:
            return ()
        return self.value_set.states()


class Verdict(Enum):
    A_strictly_preferred = "A_strictly_preferred"
    B_strictly_preferred = "B_strictly_preferred"
    indifferent = "indifferent"


@dataclass(frozen=True)
class Ranking:
    """Outcome of comparing two distributions: verdict plus signed gap E[A] - E[B]."""

    verdict: Verdict
    gap: float
