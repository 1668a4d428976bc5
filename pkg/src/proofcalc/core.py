"""Exact Bayesian updating for the three-rate evidence model.

Everything here is computed with rational arithmetic (`fractions.Fraction`),
so posteriors like 32/38 stay exact until somebody formats them for display.
All types are immutable values and all operations are pure functions; they
are safe to call from any number of threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RateLike = Union["Probability", Fraction, int, float, str]


class DegenerateEvidence(ValueError):
    """The evidence has zero probability mass, so conditioning on it is undefined."""


class Probability(Fraction):
    """An exact rational number validated to lie in [0, 1].

    Floats are read through their shortest decimal representation, so
    ``Probability(0.4)`` is exactly 2/5 rather than the 53-bit binary
    neighbour of 0.4. Strings accept plain decimals ("0.4") and fractions
    ("2/5"); arithmetic results are ordinary ``Fraction`` values.
    """

    __slots__ = ()

    def __new__(cls, value: RateLike = 0, denominator=None):
        if denominator is None and isinstance(value, float):
            value = Fraction(str(value))
        self = super().__new__(cls, value, denominator)
        if not 0 <= self <= 1:
            raise ValueError(f"probability must be in [0, 1], got {self.numerator}/{self.denominator}")
        return self


@dataclass(frozen=True)
class Scenario:
    """The three rates of the evidence model, plus display labels.

    base_rate          p(H): prior probability that the hypothesis condition holds
    hit_rate           p(E|H): probability of the evidence when it does
    false_alarm_rate   p(E|not H): probability of the evidence when it does not

    Each rate only has to sit in [0, 1] on its own; there is no joint
    constraint. Labels are presentation metadata and never enter any
    computation.
    """

    base_rate: Probability
    hit_rate: Probability
    false_alarm_rate: Probability
    hypothesis_label: str = "runs on Main Street"
    evidence_label: str = "is blue"

    def __post_init__(self) -> None:
        for name in ("base_rate", "hit_rate", "false_alarm_rate"):
            object.__setattr__(self, name, Probability(getattr(self, name)))


@dataclass(frozen=True)
class PosteriorBreakdown:
    """The four quantities of one Bayesian update.

    joint_hit          p(E and H)     = base_rate * hit_rate
    joint_false_alarm  p(E and not H) = (1 - base_rate) * false_alarm_rate
    evidence_marginal  p(E)           = joint_hit + joint_false_alarm
    posterior          p(H | E)       = joint_hit / evidence_marginal
    """

    joint_hit: Probability
    joint_false_alarm: Probability
    evidence_marginal: Probability
    posterior: Probability

    def __post_init__(self) -> None:
        for name in ("joint_hit", "joint_false_alarm", "evidence_marginal", "posterior"):
            object.__setattr__(self, name, Probability(getattr(self, name)))
        if self.evidence_marginal != self.joint_hit + self.joint_false_alarm:
            raise ValueError("evidence_marginal must equal joint_hit + joint_false_alarm")
        if self.posterior * self.evidence_marginal != self.joint_hit:
            raise ValueError("posterior * evidence_marginal must equal joint_hit")


class Outcome(enum.Enum):
    FOR_MOVING_PARTY = "for-moving-party"
    FOR_DEFENDANT = "for-defendant"


class ErrorKind(enum.Enum):
    FALSE_ALARM_VERDICT = "false-alarm-verdict"
    MISS_VERDICT = "miss-verdict"


#: The civil "more likely than not" cutoff used when no threshold is given.
PREPONDERANCE = Probability(1, 2)


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    threshold: Probability
    posterior: Probability


@dataclass(frozen=True)
class ErrorProfile:
    """Chance that a threshold verdict is wrong, and in which direction."""

    wrong_verdict_probability: Probability
    error_kind: ErrorKind


def compute_posterior(scenario: Scenario) -> PosteriorBreakdown:
    """Update the base rate on the evidence, exactly.

    Raises DegenerateEvidence when the evidence has zero marginal
    probability (for instance hit_rate = false_alarm_rate = 0), because
    conditioning on an impossible event is undefined rather than 0 or NaN.
    """
    joint_hit = scenario.base_rate * scenario.hit_rate
    joint_false_alarm = (1 - scenario.base_rate) * scenario.false_alarm_rate
    marginal = joint_hit + joint_false_alarm
    if marginal == 0:
        raise DegenerateEvidence(
            "evidence has zero probability under this scenario; the posterior is undefined"
        )
    return PosteriorBreakdown(
        joint_hit=Probability(joint_hit),
        joint_false_alarm=Probability(joint_false_alarm),
        evidence_marginal=Probability(marginal),
        posterior=Probability(joint_hit / marginal),
    )


def decide(breakdown: PosteriorBreakdown, threshold: RateLike = PREPONDERANCE) -> Verdict:
    """Apply a standard-of-proof threshold to a posterior.

    "More likely than not" is a strict inequality: a posterior exactly equal
    to the threshold rules for the defendant, because the burden rests on
    the moving party.
    """
    threshold = Probability(threshold)
    if breakdown.posterior > threshold:
        outcome = Outcome.FOR_MOVING_PARTY
    else:
        outcome = Outcome.FOR_DEFENDANT
    return Verdict(outcome=outcome, threshold=threshold, posterior=breakdown.posterior)


def verdict_error_profile(
    breakdown: PosteriorBreakdown, threshold: RateLike = PREPONDERANCE
) -> ErrorProfile:
    """How likely the threshold verdict is to be wrong, and in which way.

    A verdict for the moving party is wrong exactly when the hypothesis is
    false (probability 1 - posterior, a false-alarm verdict); a verdict for
    the defendant is wrong exactly when it is true (probability posterior,
    a miss verdict).
    """
    verdict = decide(breakdown, threshold)
    if verdict.outcome is Outcome.FOR_MOVING_PARTY:
        return ErrorProfile(
            wrong_verdict_probability=Probability(1 - breakdown.posterior),
            error_kind=ErrorKind.FALSE_ALARM_VERDICT,
        )
    return ErrorProfile(
        wrong_verdict_probability=breakdown.posterior,
        error_kind=ErrorKind.MISS_VERDICT,
    )
