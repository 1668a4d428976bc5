"""Natural-frequency trees: the three-rate model over a concrete population.

A tree restates the scenario as absolute counts ("32 of 100 buses...") in
three rows: the population, the hypothesis/complement split, and the four
evidence leaves. Its defining property is conservation: every row sums
exactly to its parent, whatever rounding was applied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from .core import DegenerateEvidence, Probability, Scenario

Count = Union[int, Fraction]

#: Round non-integral expected counts to integers, preserving row sums.
LARGEST_REMAINDER = "largest-remainder"
#: Keep non-integral expected counts as exact fractions.
EXACT_RATIONAL = "exact-rational"
ROUNDING_POLICIES = (LARGEST_REMAINDER, EXACT_RATIONAL)

#: Branch order of the four leaves, left to right.
LEAF_NAMES = ("hits", "quiet_hypothesis", "false_alarms", "quiet_complement")


@dataclass(frozen=True)
class FrequencyTree:
    """Three-row natural-frequency decomposition of a reference population.

    Row 1 is the population; row 2 splits it by the hypothesis; row 3
    splits each side by the evidence into hits, quiet_hypothesis,
    false_alarms and quiet_complement (branch order left to right).

    counts_exact is True when all six counts came out integral without any
    rounding. rounding_residuals holds (actual - expected) per leaf in
    branch order, where expected = population x the leaf's joint
    probability; all zero unless largest-remainder rounding moved counts.
    """

    population: int
    hypothesis_count: Count
    complement_count: Count
    hits: Count
    quiet_hypothesis: Count
    false_alarms: Count
    quiet_complement: Count
    counts_exact: bool
    rounding_residuals: Tuple[Fraction, Fraction, Fraction, Fraction] = (
        Fraction(0),
        Fraction(0),
        Fraction(0),
        Fraction(0),
    )
    hypothesis_label: str = "runs on Main Street"
    evidence_label: str = "is blue"

    def __post_init__(self) -> None:
        if self.population < 1:
            raise ValueError("population must be a positive integer")
        if self.hypothesis_count + self.complement_count != self.population:
            raise ValueError("row 2 does not sum to the population")
        if self.hits + self.quiet_hypothesis != self.hypothesis_count:
            raise ValueError("hypothesis leaves do not sum to the hypothesis count")
        if self.false_alarms + self.quiet_complement != self.complement_count:
            raise ValueError("complement leaves do not sum to the complement count")
        if any(leaf < 0 for leaf in self.leaves):
            raise ValueError("counts must be nonnegative")

    @property
    def leaves(self) -> Tuple[Count, Count, Count, Count]:
        return (self.hits, self.quiet_hypothesis, self.false_alarms, self.quiet_complement)


def _as_count(value: Fraction) -> Count:
    return int(value) if value.denominator == 1 else value


def apportion_largest_remainder(total: int, quotas: Sequence[Fraction]) -> list:
    """Split integer `total` into integers proportional to `quotas`.

    `quotas` must be nonnegative and sum exactly to `total`. Each quota is
    floored and the leftover units go to the largest fractional parts, ties
    to the earlier position.
    """
    floors = [int(q) for q in quotas]
    leftover = total - sum(floors)
    by_remainder = sorted(range(len(quotas)), key=lambda i: (floors[i] - quotas[i], i))
    for i in by_remainder[:leftover]:
        floors[i] += 1
    return floors


def build_tree(
    scenario: Scenario,
    population: int = 100,
    rounding: str = LARGEST_REMAINDER,
) -> FrequencyTree:
    """Materialize a scenario as counts over `population` individuals.

    Expected counts are population x the joint probabilities. When all six
    are integral the tree is exact under either policy. Otherwise
    largest-remainder apportions each parent's count between its two
    children (so conservation never breaks), while exact-rational keeps the
    counts as fractions.
    """
    if population < 1:
        raise ValueError("population must be a positive integer")
    if rounding not in ROUNDING_POLICIES:
        raise ValueError(f"unknown rounding policy {rounding!r}; expected one of {ROUNDING_POLICIES}")

    base = scenario.base_rate
    hit = scenario.hit_rate
    alarm = scenario.false_alarm_rate
    expected = (
        population * base * hit,
        population * base * (1 - hit),
        population * (1 - base) * alarm,
        population * (1 - base) * (1 - alarm),
    )
    exact = all(leaf.denominator == 1 for leaf in expected)
    labels = dict(
        hypothesis_label=scenario.hypothesis_label,
        evidence_label=scenario.evidence_label,
    )

    if exact or rounding == EXACT_RATIONAL:
        hypothesis_quota = population * base
        return FrequencyTree(
            population=population,
            hypothesis_count=_as_count(hypothesis_quota),
            complement_count=_as_count(population - hypothesis_quota),
            hits=_as_count(expected[0]),
            quiet_hypothesis=_as_count(expected[1]),
            false_alarms=_as_count(expected[2]),
            quiet_complement=_as_count(expected[3]),
            counts_exact=exact,
            **labels,
        )

    hyp, comp = apportion_largest_remainder(
        population, [population * base, population * (1 - base)]
    )
    hits, quiet_hyp = apportion_largest_remainder(hyp, [hyp * hit, hyp * (1 - hit)])
    alarms, quiet_comp = apportion_largest_remainder(comp, [comp * alarm, comp * (1 - alarm)])
    actual = (hits, quiet_hyp, alarms, quiet_comp)
    return FrequencyTree(
        population=population,
        hypothesis_count=hyp,
        complement_count=comp,
        hits=hits,
        quiet_hypothesis=quiet_hyp,
        false_alarms=alarms,
        quiet_complement=quiet_comp,
        counts_exact=False,
        rounding_residuals=tuple(Fraction(a) - e for a, e in zip(actual, expected)),
        **labels,
    )


def posterior_from_tree(tree: FrequencyTree) -> Probability:
    """The two-number shortcut: hits / (hits + false alarms)."""
    total = tree.hits + tree.false_alarms
    if total == 0:
        raise DegenerateEvidence("tree has no hits and no false alarms")
    return Probability(Fraction(tree.hits) / Fraction(total))


def minimal_integral_population(scenario: Scenario, cap: int) -> Optional[int]:
    """Smallest population <= cap whose four leaf counts are all integral.

    Returns None when no such population exists within the cap. The answer
    is the least common multiple of the leaf probabilities' denominators,
    since N * (a/b) is integral exactly when b divides N.
    """
    if cap < 1:
        raise ValueError("cap must be a positive integer")
    base = scenario.base_rate
    hit = scenario.hit_rate
    alarm = scenario.false_alarm_rate
    joints = (
        base * hit,
        base * (1 - hit),
        (1 - base) * alarm,
        (1 - base) * (1 - alarm),
    )
    needed = math.lcm(*(joint.denominator for joint in joints))
    return needed if needed <= cap else None
