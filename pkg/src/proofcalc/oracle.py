"""Independent checks of the analytic posterior.

Two routes that never touch the conditional-probability formula:

* enumerate_posterior lays out a concrete population individual by
  individual and counts.
* monte_carlo_posterior samples individuals with a seeded deterministic
  generator and reports the conditioned frequency with a binomial
  standard error.

The random source is SplitMix64 used as a counter-based generator: draw
`i` for seed `s` is mix64(s + (i+1) * 0x9E3779B97F4A7C15), and a uniform
is the top 53 bits scaled by 2^-53. Sample j consumes draws 2j (hypothesis
attribute) and 2j+1 (evidence attribute), with the rates compared as IEEE
doubles. That mapping is the reproducibility contract: results depend only
on (scenario, samples, seed), on every platform, regardless of block size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import DegenerateEvidence, Probability, Scenario

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_MIX_1 = 0xBF58476D1CE4E5B9
_MIX_2 = 0x94D049BB133111EB
_MASK_64 = (1 << 64) - 1

_BLOCK_SAMPLES = 1 << 18


class NonIntegralCounts(ValueError):
    """The population does not apportion into whole individuals."""


class NoConditionedSamples(DegenerateEvidence):
    """No Monte Carlo draw satisfied the evidence; the estimate is undefined."""


def splitmix64(seed: int, index: int) -> int:
    """The index-th 64-bit output of the SplitMix64 stream for `seed`."""
    z = ((seed & _MASK_64) + (index + 1) * GOLDEN_GAMMA) & _MASK_64
    z = ((z ^ (z >> 30)) * _MIX_1) & _MASK_64
    z = ((z ^ (z >> 27)) * _MIX_2) & _MASK_64
    return z ^ (z >> 31)


def uniform53(seed: int, index: int) -> float:
    """The index-th uniform double in [0, 1), carrying 53 random bits."""
    return (splitmix64(seed, index) >> 11) * 2.0**-53


def _uniform_block(seed: int, start: int, count: int) -> np.ndarray:
    """uniform53(seed, start), ..., uniform53(seed, start + count - 1), vectorized."""
    indices = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):  # wraparound mod 2^64 is the algorithm
        z = np.uint64(seed & _MASK_64) + indices * np.uint64(GOLDEN_GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX_1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX_2)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass(frozen=True)
class SimResult:
    """Monte Carlo estimate of the posterior plus its sampling uncertainty."""

    estimate: Probability
    standard_error: float
    samples_total: int
    samples_conditioned: int
    seed: int

    def __post_init__(self) -> None:
        if not 0 < self.samples_conditioned <= self.samples_total:
            raise ValueError("need 0 < samples_conditioned <= samples_total")
        if self.standard_error < 0:
            raise ValueError("standard_error must be nonnegative")


def enumerate_posterior(scenario: Scenario, population: int) -> Probability:
    """Posterior by counting an explicit population, no formula involved.

    Builds the full list of individuals with their (hypothesis, evidence)
    attributes from the exact leaf counts, keeps the ones showing the
    evidence, and returns the fraction of those with the hypothesis.

    Raises NonIntegralCounts when the population does not split into whole
    individuals, and DegenerateEvidence when nobody shows the evidence.
    """
    if population < 1:
        raise ValueError("population must be a positive integer")
    base = scenario.base_rate
    hit = scenario.hit_rate
    alarm = scenario.false_alarm_rate
    counts = {
        (True, True): population * base * hit,
        (True, False): population * base * (1 - hit),
        (False, True): population * (1 - base) * alarm,
        (False, False): population * (1 - base) * (1 - alarm),
    }
    if any(count.denominator != 1 for count in counts.values()):
        raise NonIntegralCounts(
            f"population {population} does not apportion this scenario into whole individuals"
        )
    individuals = [
        attributes for attributes, count in counts.items() for _ in range(int(count))
    ]
    with_evidence = [hypothesis for hypothesis, evidence in individuals if evidence]
    if not with_evidence:
        raise DegenerateEvidence("no individual in the population shows the evidence")
    return Probability(Fraction(sum(with_evidence), len(with_evidence)))


def monte_carlo_posterior(scenario: Scenario, samples: int, seed: int = 0) -> SimResult:
    """Seeded simulation of the scenario, conditioned on the evidence.

    Each sample draws the hypothesis attribute with probability base_rate,
    then the evidence attribute with hit_rate or false_alarm_rate
    accordingly. The estimate is the conditioned frequency of the
    hypothesis; the standard error is the binomial sqrt(p(1-p)/n) over the
    conditioned draws.

    Raises NoConditionedSamples when no draw satisfied the evidence.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    base = float(scenario.base_rate)
    hit = float(scenario.hit_rate)
    alarm = float(scenario.false_alarm_rate)

    conditioned = hypothesis_hits = 0
    done = 0
    while done < samples:
        block = min(_BLOCK_SAMPLES, samples - done)
        uniforms = _uniform_block(seed, 2 * done, 2 * block)
        u_hypothesis = uniforms[0::2]
        u_evidence = uniforms[1::2]
        has_hypothesis = u_hypothesis < base
        has_evidence = u_evidence < np.where(has_hypothesis, hit, alarm)
        conditioned += int(np.count_nonzero(has_evidence))
        hypothesis_hits += int(np.count_nonzero(has_evidence & has_hypothesis))
        done += block

    if conditioned == 0:
        raise NoConditionedSamples(
            f"none of the {samples} samples satisfied the evidence; cannot condition"
        )
    frequency = hypothesis_hits / conditioned
    return SimResult(
        estimate=Probability(hypothesis_hits, conditioned),
        standard_error=math.sqrt(frequency * (1.0 - frequency) / conditioned),
        samples_total=samples,
        samples_conditioned=conditioned,
        seed=seed,
    )
