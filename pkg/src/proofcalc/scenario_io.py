"""Line-oriented scenario documents.

The format is a minimal `key = value` file: one pair per line, `#` starts
a comment, blank lines are ignored. Rates accept decimals ("0.4"),
percentages ("40%") and fractions ("2/5"), all converted exactly to
rationals so the end-to-end arithmetic stays rational.

Recognized keys: version, base_rate, hit_rate, false_alarm_rate,
population, threshold, hypothesis_label, evidence_label. The three rates
are required; everything else is optional (version defaults to 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from .core import Probability, Scenario

FORMAT_VERSION = 1

_RATE_KEYS = ("base_rate", "hit_rate", "false_alarm_rate")
_KEYS = ("version",) + _RATE_KEYS + ("population", "threshold", "hypothesis_label", "evidence_label")


class ScenarioParseError(ValueError):
    """Base class for scenario-document errors; carries a 1-based line number."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ScenarioSyntaxError(ScenarioParseError):
    pass


class DuplicateKeyError(ScenarioParseError):
    pass


class RangeError(ScenarioParseError):
    pass


class MissingKeyError(ScenarioParseError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"missing required key {key!r}")


@dataclass(frozen=True)
class ScenarioDocument:
    """A parsed scenario file: the scenario plus optional run parameters."""

    scenario: Scenario
    format_version: int = FORMAT_VERSION
    population: Optional[int] = None
    threshold: Optional[Probability] = None


def parse_rate(text: str) -> Fraction:
    """Convert '0.4', '40%' or '2/5' to an exact Fraction.

    Raises ValueError on anything else (including 'inf'/'nan').
    """
    text = text.strip()
    try:
        if text.endswith("%"):
            return Fraction(text[:-1].strip()) / 100
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in rate {text!r}") from None


def parse_scenario(text: str) -> ScenarioDocument:
    """Parse a scenario document, validating every value at its line."""
    values = {}
    lines = {}
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ScenarioSyntaxError(f"expected 'key = value', got {raw.rstrip()!r}", number)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _KEYS:
            raise ScenarioSyntaxError(f"unknown key {key!r}", number)
        if key in values:
            raise DuplicateKeyError(f"duplicate key {key!r}", number)
        if not value:
            raise ScenarioSyntaxError(f"empty value for key {key!r}", number)
        values[key] = value
        lines[key] = number

    def rate_at(key: str, value: str) -> Probability:
        try:
            rate = parse_rate(value)
        except (ValueError, ZeroDivisionError):
            raise ScenarioSyntaxError(f"cannot parse {value!r} as a rate", lines[key]) from None
        if not 0 <= rate <= 1:
            raise RangeError(f"{key} must be in [0, 1], got {value}", lines[key])
        return Probability(rate)

    def int_at(key: str, value: str) -> int:
        try:
            return int(value)
        except ValueError:
            raise ScenarioSyntaxError(f"cannot parse {value!r} as an integer", lines[key]) from None

    version = FORMAT_VERSION
    if "version" in values:
        version = int_at("version", values["version"])
        if version != FORMAT_VERSION:
            raise RangeError(
                f"unsupported format version {version}; expected {FORMAT_VERSION}", lines["version"]
            )

    for key in _RATE_KEYS:
        if key not in values:
            raise MissingKeyError(key)
    rates = {key: rate_at(key, values[key]) for key in _RATE_KEYS}

    population = None
    if "population" in values:
        population = int_at("population", values["population"])
        if population < 1:
            raise RangeError(f"population must be >= 1, got {population}", lines["population"])

    threshold = rate_at("threshold", values["threshold"]) if "threshold" in values else None

    scenario_kwargs = {}
    if "hypothesis_label" in values:
        scenario_kwargs["hypothesis_label"] = values["hypothesis_label"]
    if "evidence_label" in values:
        scenario_kwargs["evidence_label"] = values["evidence_label"]

    return ScenarioDocument(
        scenario=Scenario(**rates, **scenario_kwargs),
        format_version=version,
        population=population,
        threshold=threshold,
    )


def serialize_scenario(document: ScenarioDocument) -> str:
    """Canonical text form; parse_scenario(serialize_scenario(d)) == d."""
    scenario = document.scenario
    lines = [f"version = {document.format_version}"]
    for key in _RATE_KEYS:
        lines.append(f"{key} = {format_exact(getattr(scenario, key))}")
    if document.population is not None:
        lines.append(f"population = {document.population}")
    if document.threshold is not None:
        lines.append(f"threshold = {format_exact(document.threshold)}")
    lines.append(f"hypothesis_label = {scenario.hypothesis_label}")
    lines.append(f"evidence_label = {scenario.evidence_label}")
    return "\n".join(lines) + "\n"


def format_exact(value: Fraction) -> str:
    """Lossless text form: a terminating decimal when one exists, else 'p/q'."""
    reduced = value.denominator
    twos = fives = 0
    while reduced % 2 == 0:
        reduced //= 2
        twos += 1
    while reduced % 5 == 0:
        reduced //= 5
        fives += 1
    if reduced != 1:
        return f"{value.numerator}/{value.denominator}"
    places = max(twos, fives)
    scaled = value.numerator * 10**places // value.denominator
    sign = "-" if scaled < 0 else ""
    if places == 0:
        return f"{sign}{abs(scaled)}"
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{str(frac).zfill(places)}"


def format_sig(value: Fraction, digits: int = 6) -> str:
    """Decimal form rounded to `digits` significant figures, exactly."""
    if value == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient.normalize(), "f")
