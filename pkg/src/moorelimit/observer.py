"""POVM-equipped observers and the observable-dependent exchange symmetry.

An observer is a named, finite set of POVMs over one environment dimension:
whatever its POVMs cannot resolve can be exchanged without changing any
recorded statistics.  The module covers both the quantum form of that
statement (lifting a POVM over extra degrees of freedom it is blind to) and
its bench-top caricature, a saturating integer-count radiation detector that
reads the same number for distinct sources.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Union

import numpy as np

from .quantum import (
    DensityOperator,
    DimensionError,
    Effect,
    OutcomeDistribution,
    Povm,
    TAU_NUM,
    born_distribution,
)


class StructureError(ValueError):
    """Two statistics maps are not comparable (names or outcomes differ)."""


@dataclass(frozen=True)
class ObserverModel:
    """A finite collection of named POVMs, all over the same environment dimension."""

    env_dim: int
    povms: Mapping[str, Povm]

    def __post_init__(self):
        if self.env_dim < 1:
            raise DimensionError("environment dimension must be >= 1")
        povms = dict(self.povms)
        if not povms:
            raise ValueError("an observer carries at least one POVM")
        for name, povm in povms.items():
            if povm.dim != self.env_dim:
                raise DimensionError(
                    f"POVM {name!r} has dim {povm.dim}, observer expects {self.env_dim}"
                )
        object.__setattr__(self, "povms", MappingProxyType(povms))


@dataclass(frozen=True)
class SourceConfig:
    """A point radiation source: activity in decays/s, distance in cm."""

    activity: float
    distance: float
    photon_yield: float = 1.0

    def __post_init__(self):
        if self.activity <= 0 or self.distance <= 0 or self.photon_yield <= 0:
            raise ValueError("source parameters must be strictly positive")


@dataclass(frozen=True)
class DetectorConfig:
    """A counting detector: circular aperture (cm), efficiency, integer saturation."""

    aperture_diameter: float
    efficiency: float
    saturation: int = 100

    def __post_init__(self):
        if self.aperture_diameter <= 0:
            raise ValueError("aperture diameter must be positive")
        if not 0 < self.efficiency <= 1:
            raise ValueError("efficiency must be in (0, 1]")
        if self.saturation < 1:
            raise ValueError("saturation must be >= 1 count/s")


@dataclass(frozen=True)
class StatisticsComparison:
    """Result of matching two statistics maps probability by probability."""

    indistinguishable: bool
    max_deviation: float
    at_povm: str
    at_label: Union[str, int]


@dataclass(frozen=True)
class ExchangeReport:
    """Two source configurations seen through one detector."""

    source_a: SourceConfig
    source_b: SourceConfig
    detector: DetectorConfig
    outcome_a: int
    outcome_b: int
    records_equal: bool
    configs_identical: bool


def lift_povm(povm: Povm, extra_dim: int) -> Povm:
    """Extend each effect as E -> E tensor I over degrees of freedom the POVM ignores.

    Born statistics through the lifted POVM cannot depend on the extra factor:
    trace((E tensor I)(rho tensor sigma)) = trace(E rho).
    """
    if extra_dim < 1:
        raise DimensionError("extra dimension must be >= 1")
    eye = np.eye(extra_dim)
    effects = tuple(Effect(np.kron(e.matrix, eye)) for e in povm.effects)
    return Povm(effects=effects, labels=povm.labels)


def outcome_statistics(
    rho: DensityOperator, observer: ObserverModel
) -> dict[str, OutcomeDistribution]:
    """Born distribution of every POVM the observer carries."""
    if rho.dim != observer.env_dim:
        raise DimensionError(
            f"state dim {rho.dim} != observer environment dim {observer.env_dim}"
        )
    return {name: born_distribution(rho, povm) for name, povm in observer.povms.items()}


def indistinguishable(
    stats_a: Mapping[str, OutcomeDistribution],
    stats_b: Mapping[str, OutcomeDistribution],
    tolerance: float = TAU_NUM,
) -> StatisticsComparison:
    """Whether two statistics maps agree within tolerance, and where they differ most."""
    if set(stats_a) != set(stats_b):
        raise StructureError(
            f"POVM names differ: {sorted(map(str, stats_a))} vs {sorted(map(str, stats_b))}"
        )
    worst = -1.0
    at_povm = at_label = None
    for name, dist_a in stats_a.items():
        dist_b = stats_b[name]
        if dist_a.labels != dist_b.labels:
            raise StructureError(f"outcome labels differ under POVM {name!r}")
        for label, p_a, p_b in zip(dist_a.labels, dist_a.probabilities, dist_b.probabilities):
            dev = abs(p_a - p_b)
            if dev > worst:
                worst, at_povm, at_label = dev, name, label
    return StatisticsComparison(
        indistinguishable=worst <= tolerance,
        max_deviation=worst,
        at_povm=at_povm,
        at_label=at_label,
    )


def expected_count_rate(source: SourceConfig, detector: DetectorConfig) -> float:
    """Expected detector rate in counts/s, before quantization and saturation.

    Point-source flux through a circular aperture; the expression order is
    fixed so that scaling (activity, distance) by (c^2, c) cancels exactly.
    """
    flux = source.activity * source.photon_yield / (4.0 * math.pi * source.distance**2)
    area = math.pi * (detector.aperture_diameter / 2.0) ** 2
    return flux * area * detector.efficiency


def geiger_outcome(source: SourceConfig, detector: DetectorConfig) -> int:
    """The integer the detector records: expected rate, rounded half-up, saturated.

    Deterministic by design; record equality between distinct sources is then
    an exact statement rather than a statistical one.
    """
    rate = expected_count_rate(source, detector)
    return min(int(math.floor(rate + 0.5)), detector.saturation)


def sample_geiger_counts(
    source: SourceConfig,
    detector: DetectorConfig,
    n_samples: int,
    rng: np.random.Generator,
) -> list[int]:
    """Illustrative Poisson-sampled counts, clamped at saturation."""
    rate = expected_count_rate(source, detector)
    return [min(int(k), detector.saturation) for k in rng.poisson(rate, size=n_samples)]


def exchange_witness(
    config_a: SourceConfig, config_b: SourceConfig, detector: DetectorConfig
) -> ExchangeReport:
    """Compare the records two source configurations leave on one detector.

    Equal records from distinct configurations exhibit the exchange symmetry:
    nothing in the observer's data says which physical configuration produced it.
    """
    outcome_a = geiger_outcome(config_a, detector)
    outcome_b = geiger_outcome(config_b, detector)
    return ExchangeReport(
        source_a=config_a,
        source_b=config_b,
        detector=detector,
        outcome_a=outcome_a,
        outcome_b=outcome_b,
        records_equal=outcome_a == outcome_b,
        configs_identical=config_a == config_b,
    )
