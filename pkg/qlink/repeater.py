"""
Entanglement-distribution times of first-generation repeater chains.

Three architectures are compared over the same ground distance `L`, split into `2^n` segments
of length `L_0`:

- DLCZ: atomic-ensemble memories at the nodes, probabilistic pair creation with probability
  `p`, entanglement connection by single-photon detection. Optionally multiplexed over `N`
  temporal modes.
- hybrid QND repeater: photon-pair sources on satellites, QND-heralding memories on the
  ground.
- full-space QND repeater: sources and memories on satellites, only the two end users on the
  ground.

The times returned here are also the storage times the memories need to hold a state.
"""

import enum
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Literal

from scipy.constants import c as SPEED_OF_LIGHT

from ._utils import parallel_map
from ._validators import Validators
from .channel import (
    Aperture,
    AtmosphereModel,
    BeamParams,
    DetectorModel,
    PointingModel,
    hop_transmission,
)
from .exceptions import SWEEP_ERRORS, DegenerateInputError, ValidationError
from .geometry import (
    Architecture,
    ConstellationLayout,
    EarthModel,
    OrbitConfig,
    constellation_layout,
)

logger = logging.getLogger(__name__)

validate = Validators()

MemorySplit = Literal["balanced", "per-stage"]

REPEATER_COLUMNS = (
    "T_dlcz_single_s",
    "T_dlcz_multimode_s",
    "T_hybrid_qnd_s",
    "T_space_qnd_s",
    "p0_avg_space",
    "eta_tr_max",
    "N_mod",
)

@dataclass(frozen=True)
class RepeaterConfig:
    """
    Efficiencies and rates of a repeater chain.

    The combined memory efficiency is always `read_efficiency * write_efficiency`; use
    `from_memory_efficiency` to start from the combined value.
    """

    nesting_level: int = 3
    source_rate_hz: float = 20e6
    source_efficiency: float = 1.0
    pair_probability: float = 0.01
    qnd_efficiency: float = 0.5
    write_efficiency: float = math.sqrt(0.9)
    read_efficiency: float = math.sqrt(0.9)
    detector: DetectorModel = field(default_factory=lambda: DetectorModel(efficiency=0.9))
    temporal_modes: int = 1

    def __post_init__(self):
        validate.integer_at_least("repeater.nesting_level", self.nesting_level, 0)
        validate.positive("repeater.source_rate_hz", self.source_rate_hz)
        validate.probability("repeater.source_efficiency", self.source_efficiency)
        validate.probability("repeater.pair_probability", self.pair_probability)
        validate.probability("repeater.qnd_efficiency", self.qnd_efficiency)
        validate.probability("repeater.write_efficiency", self.write_efficiency)
        validate.probability("repeater.read_efficiency", self.read_efficiency)
        validate.integer_at_least("repeater.temporal_modes", self.temporal_modes, 1)

    @property
    def memory_efficiency(self) -> float:
        return self.read_efficiency * self.write_efficiency

    @classmethod
    def from_memory_efficiency(
        cls, eta_mem: float, split: MemorySplit = "balanced", **kwargs
    ) -> "RepeaterConfig":
        """
        Build a configuration from a combined memory efficiency.

        Args:
            eta_mem (float): Combined memory efficiency.
            split (str): "balanced" gives read and write efficiencies of `sqrt(eta_mem)` each,
                so their product is `eta_mem`. "per-stage" applies `eta_mem` to both the write
                and the read stage.
            **kwargs: Any other field of `RepeaterConfig`.

        Raises:
            ValidationError: Unknown split or efficiency outside [0, 1].
        """
        validate.probability("memory.efficiency", eta_mem)

        if split == "balanced":
            stage = math.sqrt(eta_mem)
        elif split == "per-stage":
            stage = eta_mem
        else:
            raise ValidationError(
                f"memory.split must be 'balanced' or 'per-stage', got {split!r}."
            )

        return cls(write_efficiency=stage, read_efficiency=stage, **kwargs)


@dataclass(frozen=True)
class RepeaterResult:
    total_time_s: float
    p0_avg: float = math.nan
    required_modes: float = math.nan

    def __post_init__(self):
        if not self.total_time_s > 0:
            raise DegenerateInputError(
                f"Distribution time must be > 0, got {self.total_time_s}."
            )

    @property
    def required_storage_s(self) -> float:
        return self.total_time_s

    @property
    def required_modes_ceil(self) -> int | None:
        return None if math.isnan(self.required_modes) else math.ceil(self.required_modes)


def hop_transmissions(
    layout: ConstellationLayout,
    beam: BeamParams,
    rx: Aperture,
    atm: AtmosphereModel,
    pointing: PointingModel = PointingModel(),
) -> list[float]:
    return [hop_transmission(hop, beam, rx, atm, pointing).eta_total for hop in layout.hops]


def avg_two_photon_transmission(
    layout: ConstellationLayout,
    beam: BeamParams,
    rx: Aperture,
    atm: AtmosphereModel,
    pointing: PointingModel = PointingModel(),
) -> float:
    """
    Average probability that both photons of a pair reach the two ends of their segment.

    Each segment transmits the product of its two hop transmissions; the result is the
    arithmetic mean over the segments.
    """
    etas = hop_transmissions(layout, beam, rx, atm, pointing)
    pairs = [etas[2 * i] * etas[2 * i + 1] for i in range(layout.segment_count)]
    return math.fsum(pairs) / len(pairs)


def mean_hop_transmission(
    layout: ConstellationLayout,
    beam: BeamParams,
    rx: Aperture,
    atm: AtmosphereModel,
    pointing: PointingModel = PointingModel(),
) -> float:
    etas = hop_transmissions(layout, beam, rx, atm, pointing)
    return math.fsum(etas) / len(etas)


def max_hop_transmission(
    layout: ConstellationLayout,
    beam: BeamParams,
    rx: Aperture,
    atm: AtmosphereModel,
    pointing: PointingModel = PointingModel(),
) -> float:
    return max(hop_transmissions(layout, beam, rx, atm, pointing))


def dlcz_time(
    cfg: RepeaterConfig, layout: ConstellationLayout, eta_t: float
) -> RepeaterResult:
    """
    Time to distribute one entangled pair over a DLCZ chain.

    `T = 3^(n+1) (L_0/c) prod_k(2^k - (2^k - 1) eta_m eta_d) / (eta_d eta_t p (eta_m eta_d)^(n+2))`,
    divided by the number of temporal modes.

    Examples:
        >>> from qlink.geometry import OrbitConfig, constellation_layout
        >>> layout = constellation_layout(20000, 3, OrbitConfig(400))
        >>> cfg = RepeaterConfig.from_memory_efficiency(0.9)
        >>> round(dlcz_time(cfg, layout, 0.0113).total_time_s, -3)
        83000.0

    Args:
        cfg (RepeaterConfig): Chain configuration. Its nesting level must match the layout.
        layout (ConstellationLayout): Geometry giving `L_0`.
        eta_t (float): Transmission of one hop.

    Raises:
        DegenerateInputError: `p`, `eta_t` or `eta_m * eta_d` is zero.
        ValidationError: Nesting levels disagree or `eta_t` is not a probability.
    """
    validate.probability("eta_t", eta_t)
    _check_nesting(cfg, layout)

    n = cfg.nesting_level
    eta_d = cfg.detector.efficiency
    eta_md = cfg.memory_efficiency * eta_d

    for quantity, value in (
        ("pair probability", cfg.pair_probability),
        ("hop transmission", eta_t),
        ("memory-detector efficiency", eta_md),
    ):
        if value == 0.0:
            raise DegenerateInputError(
                DegenerateInputError.diverging_msg.format(
                    quantity="DLCZ distribution time", factor=quantity
                )
            )

    product = math.prod(2**k - (2**k - 1) * eta_md for k in range(1, n + 1))
    segment_s = layout.segment_length_km * 1e3 / SPEED_OF_LIGHT

    total = (
        3 ** (n + 1)
        * segment_s
        * product
        / (eta_d * eta_t * cfg.pair_probability * eta_md ** (n + 2))
    )

    return RepeaterResult(total_time_s=total / cfg.temporal_modes)


def qnd_time(cfg: RepeaterConfig, p0_avg: float) -> RepeaterResult:
    """
    Time to distribute one entangled pair over a QND-heralded repeater chain.

    `T = 1 / (R_s eta_s P0 eta_q^2 eta_w^2 ((2/3) eta_r^2 eta_d^2 / 2)^n)`

    Examples:
        >>> cfg = RepeaterConfig(nesting_level=0, source_rate_hz=1.0, qnd_efficiency=1.0,
        ...                      write_efficiency=1.0, read_efficiency=1.0)
        >>> qnd_time(cfg, 1.0).total_time_s
        1.0

    Raises:
        DegenerateInputError: One of the factors is zero.
    """
    validate.probability("p0_avg", p0_avg)

    eta_d = cfg.detector.efficiency
    swap = (2.0 / 3.0) * (cfg.read_efficiency**2 * eta_d**2 / 2.0)
    factors = {
        "source efficiency": cfg.source_efficiency,
        "average two-photon transmission": p0_avg,
        "QND efficiency": cfg.qnd_efficiency,
        "write efficiency": cfg.write_efficiency,
    }
    if cfg.nesting_level > 0:
        factors["swapping efficiency"] = swap

    for name, value in factors.items():
        if value == 0.0:
            raise DegenerateInputError(
                DegenerateInputError.diverging_msg.format(
                    quantity="QND distribution time", factor=name
                )
            )

    rate = (
        cfg.source_rate_hz
        * cfg.source_efficiency
        * p0_avg
        * cfg.qnd_efficiency**2
        * cfg.write_efficiency**2
        * swap**cfg.nesting_level
    )

    return RepeaterResult(total_time_s=1.0 / rate, p0_avg=p0_avg)


def required_modes(
    source_rate_hz: float,
    source_efficiency: float,
    eta_tr_max: float,
    segment_length_km: float,
) -> float:
    """
    Temporal modes a memory must store to absorb every photon arriving while the heralding
    signal crosses one segment.

    Examples:
        >>> round(required_modes(20e6, 1.0, 2.19e-3, 2500), 2)
        365.25
    """
    validate.non_negative("source_rate_hz", source_rate_hz)
    validate.non_negative("source_efficiency", source_efficiency)
    validate.non_negative("eta_tr_max", eta_tr_max)
    validate.non_negative("segment_length_km", segment_length_km)

    return (
        source_rate_hz
        * source_efficiency
        * eta_tr_max
        * segment_length_km
        * 1e3
        / SPEED_OF_LIGHT
    )


def _check_nesting(cfg: RepeaterConfig, layout: ConstellationLayout) -> None:
    if cfg.nesting_level != layout.nesting_level:
        raise ValidationError(
            f"repeater.nesting_level {cfg.nesting_level} does not match the layout "
            f"nesting level {layout.nesting_level}."
        )


@dataclass(frozen=True)
class RepeaterSetup:
    """
    Everything needed to evaluate the four architectures at one point of a sweep.

    Defaults reproduce the distribution-time comparison: 5 urad divergence, 0.5 m apertures,
    20000 km, three nesting levels, 90 % memory efficiency and 100 DLCZ temporal modes.
    """

    ground_distance_km: float = 20000.0
    orbit: OrbitConfig = OrbitConfig()
    earth: EarthModel = EarthModel()
    beam: BeamParams = field(default_factory=lambda: BeamParams.from_divergence(5e-6))
    rx: Aperture = Aperture(0.5)
    atm: AtmosphereModel = AtmosphereModel()
    pointing: PointingModel = PointingModel()
    config: RepeaterConfig = RepeaterConfig()
    dlcz_modes: int = 100
    memory_split: MemorySplit = "balanced"

    def __post_init__(self):
        validate.positive("geometry.ground_distance_km", self.ground_distance_km)
        validate.integer_at_least("dlcz.temporal_modes", self.dlcz_modes, 1)

    def layout(self, architecture: Architecture) -> ConstellationLayout:
        return constellation_layout(
            self.ground_distance_km,
            self.config.nesting_level,
            self.orbit,
            self.earth,
            architecture,
        )


class SweepVariable(str, enum.Enum):
    DISTANCE_KM = "distance_km"
    DIVERGENCE_URAD = "divergence_urad"
    MEMORY_EFFICIENCY = "memory_efficiency"


def setup_at(setup: RepeaterSetup, variable: SweepVariable, value: float) -> RepeaterSetup:
    """Copy of `setup` with the swept variable set to `value`."""
    if variable is SweepVariable.DISTANCE_KM:
        return replace(setup, ground_distance_km=value)

    if variable is SweepVariable.DIVERGENCE_URAD:
        beam = BeamParams.from_divergence(
            value * 1e-6, setup.beam.wavelength_m, setup.beam.m_squared
        )
        return replace(setup, beam=beam)

    config = setup.config
    memory = RepeaterConfig.from_memory_efficiency(value, setup.memory_split)
    return replace(
        setup,
        config=replace(
            config,
            write_efficiency=memory.write_efficiency,
            read_efficiency=memory.read_efficiency,
        ),
    )


def _guarded(label: str, compute, *args) -> float:
    try:
        return compute(*args)
    except SWEEP_ERRORS as error:
        logger.debug("%s is undefined: %s", label, error)
        return math.nan


def _dlcz(setup: RepeaterSetup, modes: int) -> float:
    layout = setup.layout(Architecture.FULL_SPACE)
    eta_t = mean_hop_transmission(layout, setup.beam, setup.rx, setup.atm, setup.pointing)
    cfg = replace(setup.config, temporal_modes=modes)
    return dlcz_time(cfg, layout, eta_t).total_time_s


def _qnd(setup: RepeaterSetup, architecture: Architecture) -> float:
    layout = setup.layout(architecture)
    p0_avg = avg_two_photon_transmission(
        layout, setup.beam, setup.rx, setup.atm, setup.pointing
    )
    return qnd_time(setup.config, p0_avg).total_time_s


def _p0_space(setup: RepeaterSetup) -> float:
    layout = setup.layout(Architecture.FULL_SPACE)
    return avg_two_photon_transmission(
        layout, setup.beam, setup.rx, setup.atm, setup.pointing
    )


def _eta_tr_max(setup: RepeaterSetup) -> float:
    layout = setup.layout(Architecture.FULL_SPACE)
    return max_hop_transmission(layout, setup.beam, setup.rx, setup.atm, setup.pointing)


def qnd_chain(setup: RepeaterSetup, architecture: Architecture) -> RepeaterResult:
    """QND distribution time of a setup, with its average transmission and required modes."""
    layout = setup.layout(architecture)
    p0_avg = avg_two_photon_transmission(
        layout, setup.beam, setup.rx, setup.atm, setup.pointing
    )
    eta_max = max_hop_transmission(layout, setup.beam, setup.rx, setup.atm, setup.pointing)
    result = qnd_time(setup.config, p0_avg)
    modes = required_modes(
        setup.config.source_rate_hz,
        setup.config.source_efficiency,
        eta_max,
        layout.segment_length_km,
    )
    return replace(result, required_modes=modes)


def repeater_point(setup: RepeaterSetup) -> tuple[float, ...]:
    """
    Evaluate one sweep point.

    Returns:
        tuple: Values in the order of `REPEATER_COLUMNS`. Undefined values are `nan`.
    """
    eta_max = _guarded("eta_tr_max", _eta_tr_max, setup)
    segment_km = setup.ground_distance_km / 2**setup.config.nesting_level
    modes = (
        math.nan
        if math.isnan(eta_max)
        else required_modes(
            setup.config.source_rate_hz, setup.config.source_efficiency, eta_max, segment_km
        )
    )

    return (
        _guarded("DLCZ single-mode time", _dlcz, setup, 1),
        _guarded("DLCZ multimode time", _dlcz, setup, setup.dlcz_modes),
        _guarded("hybrid QND time", _qnd, setup, Architecture.HYBRID_GROUND),
        _guarded("full-space QND time", _qnd, setup, Architecture.FULL_SPACE),
        _guarded("average two-photon transmission", _p0_space, setup),
        eta_max,
        modes,
    )


def sweep_repeater(
    setup: RepeaterSetup,
    variable: SweepVariable,
    values,
    jobs: int = 1,
) -> list[tuple[float, ...]]:
    """
    Distribution times of all architectures along one swept variable.

    Args:
        setup (RepeaterSetup): Values of every parameter that is not swept.
        variable (SweepVariable): Distance, divergence or memory efficiency.
        values (Iterable[float]): Abscissa points.
        jobs (int): Worker processes. Rows are always returned in input order.

    Returns:
        list: One row per point, the abscissa followed by the `REPEATER_COLUMNS` values.

    Raises:
        ValidationError: A swept value is invalid for its parameter.
    """
    validate.integer_at_least("jobs", jobs, 1)
    abscissa = [float(value) for value in values]
    setups = [setup_at(setup, variable, value) for value in abscissa]

    logger.info("Sweeping %s over %d points", variable.value, len(setups))

    rows = parallel_map(repeater_point, setups, jobs)

    return [(x, *row) for x, row in zip(abscissa, rows)]
