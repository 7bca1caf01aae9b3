"""
Secret-key rates of satellite QKD with and without quantum memories.

Three protocols share one satellite above the midpoint between Alice and Bob:

- E91: the satellite sends both photons of an entangled pair down, no memory involved.
- uplink memory-assisted MDI-QKD: Alice and Bob send photons up; the satellite heralds their
  arrival with a QND measurement, stores them and runs a Bell-state measurement once both
  memories are loaded. Heralding is local, so the protocol runs at the source rate.
- downlink memory-assisted MDI-QKD: the satellite keeps one photon of each pair in memory and
  sends the other down; the ground detection has to be signalled back, so every heralding
  round lasts a round trip `2 L_LoS / c`. `N` temporal modes and `m` memory pairs multiply the
  attempts per round.

All rates are bounded by

    R = (Y / 2) [1 - h(e_X) - f h(e_Z)]

clamped at zero. The way `Y`, `e_X` and `e_Z` follow from loading statistics, dephasing and
noise is the model ledger documented in `docs/protocols.md`.
"""

import enum
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Literal

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.special import entr

from ._utils import parallel_map
from ._validators import Validators
from .channel import (
    Aperture,
    AtmosphereModel,
    BeamParams,
    ChannelBudget,
    DetectorModel,
    PointingModel,
    StrayLightModel,
    gate_noise_probability,
    hop_transmission,
)
from .exceptions import SWEEP_ERRORS, DomainError, ValidationError
from .geometry import EarthModel, LinkGeometry, OrbitConfig, los_midpoint_geometry

logger = logging.getLogger(__name__)

validate = Validators()

MODEL_LEDGER_VERSION = "1"

# above this many terms the power sums switch to their closed forms
DIRECT_SUM_LIMIT = 100_000


class Protocol(str, enum.Enum):
    E91 = "e91"
    UPLINK = "uplink"
    DOWNLINK = "downlink"


@dataclass(frozen=True)
class MemoryModel:
    dephasing_time_s: float = 5e-3
    write_efficiency: float = math.sqrt(0.8)
    read_efficiency: float = math.sqrt(0.8)
    temporal_modes: int = 1
    pairs: int = 1
    qnd_efficiency: float = 0.5

    def __post_init__(self):
        validate.positive("memory.dephasing_time_s", self.dephasing_time_s)
        validate.probability("memory.write_efficiency", self.write_efficiency)
        validate.probability("memory.read_efficiency", self.read_efficiency)
        validate.integer_at_least("memory.temporal_modes", self.temporal_modes, 1)
        validate.integer_at_least("memory.pairs", self.pairs, 1)
        validate.probability("memory.qnd_efficiency", self.qnd_efficiency)

    @property
    def efficiency(self) -> float:
        return self.write_efficiency * self.read_efficiency

    @classmethod
    def from_efficiency(
        cls,
        eta_mem: float,
        split: Literal["balanced", "per-stage"] = "balanced",
        **kwargs,
    ) -> "MemoryModel":
        """Build a memory whose combined write-read efficiency is `eta_mem` (see `split`)."""
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
class ProtocolParams:
    """
    Source, error-correction and calibration parameters shared by all protocols.

    Args:
        source_rate_hz (float): Repetition rate of the source.
        ec_inefficiency (float): Error-correction inefficiency `f`, at least 1.
        misalignment_error (float): Basis-independent error floor `e_mis`.
        bsm_success (float): Success probability of the linear-optics Bell-state measurement.
        coupling_loss_db (float): Lumped telescope-to-detector loss of every hop.
        uplink_penalty_db (float): Extra loss of uplink hops for turbulence, off by default.
        memory_capture_loss_db (float): Loss of capturing a received uplink photon into the
            satellite memory ahead of the QND herald. Calibrated so the uplink key ends near
            1300 km and needs more than 2 ms of storage at 1000 km.
        detector (DetectorModel): Ground detectors.
        stray (StrayLightModel, optional): Sky background at the receivers.
    """

    source_rate_hz: float = 20e6
    ec_inefficiency: float = 1.16
    misalignment_error: float = 0.015
    bsm_success: float = 0.5
    coupling_loss_db: float = 12.0
    uplink_penalty_db: float = 0.0
    memory_capture_loss_db: float = 11.5
    detector: DetectorModel = field(
        default_factory=lambda: DetectorModel(efficiency=0.7, dark_prob_per_window=1e-6)
    )
    stray: StrayLightModel | None = None

    def __post_init__(self):
        validate.positive("protocol.source_rate_hz", self.source_rate_hz)
        validate.at_least("protocol.ec_inefficiency", self.ec_inefficiency, 1.0)
        validate.probability("protocol.misalignment_error", self.misalignment_error)

        if self.misalignment_error > 0.5:
            raise ValidationError(
                f"protocol.misalignment_error must lie in [0, 0.5], got {self.misalignment_error}."
            )

        validate.probability("protocol.bsm_success", self.bsm_success)
        validate.non_negative("protocol.coupling_loss_db", self.coupling_loss_db)
        validate.non_negative("protocol.uplink_penalty_db", self.uplink_penalty_db)
        validate.non_negative("protocol.memory_capture_loss_db", self.memory_capture_loss_db)


@dataclass(frozen=True)
class SatelliteLink:
    """
    Optical hops between the midpoint satellite and the two ground stations.

    The receiving telescope is `receiver` in both directions; `sender` only bounds the beam
    waist the transmitter can launch.
    """

    orbit: OrbitConfig = OrbitConfig()
    earth: EarthModel = EarthModel()
    beam: BeamParams = field(default_factory=lambda: BeamParams.from_divergence(10e-6))
    sender: Aperture = Aperture(0.15)
    receiver: Aperture = Aperture(0.5)
    atm: AtmosphereModel = AtmosphereModel()
    pointing: PointingModel = PointingModel()

    def __post_init__(self):
        if self.beam.waist_m > self.sender.radius_m:
            raise ValidationError(
                f"beam waist {self.beam.waist_m:.4g} m does not fit the sender aperture "
                f"of radius {self.sender.radius_m} m."
            )

    def hop(self, ground_distance_km: float) -> tuple[LinkGeometry, ChannelBudget]:
        """
        Geometry and budget of one station-satellite hop.

        Raises:
            BelowHorizonError: The satellite is not visible from the stations.
        """
        link, _ = los_midpoint_geometry(ground_distance_km, self.orbit, self.earth)
        return link, hop_transmission(link, self.beam, self.receiver, self.atm, self.pointing)


@dataclass(frozen=True)
class WaitStats:
    """
    Loading statistics of two memories filled by independent geometric processes.

    Args:
        expected_uses (float): Mean number of uses until both are loaded, given that the
            first one did not wait longer than the cutoff.
        dephasing_factor (float): Mean of `exp(-decay * waiting)` over the stored qubit's
            waiting time, under the same condition.
        success_prob (float): Probability that the waiting time stays within the cutoff.
        uses_per_success (float): Mean uses spent per successful loading, counting the
            discarded attempts.
    """

    expected_uses: float
    dephasing_factor: float
    success_prob: float
    uses_per_success: float


@dataclass(frozen=True)
class KeyRateResult:
    yield_per_use: float
    qber_x: float
    qber_z: float
    attempts_per_s: float
    secret_bits_per_s: float
    expected_uses: float = 1.0
    dephasing_factor: float = 1.0

    def __post_init__(self):
        if self.secret_bits_per_s < 0:
            raise ValidationError("secret_bits_per_s must be clamped at zero.")

        for name in ("qber_x", "qber_z"):
            value = getattr(self, name)
            if not 0.0 <= value <= 0.5:
                raise ValidationError(f"{name} must lie in [0, 0.5], got {value}.")


def binary_entropy(e: float) -> float:
    """
    Binary entropy in bits, with `h(0) = h(1) = 0`.

    Examples:
        >>> binary_entropy(0.0)
        0.0

    Raises:
        DomainError: The argument is outside [0, 1].
    """
    if isinstance(e, bool) or not isinstance(e, (int, float)) or not 0.0 <= e <= 1.0:
        raise DomainError(f"Binary entropy is defined on [0, 1], got {e!r}.")

    return float((entr(e) + entr(1.0 - e)) / math.log(2.0))


def secret_key_rate(
    yield_per_use: float, qber_x: float, qber_z: float, ec_inefficiency: float
) -> float:
    """
    Secret bits per channel use, clamped at zero.

    Examples:
        >>> secret_key_rate(1.0, 0.0, 0.0, 1.16)
        0.5

    Args:
        yield_per_use (float): Probability that one use produces a raw key bit pair.
        qber_x (float): Error rate in the X basis, where dephasing shows up.
        qber_z (float): Error rate in the Z basis, corrected at cost `f h(e_Z)`.
        ec_inefficiency (float): Error-correction inefficiency `f`.
    """
    bracket = 1.0 - binary_entropy(qber_x) - ec_inefficiency * binary_entropy(qber_z)
    return max(0.0, yield_per_use / 2.0 * bracket)


def _one_minus_power(p: float, decay: float) -> tuple[float, float]:
    """Return `r = (1 - p) e^-decay` together with `1 - r`, computed without cancellation."""
    if p == 1.0:
        return 0.0, 1.0

    log_r = math.log1p(-p) - decay
    return math.exp(log_r), -math.expm1(log_r)


def _power_sums(r: float, one_minus_r: float, cutoff: int | None) -> tuple[float, float]:
    """
    `S0 = sum_{k=1..M} r^k` and `S1 = sum_{k=1..M} k r^k`, with `M` infinite when the
    cutoff is None.
    """
    if r == 0.0 or cutoff == 0:
        return 0.0, 0.0

    if cutoff is None:
        return r / one_minus_r, r / one_minus_r**2

    if cutoff <= DIRECT_SUM_LIMIT:
        k = np.arange(1, cutoff + 1, dtype=float)
        powers = np.exp(k * math.log(r))
        return float(powers.sum()), float((k * powers).sum())

    r_m = r**cutoff
    s0 = r * (1.0 - r_m) / one_minus_r
    s1 = r * (1.0 - (cutoff + 1) * r_m + cutoff * r_m * r) / one_minus_r**2
    return s0, s1


def geometric_wait_stats(
    p_a: float,
    p_b: float,
    cutoff_uses: int | None = None,
    decay_per_use: float = 0.0,
) -> WaitStats:
    """
    Statistics of `max(G_a, G_b)` and `|G_a - G_b|` for independent geometric loading times.

    The difference `D = G_a - G_b` has `P(D = k) = c q_a^k` for `k >= 0` and
    `P(D = -k) = c q_b^k` for `k >= 1`, with `c = p_a p_b / (1 - q_a q_b)`. Every quantity is
    a finite geometric series in `q_a` and `q_b`, summed in closed form.

    Examples:
        >>> stats = geometric_wait_stats(0.5, 0.5)
        >>> round(stats.expected_uses, 6)
        2.666667

    Args:
        p_a (float): Loading probability per use of the first memory.
        p_b (float): Loading probability per use of the second memory.
        cutoff_uses (int, optional): Longest waiting time kept. None keeps every outcome.
        decay_per_use (float): Dephasing exponent accumulated per use of waiting.

    Raises:
        ValidationError: A probability is outside (0, 1] or the cutoff is negative.
    """
    for name, p in (("p_a", p_a), ("p_b", p_b)):
        validate.probability(name, p)
        if p == 0.0:
            raise ValidationError(f"{name} must be > 0 for the memories to ever load.")

    if cutoff_uses is not None:
        validate.integer_at_least("cutoff_uses", cutoff_uses, 0)

    validate.non_negative("decay_per_use", decay_per_use)

    q_a, one_minus_q_a = _one_minus_power(p_a, 0.0)
    q_b, one_minus_q_b = _one_minus_power(p_b, 0.0)
    # 1 - q_a q_b = p_a + p_b - p_a p_b
    one_minus_qq = p_a + p_b - p_a * p_b
    c = p_a * p_b / one_minus_qq

    s0_a, s1_a = _power_sums(q_a, one_minus_q_a, cutoff_uses)
    s0_b, s1_b = _power_sums(q_b, one_minus_q_b, cutoff_uses)

    success = c * (1.0 + s0_a + s0_b)
    max_within = c * ((1.0 + s0_a + s0_b) / one_minus_qq + s1_a + s1_b)

    if decay_per_use == 0.0:
        damped = success
    else:
        r_a, one_minus_r_a = _one_minus_power(p_a, decay_per_use)
        r_b, one_minus_r_b = _one_minus_power(p_b, decay_per_use)
        damped = c * (
            1.0
            + _power_sums(r_a, one_minus_r_a, cutoff_uses)[0]
            + _power_sums(r_b, one_minus_r_b, cutoff_uses)[0]
        )

    expected_max = 1.0 / p_a + 1.0 / p_b - 1.0 / one_minus_qq

    return WaitStats(
        expected_uses=max_within / success,
        dephasing_factor=min(1.0, damped / success),
        success_prob=min(1.0, success),
        uses_per_success=expected_max / success,
    )


def side_transmission(
    ground_distance_km: float,
    link: SatelliteLink,
    params: ProtocolParams,
    uplink: bool = False,
) -> float:
    """Transmission of one station-satellite hop including coupling and uplink losses."""
    _, budget = link.hop(ground_distance_km)
    loss_db = params.coupling_loss_db + (params.uplink_penalty_db if uplink else 0.0)
    return budget.eta_total * 10.0 ** (-loss_db / 10.0)


def _gate_noise(link: SatelliteLink, params: ProtocolParams) -> float:
    return gate_noise_probability(
        params.detector, params.stray, link.receiver, 1.0 / params.source_rate_hz
    )


def _clamp_qber(value: float) -> float:
    return min(0.5, max(0.0, value))


def _memory_qbers(
    genuine: float, dephasing_factor: float, misalignment_error: float
) -> tuple[float, float]:
    """X and Z error rates when a fraction `genuine` of the stored pairs are real heralds."""
    qber_x = genuine * (misalignment_error + (1.0 - dephasing_factor) / 2.0)
    qber_z = genuine * misalignment_error
    noise = (1.0 - genuine) / 2.0
    return _clamp_qber(qber_x + noise), _clamp_qber(qber_z + noise)


def e91_key_rate(
    eta_a: float, eta_b: float, p_noise: float, params: ProtocolParams
) -> KeyRateResult:
    """
    Entanglement-based QKD without memories.

    Args:
        eta_a (float): Detection probability of Alice's photon, detector included.
        eta_b (float): Same for Bob.
        p_noise (float): Noise click probability per detection gate.
        params (ProtocolParams): Source rate, error floor and error correction.
    """
    validate.probability("eta_a", eta_a)
    validate.probability("eta_b", eta_b)
    validate.probability("p_noise", p_noise)

    both = eta_a * eta_b
    gain = (
        both
        + 2.0 * p_noise * (eta_a * (1.0 - eta_b) + eta_b * (1.0 - eta_a))
        + 4.0 * p_noise**2 * (1.0 - eta_a) * (1.0 - eta_b)
    )

    if gain == 0.0:
        return KeyRateResult(0.0, 0.5, 0.5, params.source_rate_hz, 0.0)

    error_gain = params.misalignment_error * both + 0.5 * (gain - both)
    qber = _clamp_qber(error_gain / gain)
    bits = secret_key_rate(gain, qber, qber, params.ec_inefficiency)

    return KeyRateResult(
        yield_per_use=gain,
        qber_x=qber,
        qber_z=qber,
        attempts_per_s=params.source_rate_hz,
        secret_bits_per_s=params.source_rate_hz * bits,
    )


def e91_rate(
    ground_distance_km: float,
    link: SatelliteLink = SatelliteLink(),
    params: ProtocolParams = ProtocolParams(),
) -> KeyRateResult:
    """
    E91 key rate between two stations `ground_distance_km` apart.

    Examples:
        >>> round(e91_rate(1000).secret_bits_per_s, 2)
        0.93
    """
    eta = side_transmission(ground_distance_km, link, params) * params.detector.efficiency
    return e91_key_rate(eta, eta, _gate_noise(link, params), params)


def uplink_load_probability(
    ground_distance_km: float,
    link: SatelliteLink,
    memory: MemoryModel,
    params: ProtocolParams,
) -> float:
    """Probability per use that a photon is heralded and written into the satellite memory."""
    side = side_transmission(ground_distance_km, link, params, uplink=True)
    capture = 10.0 ** (-params.memory_capture_loss_db / 10.0)
    return side * capture * memory.qnd_efficiency * memory.write_efficiency


def uplink_ma_rate(
    ground_distance_km: float,
    link: SatelliteLink = SatelliteLink(),
    memory: MemoryModel = MemoryModel(),
    params: ProtocolParams = ProtocolParams(),
) -> KeyRateResult:
    """
    Uplink memory-assisted MDI-QKD with one memory per side.

    Each use heralds a photon with probability `p = eta_side * eta_capture * eta_q * eta_w`;
    a noise click in the QND detector loads an empty memory as well. Once both memories hold a
    qubit the Bell-state measurement runs and both restart. The qubit that waited `|D|` uses
    keeps its phase with probability `exp(-|D| / (R_s tau))`.

    Returns:
        KeyRateResult: A zero-rate result when the error bracket is negative.
    """
    p_true = uplink_load_probability(ground_distance_km, link, memory, params)
    p_gate = _gate_noise(link, params)
    herald = p_true + (1.0 - p_true) * p_gate

    if herald == 0.0:
        return KeyRateResult(0.0, 0.5, 0.5, 0.0, 0.0, math.inf, 0.0)

    genuine = (p_true / herald) ** 2
    decay = 1.0 / (params.source_rate_hz * memory.dephasing_time_s)
    wait = geometric_wait_stats(herald, herald, None, decay)

    qber_x, qber_z = _memory_qbers(genuine, wait.dephasing_factor, params.misalignment_error)
    yield_per_use = (
        params.bsm_success * (memory.read_efficiency * params.detector.efficiency) ** 2
    )
    attempts = params.source_rate_hz / wait.expected_uses

    return KeyRateResult(
        yield_per_use=yield_per_use,
        qber_x=qber_x,
        qber_z=qber_z,
        attempts_per_s=attempts,
        secret_bits_per_s=attempts
        * secret_key_rate(yield_per_use, qber_x, qber_z, params.ec_inefficiency),
        expected_uses=wait.expected_uses,
        dephasing_factor=wait.dephasing_factor,
    )


def round_trip_s(ground_distance_km: float, link: SatelliteLink) -> float:
    """Duration of a downlink heralding round, `2 L_LoS / c`."""
    los, _ = link.hop(ground_distance_km)
    return 2.0 * los.path_length_m / SPEED_OF_LIGHT


def downlink_round_success(
    ground_distance_km: float,
    link: SatelliteLink,
    memory: MemoryModel,
    params: ProtocolParams,
) -> float:
    """Probability that at least one of the `N` modes of a round is detected on the ground."""
    q = side_transmission(ground_distance_km, link, params) * params.detector.efficiency
    if q == 1.0:
        return 1.0
    return -math.expm1(memory.temporal_modes * math.log1p(-q))


def downlink_ma_rate(
    ground_distance_km: float,
    link: SatelliteLink = SatelliteLink(),
    memory: MemoryModel = MemoryModel(dephasing_time_s=7.5, temporal_modes=1000),
    params: ProtocolParams = ProtocolParams(),
) -> KeyRateResult:
    """
    Downlink memory-assisted MDI-QKD with `m` memory pairs of `N` temporal modes.

    A round lasts `T = 2 L_LoS / c`. In each round every memory sends `N` photons down and
    learns a round trip later whether one was detected. A stored qubit older than
    `floor(tau / T)` rounds is discarded; waiting dephases it by `exp(-rounds T / tau)`.

    Returns:
        KeyRateResult: Attempts count channel uses, `N m / T` per second.
    """
    period = round_trip_s(ground_distance_km, link)
    p_true = downlink_round_success(ground_distance_km, link, memory, params)

    p_gate = _gate_noise(link, params)
    p_false = -math.expm1(memory.temporal_modes * math.log1p(-p_gate)) if p_gate < 1 else 1.0
    herald = p_true + (1.0 - p_true) * p_false
    attempts = memory.temporal_modes * memory.pairs / period

    if herald == 0.0:
        return KeyRateResult(0.0, 0.5, 0.5, attempts, 0.0, math.inf, 0.0)

    genuine = (p_true / herald) ** 2
    cutoff = math.floor(memory.dephasing_time_s / period)
    wait = geometric_wait_stats(herald, herald, cutoff, period / memory.dephasing_time_s)

    qber_x, qber_z = _memory_qbers(genuine, wait.dephasing_factor, params.misalignment_error)
    yield_per_use = (
        params.bsm_success
        * memory.read_efficiency**2
        / (memory.temporal_modes * wait.uses_per_success)
    )

    return KeyRateResult(
        yield_per_use=yield_per_use,
        qber_x=qber_x,
        qber_z=qber_z,
        attempts_per_s=attempts,
        secret_bits_per_s=attempts
        * secret_key_rate(yield_per_use, qber_x, qber_z, params.ec_inefficiency),
        expected_uses=wait.expected_uses,
        dephasing_factor=wait.dephasing_factor,
    )


def rate_at(
    protocol: Protocol,
    ground_distance_km: float,
    link: SatelliteLink,
    memory: MemoryModel,
    params: ProtocolParams,
) -> float:
    """Secret bits per second of one protocol."""
    if protocol is Protocol.E91:
        return e91_rate(ground_distance_km, link, params).secret_bits_per_s
    if protocol is Protocol.UPLINK:
        return uplink_ma_rate(ground_distance_km, link, memory, params).secret_bits_per_s
    return downlink_ma_rate(ground_distance_km, link, memory, params).secret_bits_per_s


def _rate_cell(
    cell: tuple[float, float],
    protocol: Protocol,
    ground_distance_km: float,
    link: SatelliteLink,
    memory: MemoryModel,
    params: ProtocolParams,
    split: str,
) -> float:
    tau, eta_mem = cell
    stage = math.sqrt(eta_mem) if split == "balanced" else eta_mem
    cell_memory = MemoryModel(
        dephasing_time_s=tau,
        write_efficiency=stage,
        read_efficiency=stage,
        temporal_modes=memory.temporal_modes,
        pairs=memory.pairs,
        qnd_efficiency=memory.qnd_efficiency,
    )
    try:
        return rate_at(protocol, ground_distance_km, link, cell_memory, params)
    except SWEEP_ERRORS as error:
        logger.debug("No key for tau=%s, eta_mem=%s: %s", tau, eta_mem, error)
        return 0.0


def rate_map(
    protocol: Protocol,
    ground_distance_km: float,
    dephasing_times_s,
    memory_efficiencies,
    link: SatelliteLink = SatelliteLink(),
    memory: MemoryModel = MemoryModel(),
    params: ProtocolParams = ProtocolParams(),
    split: Literal["balanced", "per-stage"] = "balanced",
    jobs: int = 1,
) -> np.ndarray:
    """
    Key rate over a grid of dephasing times and memory efficiencies at a fixed distance.

    Examples:
        >>> rate_map(Protocol.UPLINK, 1000, [1e-3], [0.8]).shape
        (1, 1)

    Args:
        protocol (Protocol): Which protocol to evaluate.
        ground_distance_km (float): Distance between the stations.
        dephasing_times_s (Iterable[float]): Row values of tau.
        memory_efficiencies (Iterable[float]): Column values of the combined efficiency.
        memory (MemoryModel): Supplies temporal modes, pairs and QND efficiency.
        split (str): How a combined efficiency splits into write and read.
        jobs (int): Worker processes; cell order never depends on it.

    Returns:
        np.ndarray: Matrix of secret bits per second, rows over tau. Cells without a key,
            including a distance at which the satellite is not visible, hold zero.
    """
    validate.integer_at_least("jobs", jobs, 1)
    taus = [float(tau) for tau in dephasing_times_s]
    etas = [float(eta) for eta in memory_efficiencies]

    for tau in taus:
        validate.positive("memory.dephasing_time_s", tau)
    for eta in etas:
        validate.probability("memory.efficiency", eta)

    cells = [(tau, eta) for tau in taus for eta in etas]
    evaluate = partial(
        _rate_cell,
        protocol=protocol,
        ground_distance_km=ground_distance_km,
        link=link,
        memory=memory,
        params=params,
        split=split,
    )

    logger.info("Evaluating %s rate map with %d cells", protocol.value, len(cells))

    values = parallel_map(evaluate, cells, jobs)

    return np.array(values, dtype=float).reshape(len(taus), len(etas))


def key_positive_range(distances_km, rates) -> float:
    """
    Largest distance at which the key rate is still positive.

    Examples:
        >>> key_positive_range([100, 200, 300], [2.0, 1.0, 0.0])
        200.0

    Returns:
        FLOAT: The distance, or `nan` when no distance yields a key.
    """
    distances = np.asarray(distances_km, dtype=float)
    values = np.asarray(rates, dtype=float)

    if distances.shape != values.shape:
        raise ValidationError("distances and rates must have the same length.")

    positive = distances[np.nan_to_num(values) > 0.0]
    return float(positive.max()) if positive.size else math.nan
