"""
Per-hop optical transmissivity and noise of a free-space link.

A hop transmits a fraction `eta_total` of the photons sent into it:

- diffraction: the Gaussian beam spreads to a radius `w(d)` and only the part falling on the
  receiver aperture is collected;
- atmosphere: space-ground hops cross the atmosphere along a slant path whose transmission
  follows the cosecant law from the zenith value;
- pointing: an optional angular jitter of the transmitter.

Noise is reported per acquisition window as the sum of detector dark counts and stray light
collected from the sky.

All lengths in this module are in metres and all angles in radians, except the distances of
`loss_curve`, which follow the km convention of `qlink.geometry`.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import h as PLANCK

from ._validators import Validators
from .exceptions import (
    BelowHorizonError,
    DegenerateInputError,
    InvalidElevationError,
    ValidationError,
)
from .geometry import (
    EarthModel,
    LinkGeometry,
    LinkKind,
    OrbitConfig,
    arc_from_slant_range,
    elevation_angle,
)

validate = Validators()

DEFAULT_WAVELENGTH_M = 780e-9


def waist_from_divergence(wavelength_m: float, m_squared: float, divergence_rad: float) -> float:
    """
    Beam waist of an imperfect Gaussian beam with the given far-field divergence.

    Examples:
        >>> round(waist_from_divergence(780e-9, 1.0, 5e-6), 5)
        0.04966

    Args:
        wavelength_m (float): Wavelength.
        m_squared (float): Beam-quality factor, at least 1.
        divergence_rad (float): e^-2 far-field half-angle.

    Returns:
        FLOAT: The waist `M^2 * wavelength / (pi * divergence)`.
    """
    validate.positive("beam.wavelength_m", wavelength_m)
    validate.at_least("beam.m_squared", m_squared, 1.0)
    validate.positive("beam.divergence_rad", divergence_rad)

    return m_squared * wavelength_m / (math.pi * divergence_rad)


@dataclass(frozen=True)
class BeamParams:
    """
    Transmitted Gaussian beam.

    Waist and divergence are tied by `divergence = M^2 * wavelength / (pi * waist)`. Build
    instances with `from_divergence` or `from_waist` so the relation holds.
    """

    wavelength_m: float
    waist_m: float
    m_squared: float
    divergence_rad: float

    def __post_init__(self):
        validate.positive("beam.wavelength_m", self.wavelength_m)
        validate.positive("beam.waist_m", self.waist_m)
        validate.at_least("beam.m_squared", self.m_squared, 1.0)
        validate.positive("beam.divergence_rad", self.divergence_rad)

        expected = waist_from_divergence(self.wavelength_m, self.m_squared, self.divergence_rad)

        if not math.isclose(self.waist_m, expected, rel_tol=1e-9):
            raise ValidationError(
                f"beam.waist_m {self.waist_m} does not match divergence "
                f"{self.divergence_rad} rad (expected {expected})."
            )

    @classmethod
    def from_divergence(
        cls,
        divergence_rad: float,
        wavelength_m: float = DEFAULT_WAVELENGTH_M,
        m_squared: float = 1.0,
    ) -> "BeamParams":
        return cls(
            wavelength_m=wavelength_m,
            waist_m=waist_from_divergence(wavelength_m, m_squared, divergence_rad),
            m_squared=m_squared,
            divergence_rad=divergence_rad,
        )

    @classmethod
    def from_waist(
        cls,
        waist_m: float,
        wavelength_m: float = DEFAULT_WAVELENGTH_M,
        m_squared: float = 1.0,
    ) -> "BeamParams":
        validate.positive("beam.waist_m", waist_m)
        validate.at_least("beam.m_squared", m_squared, 1.0)

        return cls(
            wavelength_m=wavelength_m,
            waist_m=waist_m,
            m_squared=m_squared,
            divergence_rad=m_squared * wavelength_m / (math.pi * waist_m),
        )

    @property
    def rayleigh_range_m(self) -> float:
        return math.pi * self.waist_m**2 / (self.m_squared * self.wavelength_m)


@dataclass(frozen=True)
class Aperture:
    radius_m: float

    def __post_init__(self):
        validate.positive("aperture.radius_m", self.radius_m)

    @property
    def diameter_m(self) -> float:
        return 2.0 * self.radius_m

    @property
    def stray_light_term_m2(self) -> float:
        """Collecting term `(pi D / 2)^2` of the stray-light count, with `D` the diameter."""
        return (math.pi * self.diameter_m / 2.0) ** 2


@dataclass(frozen=True)
class AtmosphereModel:
    zenith_transmissivity: float = 0.8

    def __post_init__(self):
        validate.probability("atmosphere.zenith_transmissivity", self.zenith_transmissivity)

        if self.zenith_transmissivity == 0.0:
            raise ValidationError("atmosphere.zenith_transmissivity must be > 0.")


@dataclass(frozen=True)
class PointingModel:
    sigma_rad: float = 0.0
    enabled: bool = False

    def __post_init__(self):
        validate.non_negative("pointing.sigma_rad", self.sigma_rad)


@dataclass(frozen=True)
class StrayLightModel:
    """
    Sky background collected by a ground receiver.

    Args:
        sky_brightness (float): Spectral radiance of the sky, W m^-2 sr^-1 m^-1.
        fov_sr (float): Field of view of the receiver, sr.
        filter_bandwidth_m (float): Spectral filter bandwidth.
        window_s (float): Acquisition window.
        wavelength_m (float): Detected wavelength.
    """

    sky_brightness: float = 0.0
    fov_sr: float = 0.0
    filter_bandwidth_m: float = 0.0
    window_s: float = 1e-6
    wavelength_m: float = DEFAULT_WAVELENGTH_M

    def __post_init__(self):
        validate.non_negative("stray.sky_brightness", self.sky_brightness)
        validate.non_negative("stray.fov_sr", self.fov_sr)
        validate.non_negative("stray.filter_bandwidth_m", self.filter_bandwidth_m)
        validate.non_negative("stray.window_s", self.window_s)
        validate.positive("stray.wavelength_m", self.wavelength_m)


@dataclass(frozen=True)
class DetectorModel:
    efficiency: float = 0.9
    dark_prob_per_window: float = 1e-6

    def __post_init__(self):
        validate.probability("detector.efficiency", self.efficiency)
        validate.probability("detector.dark_prob_per_window", self.dark_prob_per_window)


@dataclass(frozen=True)
class ChannelBudget:
    """Transmission of one hop split into its factors, with the noise of its receiver."""

    eta_diffraction: float
    eta_atmosphere: float = 1.0
    eta_pointing: float = 1.0
    stray_counts_per_window: float = 0.0
    noise_prob_per_window: float = 0.0

    def __post_init__(self):
        validate.probability("budget.eta_diffraction", self.eta_diffraction)
        validate.probability("budget.eta_atmosphere", self.eta_atmosphere)
        validate.probability("budget.eta_pointing", self.eta_pointing)
        validate.non_negative("budget.stray_counts_per_window", self.stray_counts_per_window)
        validate.probability("budget.noise_prob_per_window", self.noise_prob_per_window)

    @property
    def eta_total(self) -> float:
        return self.eta_diffraction * self.eta_atmosphere * self.eta_pointing

    @property
    def loss_db(self) -> float:
        eta = self.eta_total
        return math.inf if eta == 0.0 else -10.0 * math.log10(eta)


def beam_radius_at(beam: BeamParams, distance_m: float) -> float:
    """
    Radius of the beam after propagating `distance_m`.

    `M^2 * wavelength` replaces the wavelength so that the radius grows as
    `divergence * distance` in the far field.

    Examples:
        >>> beam = BeamParams.from_divergence(5e-6)
        >>> beam_radius_at(beam, 0.0) == beam.waist_m
        True
    """
    validate.non_negative("distance_m", distance_m)
    return beam.waist_m * math.hypot(1.0, distance_m / beam.rayleigh_range_m)


def diffraction_efficiency(beam: BeamParams, distance_m: float, rx: Aperture) -> float:
    """
    Fraction of a Gaussian beam collected by a circular aperture.

    Args:
        beam (BeamParams): Transmitted beam.
        distance_m (float): Propagation distance.
        rx (Aperture): Receiver aperture of radius `a`.

    Returns:
        FLOAT: `1 - exp(-2 a^2 / w(d)^2)`.
    """
    radius = beam_radius_at(beam, distance_m)
    return -math.expm1(-2.0 * rx.radius_m**2 / radius**2)


def atmospheric_efficiency(atm: AtmosphereModel, elevation_rad: float) -> float:
    """
    One-way atmospheric transmission along a slant path.

    Examples:
        >>> atmospheric_efficiency(AtmosphereModel(0.8), math.pi / 2)
        0.8

    Raises:
        InvalidElevationError: The elevation is outside (0, pi/2].
    """
    if not 0.0 < elevation_rad <= math.pi / 2:
        raise InvalidElevationError(
            InvalidElevationError.elevation_msg.format(elevation=elevation_rad)
        )

    if elevation_rad == math.pi / 2:
        return atm.zenith_transmissivity

    # csc(30 deg) is not exactly 2 in floating point, keep exact powers exact
    cosecant = 1.0 / math.sin(elevation_rad)
    nearest = round(cosecant)
    if math.isclose(cosecant, nearest, rel_tol=1e-12):
        cosecant = float(nearest)

    return atm.zenith_transmissivity**cosecant


def pointing_efficiency(pointing: PointingModel, beam: BeamParams) -> float:
    """Angular pointing loss `exp(-8 sigma^2 / divergence^2)`, or 1 when disabled."""
    if not pointing.enabled:
        return 1.0

    return math.exp(-8.0 * pointing.sigma_rad**2 / beam.divergence_rad**2)


def stray_counts(stray: StrayLightModel, rx: Aperture) -> float:
    """
    Mean number of stray photons collected in one acquisition window.

    The in-window optical energy `H * fov * (pi D / 2)^2 * bandwidth * window`, with `D` the
    receiver diameter, is divided by the photon energy `h c / wavelength`.
    """
    energy_j = (
        stray.sky_brightness
        * stray.fov_sr
        * rx.stray_light_term_m2
        * stray.filter_bandwidth_m
        * stray.window_s
    )
    return stray.wavelength_m / (PLANCK * SPEED_OF_LIGHT) * energy_j


def noise_probability(
    detector: DetectorModel, stray: StrayLightModel | None, rx: Aperture
) -> float:
    """Probability of a noise click in one acquisition window, clamped to [0, 1]."""
    counts = 0.0 if stray is None else stray_counts(stray, rx)
    return min(1.0, max(0.0, detector.dark_prob_per_window + counts))


def gate_noise_probability(
    detector: DetectorModel,
    stray: StrayLightModel | None,
    rx: Aperture,
    gate_s: float,
) -> float:
    """
    Noise probability in a detection gate shorter than the acquisition window.

    Examples:
        >>> gate_noise_probability(DetectorModel(0.9, 1e-6), None, Aperture(0.5), 5e-8)
        5e-08

    Args:
        detector (DetectorModel): Dark-count probability per window.
        stray (StrayLightModel, optional): Sky background, also setting the window length.
        rx (Aperture): Receiver aperture.
        gate_s (float): Gate duration, typically `1 / source_rate_hz`.
    """
    validate.positive("gate_s", gate_s)
    window_s = (stray or StrayLightModel()).window_s
    fraction = 1.0 if window_s == 0.0 else min(1.0, gate_s / window_s)
    return noise_probability(detector, stray, rx) * fraction


def hop_transmission(
    link: LinkGeometry,
    beam: BeamParams,
    rx: Aperture,
    atm: AtmosphereModel,
    pointing: PointingModel = PointingModel(),
    detector: DetectorModel | None = None,
    stray: StrayLightModel | None = None,
) -> ChannelBudget:
    """
    Transmission budget of one hop.

    Inter-satellite hops only suffer diffraction (and pointing when enabled); space-ground hops
    add the atmospheric factor at the link's elevation. Stray light is only collected by
    ground receivers.

    Raises:
        InvalidElevationError: A space-ground link has no valid elevation.
    """
    eta_dif = diffraction_efficiency(beam, link.path_length_m, rx)
    eta_point = pointing_efficiency(pointing, beam)

    if link.kind is LinkKind.SPACE_GROUND:
        if link.elevation_rad is None:
            raise InvalidElevationError(
                InvalidElevationError.elevation_msg.format(elevation=None)
            )
        eta_atm = atmospheric_efficiency(atm, link.elevation_rad)
        collected = stray
    else:
        eta_atm = 1.0
        collected = None

    counts = 0.0 if collected is None else stray_counts(collected, rx)
    noise = 0.0 if detector is None else noise_probability(detector, collected, rx)

    return ChannelBudget(
        eta_diffraction=eta_dif,
        eta_atmosphere=eta_atm,
        eta_pointing=eta_point,
        stray_counts_per_window=counts,
        noise_prob_per_window=noise,
    )


def loss_curve(
    kind: LinkKind,
    distances_km: np.ndarray,
    beam: BeamParams,
    rx: Aperture,
    atm: AtmosphereModel,
    orbit: OrbitConfig = OrbitConfig(),
    earth: EarthModel = EarthModel(),
) -> np.ndarray:
    """
    Loss in dB against path length for one kind of hop.

    Space-ground distances are placed on the sphere to find their elevation; distances
    shorter than the altitude or beyond the horizon have no geometry and give `nan`.

    Returns:
        np.ndarray: Loss in dB for every distance, in input order.
    """
    losses = np.empty(len(distances_km), dtype=float)

    for index, distance_km in enumerate(np.asarray(distances_km, dtype=float)):
        if kind is LinkKind.INTER_SATELLITE:
            link = LinkGeometry(kind=kind, path_length_km=float(distance_km))
        else:
            try:
                arc_km = arc_from_slant_range(float(distance_km), orbit, earth)
                link = LinkGeometry(
                    kind=kind,
                    path_length_km=float(distance_km),
                    elevation_rad=elevation_angle(arc_km, orbit, earth),
                    arc_km=arc_km,
                )
            except (BelowHorizonError, DegenerateInputError, InvalidElevationError):
                losses[index] = np.nan
                continue

        losses[index] = hop_transmission(link, beam, rx, atm).loss_db

    return losses
