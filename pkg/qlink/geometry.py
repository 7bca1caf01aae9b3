"""
Static spherical-Earth placement of ground stations and satellites.

Every optical hop of a scenario is reduced to a `LinkGeometry`: its kind, its straight-line
length and, for space-ground hops, the elevation of the satellite seen from the ground.

Ground distances are measured along the surface. A ground arc `arc_km` corresponds to the
central angle `arc_km / R_E`, and all ranges follow from the law of cosines on the triangle
formed by the Earth's centre, the ground point and the satellite.

Satellites are placed once per calculation; there are no pass dynamics.
"""

import enum
import math
from dataclasses import dataclass, field

from ._validators import Validators
from .exceptions import BelowHorizonError, DegenerateInputError, InvalidElevationError

validate = Validators()

EARTH_RADIUS_KM = 6371.0


class LinkKind(str, enum.Enum):
    SPACE_GROUND = "space-ground"
    INTER_SATELLITE = "inter-satellite"


class Architecture(str, enum.Enum):
    FULL_SPACE = "full-space"
    HYBRID_GROUND = "hybrid-ground"


@dataclass(frozen=True)
class EarthModel:
    radius_km: float = EARTH_RADIUS_KM

    def __post_init__(self):
        validate.positive("earth.radius_km", self.radius_km)


@dataclass(frozen=True)
class OrbitConfig:
    altitude_km: float = 400.0

    def __post_init__(self):
        validate.positive("orbit.altitude_km", self.altitude_km)


@dataclass(frozen=True)
class LinkGeometry:
    """
    One optical hop.

    Args:
        kind (LinkKind): Space-ground or inter-satellite.
        path_length_km (float): Straight-line length of the hop.
        elevation_rad (float, optional): Elevation of the satellite above the local horizon.
            Required for space-ground hops, ignored otherwise.
        arc_km (float): Length of the hop projected on the ground.
    """

    kind: LinkKind
    path_length_km: float
    elevation_rad: float | None = None
    arc_km: float = 0.0

    def __post_init__(self):
        validate.non_negative("link.path_length_km", self.path_length_km)
        validate.non_negative("link.arc_km", self.arc_km)

        if self.kind is LinkKind.SPACE_GROUND:
            if self.elevation_rad is None or not 0.0 < self.elevation_rad <= math.pi / 2:
                raise InvalidElevationError(
                    InvalidElevationError.elevation_msg.format(elevation=self.elevation_rad)
                )

    @property
    def path_length_m(self) -> float:
        return self.path_length_km * 1e3


@dataclass(frozen=True)
class ConstellationLayout:
    nesting_level: int
    total_ground_distance_km: float
    architecture: Architecture
    hops: tuple[LinkGeometry, ...] = field(default_factory=tuple)

    @property
    def segment_count(self) -> int:
        return 2**self.nesting_level

    @property
    def segment_length_km(self) -> float:
        return self.total_ground_distance_km / self.segment_count

    @property
    def satellite_count(self) -> int:
        if self.architecture is Architecture.HYBRID_GROUND:
            return self.segment_count
        return 2 ** (self.nesting_level + 1) - 1

    @property
    def segments(self) -> list[tuple[LinkGeometry, LinkGeometry]]:
        """The hops grouped per segment, in ground order."""
        return [(self.hops[2 * i], self.hops[2 * i + 1]) for i in range(self.segment_count)]


def _central_angle(arc_km: float, earth: EarthModel) -> float:
    return arc_km / earth.radius_km


def slant_range(arc_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()) -> float:
    """
    Straight-line distance from a ground point to a satellite whose sub-satellite point is
    `arc_km` away along the surface.

    Examples:
        >>> slant_range(0, OrbitConfig(400))
        400.0

        >>> round(slant_range(560, OrbitConfig(400)), 1)
        702.2

    Args:
        arc_km (float): Ground arc between the station and the sub-satellite point.
        orbit (OrbitConfig): Orbital altitude.
        earth (EarthModel): Spherical Earth. Defaults to a 6371 km radius.

    Returns:
        FLOAT: Slant range in km.
    """
    validate.non_negative("arc_km", arc_km)
    radius = earth.radius_km
    orbit_radius = radius + orbit.altitude_km
    delta = _central_angle(arc_km, earth)

    # (R+h-R)^2 + 2R(R+h)(1 - cos) keeps the zenith case exact
    one_minus_cos = 2.0 * math.sin(delta / 2.0) ** 2
    return math.sqrt(orbit.altitude_km**2 + 2.0 * radius * orbit_radius * one_minus_cos)


def elevation_angle(
    arc_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()
) -> float:
    """
    Elevation of a satellite above the local horizon of a ground point.

    Examples:
        >>> elevation_angle(0, OrbitConfig(400)) == math.pi / 2
        True

    Args:
        arc_km (float): Ground arc between the station and the sub-satellite point.
        orbit (OrbitConfig): Orbital altitude.
        earth (EarthModel): Spherical Earth.

    Raises:
        BelowHorizonError: The satellite is at or below the horizon.

    Returns:
        FLOAT: Elevation in radians, in (0, pi/2].
    """
    validate.non_negative("arc_km", arc_km)
    delta = _central_angle(arc_km, earth)

    if delta == 0.0:
        return math.pi / 2

    orbit_radius = earth.radius_km + orbit.altitude_km
    rise = orbit_radius * math.cos(delta) - earth.radius_km
    run = orbit_radius * math.sin(delta)

    if rise <= 0.0 or run <= 0.0:
        raise BelowHorizonError(BelowHorizonError.horizon_msg.format(arc_km=arc_km))

    return math.atan2(rise, run)


def intersat_range(
    arc_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()
) -> float:
    """
    Chord between two satellites at the same altitude whose sub-satellite points are
    `arc_km` apart.

    Returns:
        FLOAT: Chord length in km.
    """
    validate.non_negative("arc_km", arc_km)
    delta = _central_angle(arc_km, earth)
    return 2.0 * (earth.radius_km + orbit.altitude_km) * math.sin(delta / 2.0)


def arc_from_slant_range(
    distance_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()
) -> float:
    """
    Ground arc at which a satellite is seen at the given slant range (inverse of `slant_range`).

    Raises:
        DegenerateInputError: The distance is shorter than the orbital altitude.
        BelowHorizonError: The distance is longer than the range to the horizon.
    """
    if distance_km < orbit.altitude_km:
        raise DegenerateInputError(
            f"No ground point sees the satellite at {distance_km} km: "
            f"shorter than the altitude {orbit.altitude_km} km."
        )

    radius = earth.radius_km
    orbit_radius = radius + orbit.altitude_km
    horizon_km = math.sqrt(orbit_radius**2 - radius**2)

    if distance_km >= horizon_km:
        raise BelowHorizonError(
            f"A slant range of {distance_km} km is beyond the horizon ({horizon_km:.1f} km)."
        )

    half_chord_sq = (distance_km**2 - orbit.altitude_km**2) / (4.0 * radius * orbit_radius)
    delta = 2.0 * math.asin(math.sqrt(half_chord_sq))
    return delta * radius


def space_ground_link(
    arc_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()
) -> LinkGeometry:
    return LinkGeometry(
        kind=LinkKind.SPACE_GROUND,
        path_length_km=slant_range(arc_km, orbit, earth),
        elevation_rad=elevation_angle(arc_km, orbit, earth),
        arc_km=arc_km,
    )


def inter_satellite_link(
    arc_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()
) -> LinkGeometry:
    return LinkGeometry(
        kind=LinkKind.INTER_SATELLITE,
        path_length_km=intersat_range(arc_km, orbit, earth),
        arc_km=arc_km,
    )


def los_midpoint_geometry(
    ground_distance_km: float, orbit: OrbitConfig, earth: EarthModel = EarthModel()
) -> tuple[LinkGeometry, LinkGeometry]:
    """
    Geometry of a satellite above the midpoint between two ground stations.

    Both links are space-ground links of ground arc L/2; their path length is the
    line-of-sight distance L_LoS.

    Raises:
        BelowHorizonError: The satellite is not visible from the stations.
    """
    validate.non_negative("ground_distance_km", ground_distance_km)
    link = space_ground_link(ground_distance_km / 2.0, orbit, earth)
    return link, link


def constellation_layout(
    ground_distance_km: float,
    nesting_level: int,
    orbit: OrbitConfig,
    earth: EarthModel = EarthModel(),
    architecture: Architecture = Architecture.FULL_SPACE,
) -> ConstellationLayout:
    """
    Place a repeater chain over a ground distance split into 2^n segments.

    Every segment has a photon-pair source above its midpoint and two hops of ground arc
    L_0/2 reaching the nodes at the segment boundaries. With `FULL_SPACE` the boundary nodes
    are satellites, except the two end users on the ground; with `HYBRID_GROUND` every
    boundary node is a ground station.

    Examples:
        >>> layout = constellation_layout(20000, 3, OrbitConfig(400))
        >>> len(layout.hops), layout.satellite_count
        (16, 15)

    Raises:
        BelowHorizonError: A space-ground hop is beyond the horizon.
    """
    validate.integer_at_least("nesting_level", nesting_level, 0)
    validate.positive("ground_distance_km", ground_distance_km)

    segment_count = 2**nesting_level
    half_segment_km = ground_distance_km / segment_count / 2.0
    hop_count = 2 * segment_count

    ground_link = space_ground_link(half_segment_km, orbit, earth)
    space_link = (
        inter_satellite_link(half_segment_km, orbit, earth)
        if architecture is Architecture.FULL_SPACE
        else ground_link
    )

    hops = tuple(
        ground_link if index in (0, hop_count - 1) else space_link
        for index in range(hop_count)
    )

    return ConstellationLayout(
        nesting_level=nesting_level,
        total_ground_distance_km=ground_distance_km,
        architecture=architecture,
        hops=hops,
    )
