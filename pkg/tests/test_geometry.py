"""
Tests for the spherical-Earth placement of stations and satellites.
"""

import math

import numpy as np
import pytest

from qlink.exceptions import (
    BelowHorizonError,
    DegenerateInputError,
    InvalidElevationError,
    ValidationError,
)
from qlink.geometry import (
    Architecture,
    EarthModel,
    LinkGeometry,
    LinkKind,
    OrbitConfig,
    arc_from_slant_range,
    constellation_layout,
    elevation_angle,
    intersat_range,
    los_midpoint_geometry,
    slant_range,
)

EARTH = EarthModel()
ORBIT = OrbitConfig(400)


def _ground_point(arc_km: float, radius: float) -> np.ndarray:
    angle = arc_km / EARTH.radius_km
    return radius * np.array([math.cos(angle), math.sin(angle), 0.0])


def cartesian_slant(arc_km: float) -> float:
    station = _ground_point(0.0, EARTH.radius_km)
    satellite = _ground_point(arc_km, EARTH.radius_km + ORBIT.altitude_km)
    return float(np.linalg.norm(satellite - station))


def cartesian_elevation(arc_km: float) -> float:
    station = _ground_point(0.0, EARTH.radius_km)
    line_of_sight = _ground_point(arc_km, EARTH.radius_km + ORBIT.altitude_km) - station
    up = station / np.linalg.norm(station)
    return math.asin(float(line_of_sight @ up) / float(np.linalg.norm(line_of_sight)))


def cartesian_chord(arc_km: float) -> float:
    radius = EARTH.radius_km + ORBIT.altitude_km
    return float(np.linalg.norm(_ground_point(arc_km, radius) - _ground_point(0.0, radius)))


@pytest.mark.parametrize("arc_km", [10.0, 250.0, 560.0, 1000.0, 1250.0, 2000.0])
def test_slant_range_matches_cartesian_placement(arc_km):
    assert slant_range(arc_km, ORBIT) == pytest.approx(cartesian_slant(arc_km), rel=1e-9)


@pytest.mark.parametrize("arc_km", [10.0, 250.0, 560.0, 1000.0, 1250.0, 2000.0])
def test_elevation_matches_cartesian_placement(arc_km):
    assert elevation_angle(arc_km, ORBIT) == pytest.approx(
        cartesian_elevation(arc_km), rel=1e-9
    )


@pytest.mark.parametrize("arc_km", [0.0, 625.0, 1250.0, 2500.0, 5000.0])
def test_intersat_range_matches_cartesian_placement(arc_km):
    assert intersat_range(arc_km, ORBIT) == pytest.approx(
        cartesian_chord(arc_km), rel=1e-9, abs=1e-9
    )


@pytest.mark.parametrize(
    "arc_km, expected",
    [
        (0.0, 400.0),
        (560.0, 702.2),
        (1250.0, 1347.3),
    ],
)
def test_slant_range_values(arc_km, expected):
    assert slant_range(arc_km, ORBIT) == pytest.approx(expected, abs=0.5)


def test_slant_range_at_zenith_is_the_altitude():
    assert slant_range(0, ORBIT) == 400.0
    assert slant_range(0, OrbitConfig(550)) == 550.0


def test_elevation_values():
    assert elevation_angle(0, ORBIT) == math.pi / 2
    assert math.degrees(elevation_angle(560, ORBIT)) == pytest.approx(32.2, abs=0.05)


@pytest.mark.parametrize("arc_km", [2250.0, 3000.0, 10000.0])
def test_elevation_below_horizon(arc_km):
    with pytest.raises(BelowHorizonError):
        elevation_angle(arc_km, ORBIT)


def test_ranges_are_monotone():
    arcs = np.linspace(0.0, 2100.0, 60)
    slants = [slant_range(arc, ORBIT) for arc in arcs]
    elevations = [elevation_angle(arc, ORBIT) for arc in arcs]

    assert all(b > a for a, b in zip(slants, slants[1:]))
    assert all(b < a for a, b in zip(elevations, elevations[1:]))


@pytest.mark.parametrize("arc_km", [100.0, 1250.0, 2500.0])
def test_chord_is_shorter_than_the_orbital_arc(arc_km):
    orbital_arc = arc_km * (EARTH.radius_km + ORBIT.altitude_km) / EARTH.radius_km
    assert intersat_range(arc_km, ORBIT) <= orbital_arc


@pytest.mark.parametrize("arc_km", [0.0, 300.0, 1000.0, 2000.0])
def test_arc_from_slant_range_inverts_slant_range(arc_km):
    distance = slant_range(arc_km, ORBIT)
    assert arc_from_slant_range(distance, ORBIT) == pytest.approx(arc_km, abs=1e-6)


@pytest.mark.parametrize(
    "distance_km, error",
    [
        (100.0, DegenerateInputError),
        (5000.0, BelowHorizonError),
    ],
)
def test_arc_from_slant_range_rejects_impossible_distances(distance_km, error):
    with pytest.raises(error):
        arc_from_slant_range(distance_km, ORBIT)


class TestLosMidpointGeometry:
    """Satellite above the midpoint between two stations."""

    def test_zero_distance_gives_two_zenith_links(self):
        first, second = los_midpoint_geometry(0, ORBIT)
        assert first == second
        assert first.path_length_km == 400.0
        assert first.elevation_rad == math.pi / 2

    def test_1120_km(self):
        link, _ = los_midpoint_geometry(1120, ORBIT)
        assert link.kind is LinkKind.SPACE_GROUND
        assert link.path_length_km == pytest.approx(702.2, abs=0.1)
        assert math.degrees(link.elevation_rad) == pytest.approx(32.2, abs=0.05)

    def test_2000_km_matches_cartesian_placement(self):
        link, _ = los_midpoint_geometry(2000, ORBIT)
        assert link.arc_km == 1000.0
        assert link.path_length_km == pytest.approx(cartesian_slant(1000.0), rel=1e-9)

    def test_beyond_the_horizon(self):
        with pytest.raises(BelowHorizonError):
            los_midpoint_geometry(5000, ORBIT)


class TestConstellationLayout:
    """Hop placement of repeater chains."""

    def test_full_space_counts(self):
        layout = constellation_layout(20000, 3, ORBIT)

        kinds = [hop.kind for hop in layout.hops]
        assert len(layout.hops) == 16
        assert layout.satellite_count == 15
        assert kinds[0] is kinds[-1] is LinkKind.SPACE_GROUND
        assert kinds[1:-1] == [LinkKind.INTER_SATELLITE] * 14
        assert all(hop.arc_km == 1250.0 for hop in layout.hops)
        assert layout.segment_length_km == 2500.0

    def test_hybrid_ground_counts(self):
        layout = constellation_layout(20000, 3, ORBIT, architecture=Architecture.HYBRID_GROUND)

        assert len(layout.hops) == 16
        assert all(hop.kind is LinkKind.SPACE_GROUND for hop in layout.hops)
        assert all(hop.arc_km == 1250.0 for hop in layout.hops)

    def test_single_segment(self):
        layout = constellation_layout(1000, 0, ORBIT)

        assert layout.segment_length_km == 1000.0
        assert len(layout.hops) == 2
        assert layout.satellite_count == 1
        assert all(hop.kind is LinkKind.SPACE_GROUND for hop in layout.hops)
        assert all(hop.arc_km == 500.0 for hop in layout.hops)

    @pytest.mark.parametrize(
        "distance_km, nesting_level",
        [(2000.0, 1), (7000.0, 2), (20000.0, 3), (15000.0, 4)],
    )
    def test_hop_arcs_sum_to_the_ground_distance(self, distance_km, nesting_level):
        layout = constellation_layout(distance_km, nesting_level, ORBIT)

        assert math.fsum(hop.arc_km for hop in layout.hops) == pytest.approx(distance_km)
        assert layout.segment_length_km * layout.segment_count == pytest.approx(distance_km)
        assert len(layout.hops) == 2 ** (nesting_level + 1)
        assert len(layout.segments) == 2**nesting_level

    def test_end_links_beyond_the_horizon(self):
        with pytest.raises(BelowHorizonError):
            constellation_layout(20000, 1, ORBIT)

    @pytest.mark.parametrize(
        "distance_km, nesting_level",
        [(0.0, 3), (-10.0, 3), (1000.0, -1), (1000.0, 1.5)],
    )
    def test_invalid_inputs(self, distance_km, nesting_level):
        with pytest.raises(ValidationError):
            constellation_layout(distance_km, nesting_level, ORBIT)


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"kind": LinkKind.SPACE_GROUND, "path_length_km": 500.0}, InvalidElevationError),
        (
            {"kind": LinkKind.SPACE_GROUND, "path_length_km": 500.0, "elevation_rad": 0.0},
            InvalidElevationError,
        ),
        (
            {"kind": LinkKind.SPACE_GROUND, "path_length_km": 500.0, "elevation_rad": 2.0},
            InvalidElevationError,
        ),
        ({"kind": LinkKind.INTER_SATELLITE, "path_length_km": -1.0}, ValidationError),
        ({"kind": LinkKind.INTER_SATELLITE, "path_length_km": 1000.0}, None),
    ],
)
def test_link_geometry_invariants(kwargs, error):
    if error is None:
        assert LinkGeometry(**kwargs).path_length_m == kwargs["path_length_km"] * 1e3
    else:
        with pytest.raises(error):
            LinkGeometry(**kwargs)


@pytest.mark.parametrize("radius", [0.0, -6371.0, float("nan")])
def test_earth_model_rejects_invalid_radius(radius):
    with pytest.raises(ValidationError):
        EarthModel(radius)
