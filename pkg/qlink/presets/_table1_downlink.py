""" Downlink column of the MA-QKD parameter table """
from ..types import Preset

TABLE1_DOWNLINK: Preset = {
    "name": "table1-downlink",
    "command": "maqkd",
    "description": "Downlink MA-QKD against E91 with the tabulated downlink parameters.",
    "settings": {
        "geometry.altitude_km": 400.0,
        "aperture.sender_radius_m": 0.15,
        "aperture.receiver_radius_m": 0.5,
        "beam.divergence_urad": 10.0,
        "detector.efficiency": 0.7,
        "memory.efficiency": 0.8,
        "memory.dephasing_time_ms": 7500.0,
        "memory.temporal_modes": 1000,
        "memory.pairs": 1,
        "protocol.source_rate_mhz": 20.0,
        "maqkd.series": "e91;downlink",
        "sweep.variable": "distance_km",
        "sweep.start": 200.0,
        "sweep.stop": 1600.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
