""" Downlink key rate map, one memory pair """
from ..types import Preset

FIG4B: Preset = {
    "name": "fig4b",
    "command": "maqkd",
    "figure": "fig4b",
    "description": (
        "Downlink key rate at 1000 km with m=1, N=1000 against dephasing time "
        "and memory efficiency."
    ),
    "settings": {
        "geometry.ground_distance_km": 1000.0,
        "memory.temporal_modes": 1000,
        "memory.pairs": 1,
        "maqkd.protocol": "downlink",
        "sweep.variable": "dephasing_time_ms",
        "sweep.start": 100.0,
        "sweep.stop": 100000.0,
        "sweep.points": 50,
        "sweep.scale": "log",
    },
}
