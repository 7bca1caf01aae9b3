""" Downlink key rate map, one hundred memory pairs """
from ..types import Preset

FIG4C: Preset = {
    "name": "fig4c",
    "command": "maqkd",
    "figure": "fig4c",
    "description": (
        "Downlink key rate at 1000 km with m=100, N=1000 against dephasing time "
        "and memory efficiency."
    ),
    "settings": {
        "geometry.ground_distance_km": 1000.0,
        "memory.temporal_modes": 1000,
        "memory.pairs": 100,
        "maqkd.protocol": "downlink",
        "sweep.variable": "dephasing_time_ms",
        "sweep.start": 1.0,
        "sweep.stop": 10000.0,
        "sweep.points": 50,
        "sweep.scale": "log",
    },
}
