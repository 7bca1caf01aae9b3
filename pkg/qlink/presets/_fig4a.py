""" Uplink key rate map at 1000 km """
from ..types import Preset

FIG4A: Preset = {
    "name": "fig4a",
    "command": "maqkd",
    "figure": "fig4a",
    "description": "Uplink key rate at 1000 km against dephasing time and memory efficiency.",
    "settings": {
        "geometry.ground_distance_km": 1000.0,
        "maqkd.protocol": "uplink",
        "sweep.variable": "dephasing_time_ms",
        "sweep.start": 0.1,
        "sweep.stop": 100.0,
        "sweep.points": 50,
        "sweep.scale": "log",
    },
}
