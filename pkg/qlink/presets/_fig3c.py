""" Distribution time against memory efficiency """
from ..types import Preset

FIG3C: Preset = {
    "name": "fig3c",
    "command": "repeater",
    "figure": "fig3c",
    "description": "Entanglement distribution time over 20000 km against memory efficiency.",
    "settings": {
        "geometry.ground_distance_km": 20000.0,
        "beam.divergence_urad": 5.0,
        "sweep.variable": "memory_efficiency",
        "sweep.start": 0.5,
        "sweep.stop": 1.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
