""" Distribution time against beam divergence """
from ..types import Preset

FIG3B: Preset = {
    "name": "fig3b",
    "command": "repeater",
    "figure": "fig3b",
    "description": "Entanglement distribution time over 20000 km against beam divergence.",
    "settings": {
        "geometry.ground_distance_km": 20000.0,
        "beam.divergence_urad": 5.0,
        "sweep.variable": "divergence_urad",
        "sweep.start": 1.0,
        "sweep.stop": 10.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
