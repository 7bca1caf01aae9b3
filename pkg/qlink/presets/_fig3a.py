""" Distribution time against total distance """
from ..types import Preset

FIG3A: Preset = {
    "name": "fig3a",
    "command": "repeater",
    "figure": "fig3a",
    "description": "Entanglement distribution time of the four architectures against distance.",
    "settings": {
        "geometry.ground_distance_km": 20000.0,
        "beam.divergence_urad": 5.0,
        "sweep.variable": "distance_km",
        "sweep.start": 2000.0,
        "sweep.stop": 20000.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
