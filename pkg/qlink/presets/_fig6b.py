""" Inter-satellite losses """
from ..types import Preset

FIG6B: Preset = {
    "name": "fig6b",
    "command": "link-budget",
    "figure": "fig6b",
    "description": "Diffraction loss of inter-satellite hops against distance.",
    "settings": {
        "link.kind": "inter-satellite",
        "link.divergences_urad": "1,5,10",
        "sweep.variable": "path_length_km",
        "sweep.start": 100.0,
        "sweep.stop": 5000.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
