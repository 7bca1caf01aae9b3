""" Space-ground losses """
from ..types import Preset

FIG6A: Preset = {
    "name": "fig6a",
    "command": "link-budget",
    "figure": "fig6a",
    "description": "Diffraction and atmospheric loss of space-ground hops against distance.",
    "settings": {
        "link.kind": "space-ground",
        "link.divergences_urad": "1,5,10",
        "sweep.variable": "path_length_km",
        "sweep.start": 400.0,
        "sweep.stop": 2200.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
