""" Key rates of every protocol against distance """
from ..types import Preset

FIG5: Preset = {
    "name": "fig5",
    "command": "maqkd",
    "figure": "fig5",
    "description": "E91, uplink and downlink key rates against ground distance.",
    "settings": {
        "memory.dephasing_time_ms": 5.0,
        "maqkd.series": (
            "e91;uplink;"
            "downlink:m=1:N=1:tau_ms=7500;"
            "downlink:m=1:N=1000:tau_ms=7500;"
            "downlink:m=100:N=1000:tau_ms=100"
        ),
        "sweep.variable": "distance_km",
        "sweep.start": 200.0,
        "sweep.stop": 1600.0,
        "sweep.points": 50,
        "sweep.scale": "linear",
    },
}
