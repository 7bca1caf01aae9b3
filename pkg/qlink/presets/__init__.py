from ..types import Preset
from ._fig3a import FIG3A
from ._fig3b import FIG3B
from ._fig3c import FIG3C
from ._fig4a import FIG4A
from ._fig4b import FIG4B
from ._fig4c import FIG4C
from ._fig5 import FIG5
from ._fig6a import FIG6A
from ._fig6b import FIG6B
from ._table1_downlink import TABLE1_DOWNLINK
from ._table1_uplink import TABLE1_UPLINK

PRESETS: dict[str, Preset] = {
    preset["name"]: preset
    for preset in (
        FIG3A,
        FIG3B,
        FIG3C,
        FIG4A,
        FIG4B,
        FIG4C,
        FIG5,
        FIG6A,
        FIG6B,
        TABLE1_UPLINK,
        TABLE1_DOWNLINK,
    )
}

FIGURES: tuple[str, ...] = tuple(
    name for name, preset in PRESETS.items() if "figure" in preset
)

__all__ = [
    "PRESETS",
    "FIGURES",
    "FIG3A",
    "FIG3B",
    "FIG3C",
    "FIG4A",
    "FIG4B",
    "FIG4C",
    "FIG5",
    "FIG6A",
    "FIG6B",
    "TABLE1_UPLINK",
    "TABLE1_DOWNLINK",
]
