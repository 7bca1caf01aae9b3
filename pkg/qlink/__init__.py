from .channel import (
    Aperture,
    AtmosphereModel,
    BeamParams,
    ChannelBudget,
    DetectorModel,
    PointingModel,
    StrayLightModel,
    hop_transmission,
)
from .geometry import (
    Architecture,
    ConstellationLayout,
    EarthModel,
    LinkGeometry,
    LinkKind,
    OrbitConfig,
    constellation_layout,
)
from .maqkd import (
    KeyRateResult,
    MemoryModel,
    Protocol,
    ProtocolParams,
    SatelliteLink,
    downlink_ma_rate,
    e91_rate,
    uplink_ma_rate,
)
from .repeater import RepeaterConfig, RepeaterResult, dlcz_time, qnd_time
from .scenario import ResultTable, Scenario, load_scenario, reproduce, run

__version__ = "0.1.0"

__all__ = [
    "Aperture",
    "Architecture",
    "AtmosphereModel",
    "BeamParams",
    "ChannelBudget",
    "ConstellationLayout",
    "DetectorModel",
    "EarthModel",
    "KeyRateResult",
    "LinkGeometry",
    "LinkKind",
    "MemoryModel",
    "OrbitConfig",
    "PointingModel",
    "Protocol",
    "ProtocolParams",
    "RepeaterConfig",
    "RepeaterResult",
    "ResultTable",
    "SatelliteLink",
    "Scenario",
    "StrayLightModel",
    "constellation_layout",
    "dlcz_time",
    "downlink_ma_rate",
    "e91_rate",
    "hop_transmission",
    "load_scenario",
    "qnd_time",
    "reproduce",
    "run",
    "uplink_ma_rate",
]
