"""
Scenarios: layered configuration, sweeps, figure presets and result tables.

A scenario is a flat set of section-prefixed keys (`beam.divergence_urad = 5`). Values are
resolved in layers, later layers winning:

1. the defaults of `SCHEMA`;
2. a bundled preset (`qlink.presets`);
3. a scenario file of `key = value` lines;
4. explicit `key=value` overrides.

Running a scenario sweeps exactly one variable and returns a rectangular `ResultTable`.
Points without a key or without a defined value hold `nan`.
"""

import csv
import hashlib
import io
import json
import logging
import math
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from ._utils import FloatEncoder, format_cell, parallel_map, sentinel
from ._validators import Validators
from .channel import (
    Aperture,
    AtmosphereModel,
    BeamParams,
    DetectorModel,
    PointingModel,
    StrayLightModel,
    loss_curve,
)
from .exceptions import (
    SWEEP_ERRORS,
    ParseError,
    UnknownFigureError,
    ValidationError,
)
from .geometry import EarthModel, LinkKind, OrbitConfig
from .maqkd import (
    MODEL_LEDGER_VERSION,
    MemoryModel,
    Protocol,
    ProtocolParams,
    SatelliteLink,
    rate_at,
    rate_map,
)
from .presets import FIGURES, PRESETS
from .repeater import (
    REPEATER_COLUMNS,
    RepeaterConfig,
    RepeaterSetup,
    SweepVariable,
    setup_at,
    sweep_repeater,
)
from .types import Command, ResultMetadata, ResultTableDictionaryOutput, SettingValue

logger = logging.getLogger(__name__)

validate = Validators()

COMMANDS: tuple[Command, ...] = ("link-budget", "repeater", "maqkd")

SWEEP_VARIABLES: dict[str, dict[str, str]] = {
    "link-budget": {"path_length_km": "km"},
    "repeater": {"distance_km": "km", "divergence_urad": "urad", "memory_efficiency": "1"},
    "maqkd": {"distance_km": "km", "dephasing_time_ms": "ms"},
}

SERIES_KEYS = ("m", "N", "tau_ms", "eta_mem")

LOG_SWEEP_VARIABLES = ("dephasing_time_ms",)


@dataclass(frozen=True)
class SchemaField:
    kind: str
    default: SettingValue
    unit: str = ""
    doc: str = ""

    def convert(self, key: str, raw: SettingValue) -> SettingValue:
        """
        Convert a raw value (text from a file, or a typed preset value) to the field's kind.

        Raises:
            ValidationError: The value does not convert.
        """
        if self.kind == "text":
            return str(raw).strip()

        if self.kind == "bool":
            if isinstance(raw, bool):
                return raw
            text = str(raw).strip().lower()
            if text in ("true", "1", "yes", "on"):
                return True
            if text in ("false", "0", "no", "off"):
                return False
            raise ValidationError(f"{key} must be true or false, got {raw!r}.")

        try:
            if self.kind == "int":
                if isinstance(raw, float) and not raw.is_integer():
                    raise ValueError
                return int(str(raw).strip()) if isinstance(raw, str) else int(raw)
            value = float(raw)
        except ValueError:
            expected = "an integer" if self.kind == "int" else "a number"
            raise ValidationError(f"{key} must be {expected}, got {raw!r}.")

        if math.isnan(value):
            raise ValidationError(f"{key} must not be NaN.")
        return value


SCHEMA: dict[str, SchemaField] = {
    "scenario.name": SchemaField("text", "custom", doc="Name reported in the metadata."),
    "scenario.command": SchemaField("text", "", doc="link-budget, repeater or maqkd."),
    "geometry.ground_distance_km": SchemaField("float", 1000.0, "km"),
    "geometry.altitude_km": SchemaField("float", 400.0, "km"),
    "geometry.earth_radius_km": SchemaField("float", 6371.0, "km"),
    "geometry.nesting_level": SchemaField("int", 3),
    "link.kind": SchemaField("text", "space-ground", doc="space-ground or inter-satellite."),
    "link.divergences_urad": SchemaField(
        "text", "", "urad", "Comma-separated divergences, one loss column each."
    ),
    "beam.divergence_urad": SchemaField("float", 10.0, "urad"),
    "beam.wavelength_nm": SchemaField("float", 780.0, "nm"),
    "beam.m_squared": SchemaField("float", 1.0),
    "aperture.sender_radius_m": SchemaField("float", 0.15, "m"),
    "aperture.receiver_radius_m": SchemaField("float", 0.5, "m"),
    "atmosphere.zenith_transmissivity": SchemaField("float", 0.8),
    "pointing.enabled": SchemaField("bool", False),
    "pointing.sigma_urad": SchemaField("float", 0.0, "urad"),
    "noise.dark_prob_per_window": SchemaField("float", 1e-6),
    "noise.window_us": SchemaField("float", 1.0, "us"),
    "noise.sky_brightness": SchemaField("float", 0.0, "W m^-2 sr^-1 nm^-1"),
    "noise.fov_sr": SchemaField("float", 0.0, "sr"),
    "noise.filter_bandwidth_nm": SchemaField("float", 0.0, "nm"),
    "detector.efficiency": SchemaField("float", 0.7),
    "repeater.source_rate_mhz": SchemaField("float", 20.0, "MHz"),
    "repeater.source_efficiency": SchemaField("float", 1.0),
    "repeater.pair_probability": SchemaField("float", 0.01),
    "repeater.qnd_efficiency": SchemaField("float", 0.5),
    "repeater.memory_efficiency": SchemaField("float", 0.9),
    "repeater.memory_split": SchemaField("text", "balanced", doc="balanced or per-stage."),
    "repeater.detector_efficiency": SchemaField("float", 0.9),
    "repeater.dlcz_modes": SchemaField("int", 100),
    "memory.dephasing_time_ms": SchemaField("float", 5.0, "ms"),
    "memory.efficiency": SchemaField("float", 0.8),
    "memory.split": SchemaField("text", "balanced", doc="balanced or per-stage."),
    "memory.temporal_modes": SchemaField("int", 1),
    "memory.pairs": SchemaField("int", 1),
    "memory.qnd_efficiency": SchemaField("float", 0.5),
    "protocol.source_rate_mhz": SchemaField("float", 20.0, "MHz"),
    "protocol.ec_inefficiency": SchemaField("float", 1.16),
    "protocol.misalignment_error": SchemaField("float", 0.015),
    "protocol.bsm_success": SchemaField("float", 0.5),
    "protocol.coupling_loss_db": SchemaField("float", 12.0, "dB"),
    "protocol.uplink_penalty_db": SchemaField("float", 0.0, "dB"),
    "protocol.memory_capture_loss_db": SchemaField("float", 11.5, "dB"),
    "maqkd.protocol": SchemaField("text", "uplink", doc="Protocol of a rate map."),
    "maqkd.series": SchemaField(
        "text", "e91;uplink;downlink", doc="Protocols of a distance sweep, ';'-separated."
    ),
    "sweep.variable": SchemaField("text", "distance_km"),
    "sweep.start": SchemaField("float", 200.0),
    "sweep.stop": SchemaField("float", 1600.0),
    "sweep.points": SchemaField("int", 50),
    "sweep.scale": SchemaField(
        "text", "auto", doc="linear, log, or auto: log for time sweeps, linear otherwise."
    ),
    "grid.efficiency_start": SchemaField("float", 0.05),
    "grid.efficiency_stop": SchemaField("float", 1.0),
    "grid.efficiency_points": SchemaField("int", 50),
}

SERIES_FIELD = SchemaField("float", 0.0)


@dataclass(frozen=True)
class Series:
    """One protocol column of a key-rate distance sweep."""

    protocol: Protocol
    overrides: tuple[tuple[str, float], ...] = ()

    @property
    def column(self) -> str:
        if self.protocol is Protocol.E91:
            return "R_e91"
        if self.protocol is Protocol.UPLINK:
            return "R_uplink"

        values = dict(self.overrides)
        if "m" in values and "N" in values:
            return f"R_down_m{int(values['m'])}_N{int(values['N'])}"
        return "R_downlink"


def parse_series(text: str) -> list[Series]:
    """
    Parse `protocol[:key=value...]` entries separated by ';'.

    Examples:
        >>> parse_series("e91;downlink:m=100:N=1000")[1].column
        'R_down_m100_N1000'

    Raises:
        ValidationError: Unknown protocol or key, or a value that is not a number.
    """
    series = []

    for entry in filter(None, (part.strip() for part in text.split(";"))):
        name, *options = entry.split(":")

        try:
            protocol = Protocol(name.strip())
        except ValueError:
            raise ValidationError(
                f"maqkd.series: unknown protocol {name!r}, use e91, uplink or downlink."
            )

        overrides = []
        for option in options:
            key, sep, value = option.partition("=")
            key = key.strip()
            if not sep or key not in SERIES_KEYS:
                raise ValidationError(
                    f"maqkd.series: bad option {option!r}, keys are {', '.join(SERIES_KEYS)}."
                )
            overrides.append((key, float(SERIES_FIELD.convert(f"maqkd.series {key}", value))))

        series.append(Series(protocol, tuple(overrides)))

    if not series:
        raise ValidationError("maqkd.series must name at least one protocol.")

    return series


@dataclass(frozen=True)
class Scenario:
    """
    A fully resolved scenario.

    Build it with `load_scenario`; every builder method below returns a validated model
    object of one module.
    """

    name: str
    command: Command
    settings: Mapping[str, SettingValue] = field(default_factory=dict)

    def __getitem__(self, key: str) -> SettingValue:
        return self.settings[key]

    def number(self, key: str) -> float:
        return float(self.settings[key])

    def integer(self, key: str) -> int:
        return int(self.settings[key])

    def text(self, key: str) -> str:
        return str(self.settings[key])

    @property
    def canonical(self) -> str:
        """One `key = value` line per setting, sorted, with `repr` for numbers."""
        lines = []
        for key in sorted(self.settings):
            value = self.settings[key]
            shown = repr(value) if isinstance(value, (int, float)) else str(value)
            lines.append(f"{key} = {shown}")
        return "\n".join([f"command = {self.command}", *lines]) + "\n"

    @property
    def scenario_hash(self) -> str:
        return hashlib.sha256(self.canonical.encode("utf-8")).hexdigest()

    def earth(self) -> EarthModel:
        return EarthModel(self.number("geometry.earth_radius_km"))

    def orbit(self) -> OrbitConfig:
        return OrbitConfig(self.number("geometry.altitude_km"))

    def beam(self, divergence_urad: float | None = None) -> BeamParams:
        divergence = (
            self.number("beam.divergence_urad") if divergence_urad is None else divergence_urad
        )
        validate.positive("beam.divergence_urad", divergence)
        return BeamParams.from_divergence(
            divergence * 1e-6,
            wavelength_m=self.number("beam.wavelength_nm") * 1e-9,
            m_squared=self.number("beam.m_squared"),
        )

    def receiver(self) -> Aperture:
        return Aperture(self.number("aperture.receiver_radius_m"))

    def atmosphere(self) -> AtmosphereModel:
        return AtmosphereModel(self.number("atmosphere.zenith_transmissivity"))

    def pointing(self) -> PointingModel:
        return PointingModel(
            sigma_rad=self.number("pointing.sigma_urad") * 1e-6,
            enabled=bool(self["pointing.enabled"]),
        )

    def stray(self) -> StrayLightModel:
        return StrayLightModel(
            sky_brightness=self.number("noise.sky_brightness") * 1e9,
            fov_sr=self.number("noise.fov_sr"),
            filter_bandwidth_m=self.number("noise.filter_bandwidth_nm") * 1e-9,
            window_s=self.number("noise.window_us") * 1e-6,
            wavelength_m=self.number("beam.wavelength_nm") * 1e-9,
        )

    def detector(self, efficiency_key: str = "detector.efficiency") -> DetectorModel:
        return DetectorModel(
            efficiency=self.number(efficiency_key),
            dark_prob_per_window=self.number("noise.dark_prob_per_window"),
        )

    def satellite_link(self) -> SatelliteLink:
        return SatelliteLink(
            orbit=self.orbit(),
            earth=self.earth(),
            beam=self.beam(),
            sender=Aperture(self.number("aperture.sender_radius_m")),
            receiver=self.receiver(),
            atm=self.atmosphere(),
            pointing=self.pointing(),
        )

    def protocol_params(self) -> ProtocolParams:
        return ProtocolParams(
            source_rate_hz=self.number("protocol.source_rate_mhz") * 1e6,
            ec_inefficiency=self.number("protocol.ec_inefficiency"),
            misalignment_error=self.number("protocol.misalignment_error"),
            bsm_success=self.number("protocol.bsm_success"),
            coupling_loss_db=self.number("protocol.coupling_loss_db"),
            uplink_penalty_db=self.number("protocol.uplink_penalty_db"),
            memory_capture_loss_db=self.number("protocol.memory_capture_loss_db"),
            detector=self.detector(),
            stray=self.stray(),
        )

    def memory(self, **overrides: float) -> MemoryModel:
        """The memory model, with optional series overrides (`m`, `N`, `tau_ms`, `eta_mem`)."""
        return MemoryModel.from_efficiency(
            overrides.get("eta_mem", self.number("memory.efficiency")),
            self.text("memory.split"),  # type: ignore[arg-type]
            dephasing_time_s=overrides.get("tau_ms", self.number("memory.dephasing_time_ms"))
            * 1e-3,
            temporal_modes=_as_count("N", overrides.get("N", self.integer("memory.temporal_modes"))),
            pairs=_as_count("m", overrides.get("m", self.integer("memory.pairs"))),
            qnd_efficiency=self.number("memory.qnd_efficiency"),
        )

    def repeater_setup(self) -> RepeaterSetup:
        split = self.text("repeater.memory_split")
        config = RepeaterConfig.from_memory_efficiency(
            self.number("repeater.memory_efficiency"),
            split,  # type: ignore[arg-type]
            nesting_level=self.integer("geometry.nesting_level"),
            source_rate_hz=self.number("repeater.source_rate_mhz") * 1e6,
            source_efficiency=self.number("repeater.source_efficiency"),
            pair_probability=self.number("repeater.pair_probability"),
            qnd_efficiency=self.number("repeater.qnd_efficiency"),
            detector=self.detector("repeater.detector_efficiency"),
        )
        return RepeaterSetup(
            ground_distance_km=self.number("geometry.ground_distance_km"),
            orbit=self.orbit(),
            earth=self.earth(),
            beam=self.beam(),
            rx=self.receiver(),
            atm=self.atmosphere(),
            pointing=self.pointing(),
            config=config,
            dlcz_modes=self.integer("repeater.dlcz_modes"),
            memory_split=split,  # type: ignore[arg-type]
        )

    def link_kind(self) -> LinkKind:
        try:
            return LinkKind(self.text("link.kind"))
        except ValueError:
            raise ValidationError(
                f"link.kind must be space-ground or inter-satellite, got {self['link.kind']!r}."
            )

    def divergences_urad(self) -> list[float]:
        text = self.text("link.divergences_urad")
        if not text:
            return [self.number("beam.divergence_urad")]

        field_ = SCHEMA["beam.divergence_urad"]
        values = [
            float(field_.convert("link.divergences_urad", part))
            for part in text.split(",")
            if part.strip()
        ]
        for value in values:
            validate.positive("link.divergences_urad", value)
        return values

    def series(self) -> list[Series]:
        return parse_series(self.text("maqkd.series"))

    def map_protocol(self) -> Protocol:
        try:
            return Protocol(self.text("maqkd.protocol"))
        except ValueError:
            raise ValidationError(
                f"maqkd.protocol must be e91, uplink or downlink, got {self['maqkd.protocol']!r}."
            )

    def sweep_values(self) -> list[float]:
        """
        Abscissa of the sweep.

        Raises:
            ValidationError: Fewer than one point, or a log scale touching zero.
        """
        scale = self.text("sweep.scale")
        if scale == "auto":
            scale = "log" if self.text("sweep.variable") in LOG_SWEEP_VARIABLES else "linear"

        return _grid(
            "sweep",
            self.number("sweep.start"),
            self.number("sweep.stop"),
            self.integer("sweep.points"),
            scale,
        )

    def efficiency_values(self) -> list[float]:
        values = _grid(
            "grid.efficiency",
            self.number("grid.efficiency_start"),
            self.number("grid.efficiency_stop"),
            self.integer("grid.efficiency_points"),
            "linear",
        )
        for value in values:
            validate.probability("grid.efficiency", value)
        return values

    def validate(self) -> None:
        """
        Build every model the command needs so that invalid values fail before running.

        Raises:
            ValidationError: The first invariant violated.
        """
        variable = self.text("sweep.variable")
        known = SWEEP_VARIABLES[self.command]
        if variable not in known:
            raise ValidationError(
                f"sweep.variable {variable!r} is not valid for {self.command}; "
                f"use one of {', '.join(known)}."
            )

        values = self.sweep_values()

        if self.command == "link-budget":
            self.link_kind()
            self.orbit()
            self.earth()
            self.receiver()
            self.atmosphere()
            for divergence in self.divergences_urad():
                self.beam(divergence)
            for value in values:
                validate.non_negative("sweep.path_length_km", value)

        elif self.command == "repeater":
            setup = self.repeater_setup()
            sweep = SweepVariable(variable)

            for value in values:
                setup_at(setup, sweep, value)

        else:
            self.satellite_link()
            self.protocol_params()
            self.memory()
            if variable == "dephasing_time_ms":
                self.map_protocol()
                self.efficiency_values()
                for value in values:
                    validate.positive("sweep.dephasing_time_ms", value)
            else:
                for series in self.series():
                    self.memory(**dict(series.overrides))
                for value in values:
                    validate.non_negative("sweep.distance_km", value)


def _as_count(name: str, value: float) -> int:
    if float(value) != int(value):
        raise ValidationError(f"maqkd.series {name} must be an integer, got {value}.")
    return int(value)


def _grid(name: str, start: float, stop: float, points: int, scale: str) -> list[float]:
    validate.integer_at_least(f"{name}.points", points, 1)

    if scale == "linear":
        values = np.linspace(start, stop, points)
    elif scale == "log":
        validate.positive(f"{name}.start", start)
        validate.positive(f"{name}.stop", stop)
        values = np.geomspace(start, stop, points)
    else:
        raise ValidationError(f"{name}.scale must be linear, log or auto, got {scale!r}.")

    return [float(value) for value in values]


@dataclass(frozen=True)
class ResultTable:
    """
    Rectangular result of a run: named columns, a units row and numeric rows.

    Non-finite cells are written as the "nan" sentinel.
    """

    columns: tuple[str, ...]
    units: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    metadata: ResultMetadata

    def __post_init__(self):
        if len(self.units) != len(self.columns):
            raise ValidationError("Every column needs a unit.")

        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValidationError(
                    f"Row of {len(row)} cells does not match {len(self.columns)} columns."
                )

    def column(self, name: str) -> list[float]:
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def to_dict(self) -> ResultTableDictionaryOutput:
        return {
            "metadata": self.metadata,
            "columns": list(self.columns),
            "units": list(self.units),
            "rows": [[sentinel(cell) for cell in row] for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), cls=FloatEncoder, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buffer = io.StringIO()
        buffer.write("# metadata: " + json.dumps(self.metadata, sort_keys=True) + "\n")

        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerow(self.units)
        writer.writerows([format_cell(cell) for cell in row] for row in self.rows)
        return buffer.getvalue()


def parse_scenario_text(text: str, source: str = "<scenario>") -> dict[str, str]:
    """
    Parse `key = value` lines. Blank lines and lines starting with '#' are skipped.

    Raises:
        ParseError: A line has no '=', an empty key, or repeats a key.
    """
    values: dict[str, str] = {}

    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue

        key, sep, value = stripped.partition("=")
        key = key.strip()

        if not sep or not key:
            raise ParseError(f"{source}:{number}: expected 'key = value', got {line!r}.")
        if key in values:
            raise ParseError(f"{source}:{number}: duplicate key {key!r}.")

        values[key] = value.strip().strip('"').strip("'")

    return values


def _apply(settings: dict[str, SettingValue], values: Mapping[str, SettingValue]) -> None:
    for key, raw in values.items():
        if key not in SCHEMA:
            raise ValidationError(f"Unknown scenario key {key!r}.")
        settings[key] = SCHEMA[key].convert(key, raw)


def load_scenario(
    path: str | Path | None = None,
    preset: str | None = None,
    overrides: Iterable[str] = (),
    command: Command | None = None,
) -> Scenario:
    """
    Resolve and validate a scenario from its layers.

    Examples:
        >>> load_scenario(preset="fig3a").number("beam.divergence_urad")
        5.0

    Args:
        path (str, Path, optional): Scenario file of `key = value` lines.
        preset (str, optional): Name of a bundled preset.
        overrides (Iterable[str]): `key=value` strings applied last.
        command (str, optional): Command requested by the caller; must agree with the
            preset and the file when they name one.

    Raises:
        ParseError: The file cannot be read or is malformed, or an override has no '='.
        ValidationError: Unknown key or a value violating its invariant.
        UnknownFigureError: Unknown preset.
    """
    settings: dict[str, SettingValue] = {key: f.default for key, f in SCHEMA.items()}
    resolved: str | None = None

    if preset is not None:
        if preset not in PRESETS:
            raise UnknownFigureError(
                UnknownFigureError.unknown_msg.format(name=preset, known=", ".join(PRESETS))
            )
        chosen = PRESETS[preset]
        _apply(settings, chosen["settings"])
        settings["scenario.name"] = chosen["name"]
        resolved = chosen["command"]

    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as error:
            raise ParseError(f"Cannot read scenario file {path}: {error}")
        _apply(settings, parse_scenario_text(text, str(path)))

    for override in overrides:
        key, sep, value = override.partition("=")
        if not sep or not key.strip():
            raise ParseError(f"Override {override!r} is not of the form key=value.")
        _apply(settings, {key.strip(): value.strip()})

    for candidate in (str(settings["scenario.command"]) or None, command):
        if candidate is None:
            continue
        if candidate not in COMMANDS:
            raise ValidationError(
                f"scenario.command must be one of {', '.join(COMMANDS)}, got {candidate!r}."
            )
        if resolved is not None and candidate != resolved:
            raise ValidationError(
                f"Scenario is a {resolved} scenario, it cannot run as {candidate}."
            )
        resolved = candidate

    if resolved is None:
        raise ValidationError(
            "No command: pass a preset, set scenario.command or run a command."
        )

    settings["scenario.command"] = resolved
    scenario = Scenario(
        name=str(settings["scenario.name"]),
        command=resolved,  # type: ignore[arg-type]
        settings=settings,
    )
    scenario.validate()
    logger.debug("Loaded scenario %s (%s)", scenario.name, scenario.scenario_hash[:12])
    return scenario


def _metadata(scenario: Scenario) -> ResultMetadata:
    from . import __version__

    return {
        "tool_version": __version__,
        "scenario_hash": scenario.scenario_hash,
        "model_ledger_version": MODEL_LEDGER_VERSION,
        "scenario": scenario.name,
    }


def _no_key_as_nan(value: float) -> float:
    return value if value > 0.0 else math.nan


def _series_point(
    distance_km: float,
    protocol: Protocol,
    link: SatelliteLink,
    memory: MemoryModel,
    params: ProtocolParams,
) -> float:
    try:
        return _no_key_as_nan(rate_at(protocol, distance_km, link, memory, params))
    except SWEEP_ERRORS as error:
        logger.debug("No rate for %s at %s km: %s", protocol.value, distance_km, error)
        return math.nan


def _run_link_budget(scenario: Scenario) -> tuple[list[str], list[str], list[tuple]]:
    distances = np.array(scenario.sweep_values())
    divergences = scenario.divergences_urad()
    curves = [
        loss_curve(
            scenario.link_kind(),
            distances,
            scenario.beam(divergence),
            scenario.receiver(),
            scenario.atmosphere(),
            scenario.orbit(),
            scenario.earth(),
        )
        for divergence in divergences
    ]
    columns = ["path_length_km", *(f"loss_db_{value:g}urad" for value in divergences)]
    units = ["km", *("dB" for _ in divergences)]
    rows = [
        (float(distance), *(float(curve[index]) for curve in curves))
        for index, distance in enumerate(distances)
    ]
    return columns, units, rows


def _run_repeater(scenario: Scenario, jobs: int) -> tuple[list[str], list[str], list[tuple]]:
    variable = SweepVariable(scenario.text("sweep.variable"))
    rows = sweep_repeater(scenario.repeater_setup(), variable, scenario.sweep_values(), jobs)
    columns = [variable.value, *REPEATER_COLUMNS]
    units = [SWEEP_VARIABLES["repeater"][variable.value], "s", "s", "s", "s", "1", "1", "modes"]
    return columns, units, rows


def _run_key_rates(scenario: Scenario, jobs: int) -> tuple[list[str], list[str], list[tuple]]:
    link = scenario.satellite_link()
    params = scenario.protocol_params()
    distances = scenario.sweep_values()
    series = scenario.series()

    columns_by_series = [
        parallel_map(
            partial(
                _series_point,
                protocol=entry.protocol,
                link=link,
                memory=scenario.memory(**dict(entry.overrides)),
                params=params,
            ),
            distances,
            jobs,
        )
        for entry in series
    ]

    columns = ["L_km", *(entry.column for entry in series)]
    units = ["km", *("bit/s" for _ in series)]
    rows = [
        (distance, *(values[index] for values in columns_by_series))
        for index, distance in enumerate(distances)
    ]
    return columns, units, rows


def _run_rate_map(scenario: Scenario, jobs: int) -> tuple[list[str], list[str], list[tuple]]:
    taus_s = [value * 1e-3 for value in scenario.sweep_values()]
    etas = scenario.efficiency_values()
    rates = rate_map(
        scenario.map_protocol(),
        scenario.number("geometry.ground_distance_km"),
        taus_s,
        etas,
        scenario.satellite_link(),
        scenario.memory(),
        scenario.protocol_params(),
        split=scenario.text("memory.split"),  # type: ignore[arg-type]
        jobs=jobs,
    )
    rows = [
        (tau, eta, _no_key_as_nan(float(rates[i, j])))
        for i, tau in enumerate(taus_s)
        for j, eta in enumerate(etas)
    ]
    return ["tau_s", "eta_mem", "R_bits_per_s"], ["s", "1", "bit/s"], rows


def run(scenario: Scenario, jobs: int = 1) -> ResultTable:
    """
    Run a scenario's sweep.

    Args:
        scenario (Scenario): A scenario returned by `load_scenario`.
        jobs (int): Worker processes for the sweep points. The table is identical for any
            value.

    Returns:
        ResultTable: One row per sweep point (per grid cell for rate maps).
    """
    validate.integer_at_least("jobs", jobs, 1)
    logger.info("Running %s scenario %s", scenario.command, scenario.name)

    if scenario.command == "link-budget":
        columns, units, rows = _run_link_budget(scenario)
    elif scenario.command == "repeater":
        columns, units, rows = _run_repeater(scenario, jobs)
    elif scenario.text("sweep.variable") == "dephasing_time_ms":
        columns, units, rows = _run_rate_map(scenario, jobs)
    else:
        columns, units, rows = _run_key_rates(scenario, jobs)

    logger.info("Finished %s with %d rows", scenario.name, len(rows))

    return ResultTable(
        columns=tuple(columns),
        units=tuple(units),
        rows=tuple(tuple(float(cell) for cell in row) for row in rows),
        metadata=_metadata(scenario),
    )


def reproduce(figure_id: str, jobs: int = 1) -> ResultTable:
    """
    Run the bundled preset of a figure.

    Raises:
        UnknownFigureError: `figure_id` is not one of `qlink.presets.FIGURES`.
    """
    if figure_id not in FIGURES:
        raise UnknownFigureError(
            UnknownFigureError.unknown_msg.format(name=figure_id, known=", ".join(FIGURES))
        )

    return run(load_scenario(preset=figure_id), jobs)
