from typing import Literal, TypedDict

from typing_extensions import NotRequired

SettingValue = str | int | float

Command = Literal["link-budget", "repeater", "maqkd"]


class Preset(TypedDict):
    name: str
    command: Command
    description: str
    settings: dict[str, SettingValue]
    figure: NotRequired[str]


class ResultMetadata(TypedDict):
    tool_version: str
    scenario_hash: str
    model_ledger_version: str
    scenario: str


class ResultTableDictionaryOutput(TypedDict):
    metadata: ResultMetadata
    columns: list[str]
    units: list[str]
    rows: list[list[float | str]]
