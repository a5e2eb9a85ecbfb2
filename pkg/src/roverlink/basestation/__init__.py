"""Operator-side service: control client, map, mission log, console bridge."""

from .bridge import ConsoleBridge
from .exports import export_trail, trail_from_csv, trail_to_csv, trail_to_svg
from .keyboard import COMMAND_PERIOD_MS, COMMAND_RATE_HZ, drive_command_from_keys
from .mapview import MapView, project_to_map, unproject_from_map
from .missionlog import EmptyLogError, LogRecord, MissionLog

__all__ = [
    "COMMAND_PERIOD_MS",
    "COMMAND_RATE_HZ",
    "ConsoleBridge",
    "EmptyLogError",
    "LogRecord",
    "MapView",
    "MissionLog",
    "drive_command_from_keys",
    "export_trail",
    "project_to_map",
    "trail_from_csv",
    "trail_to_csv",
    "trail_to_svg",
    "unproject_from_map",
]
