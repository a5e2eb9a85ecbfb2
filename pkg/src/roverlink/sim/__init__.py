"""Deterministic rover + field simulator and mission runner."""

from .runner import AutonomyMission, ManualDriveScript, MissionResult, run_mission
from .scenario import AmbientConditions, Scenario, build_world, load_scenario, scenario_from_dict
from .world import (
    BEACON_DETECTION_RANGE_M,
    CAMERA_FOV_DEG,
    Beacon,
    NoiseModel,
    RoverBody,
    SimWorld,
    TerrainFeature,
    TerrainKind,
    observe_beacon,
    sample_compass,
    sample_gps,
    step,
    traversable,
    vertical_drop_limit_m,
)

__all__ = [
    "AmbientConditions",
    "AutonomyMission",
    "BEACON_DETECTION_RANGE_M",
    "Beacon",
    "CAMERA_FOV_DEG",
    "ManualDriveScript",
    "MissionResult",
    "NoiseModel",
    "RoverBody",
    "Scenario",
    "SimWorld",
    "TerrainFeature",
    "TerrainKind",
    "build_world",
    "load_scenario",
    "observe_beacon",
    "run_mission",
    "sample_compass",
    "sample_gps",
    "scenario_from_dict",
    "step",
    "traversable",
    "vertical_drop_limit_m",
]
