"""Onboard controller: safety latches, autonomy, attitude, power, telemetry."""

from .autonomy import AutonomyParams, AutonomyState, BeaconObservation, run_autonomy_step
from .config import RoverConfig, load_config, parse_config
from .controller import RoverController, SensorReadings, TickOutput
from .orientation import compute_orientation
from .power import default_power_sections, power_step, section_power_report
from .state import (
    ARM_JOINT_COUNT,
    MAX_ARM_PAYLOAD_KG,
    MAX_STEER_DEG,
    WHEEL_COUNT,
    ArmState,
    BatteryPack,
    DriveState,
    PowerSection,
)

__all__ = [
    "ARM_JOINT_COUNT",
    "ArmState",
    "AutonomyParams",
    "AutonomyState",
    "BatteryPack",
    "BeaconObservation",
    "DriveState",
    "MAX_ARM_PAYLOAD_KG",
    "MAX_STEER_DEG",
    "PowerSection",
    "RoverConfig",
    "RoverController",
    "SensorReadings",
    "TickOutput",
    "WHEEL_COUNT",
    "compute_orientation",
    "default_power_sections",
    "load_config",
    "parse_config",
    "power_step",
    "run_autonomy_step",
    "section_power_report",
]
