"""Keyboard-to-drive mapping with deadman semantics.

W/S throttle forward/back, A/D steer left/right at full deflection. No keys
held means a zero command: the operator emits at 10 Hz while connected, so
releasing everything stops the rover within one command period.
"""

from __future__ import annotations

from typing import Iterable

from ..protocol.messages import Drive
from ..rover.state import MAX_STEER_DEG

COMMAND_RATE_HZ = 10.0
COMMAND_PERIOD_MS = 1000.0 / COMMAND_RATE_HZ


def drive_command_from_keys(pressed: Iterable[str], max_steer_deg: float = MAX_STEER_DEG) -> Drive:
    keys = {k.lower() for k in pressed}
    throttle = (1.0 if "w" in keys else 0.0) - (1.0 if "s" in keys else 0.0)
    steer = (max_steer_deg if "d" in keys else 0.0) - (max_steer_deg if "a" in keys else 0.0)
    return Drive(throttle=throttle, steer_deg=steer)
