"""Complementary-filter attitude estimation from accelerometer + gyro.

Roll and pitch blend gyro integration against the gravity direction seen by
the accelerometer; yaw integrates the gyro and is corrected toward the
compass when a magnetometer reading is supplied (declination assumed zero:
the field and the map share the same north).
"""

from __future__ import annotations

import math

from ..geodesy import angular_difference, normalize_heading
from ..telemetry import Orientation

# Per-tick gyro weight at the 50 ms control tick. The accel/compass share
# (1 - alpha) must pull a full-scale attitude error under half a degree
# within a few seconds, which needs a faster blend than the textbook 0.98.
DEFAULT_FILTER_ALPHA = 0.94

# below this acceleration magnitude (in g) the gravity direction is
# meaningless and the accel correction is skipped
_MIN_ACCEL_G = 0.3


def accel_attitude(accel_g: tuple[float, float, float]) -> tuple[float, float]:
    """Roll and pitch implied by the gravity vector, in degrees."""
    ax, ay, az = accel_g
    roll = math.degrees(math.atan2(ay, az))
    pitch = math.degrees(math.atan2(-ax, math.hypot(ay, az)))
    return roll, pitch


def _wrap_signed(deg: float) -> float:
    wrapped = math.fmod(deg, 360.0)
    if wrapped > 180.0:
        wrapped -= 360.0
    elif wrapped <= -180.0:
        wrapped += 360.0
    return wrapped


def compute_orientation(
    accel_g: tuple[float, float, float] | None,
    gyro_dps: tuple[float, float, float] | None,
    prev: Orientation,
    dt_ms: float,
    mag_heading_deg: float | None = None,
    alpha: float = DEFAULT_FILTER_ALPHA,
) -> Orientation:
    """One filter step. Either sensor may be absent; dt must be positive."""
    if dt_ms <= 0:
        raise ValueError(f"dt must be positive, got {dt_ms!r}")
    dt_s = dt_ms / 1000.0

    gx, gy, gz = gyro_dps if gyro_dps is not None else (0.0, 0.0, 0.0)
    roll = _wrap_signed(prev.roll_deg + gx * dt_s)
    pitch = _wrap_signed(prev.pitch_deg + gy * dt_s)
    yaw = normalize_heading(prev.yaw_deg + gz * dt_s)

    if accel_g is not None and math.hypot(*accel_g) >= _MIN_ACCEL_G:
        accel_roll, accel_pitch = accel_attitude(accel_g)
        roll = _wrap_signed(roll + (1.0 - alpha) * _wrap_signed(accel_roll - roll))
        pitch = _wrap_signed(pitch + (1.0 - alpha) * _wrap_signed(accel_pitch - pitch))

    if mag_heading_deg is not None:
        yaw = normalize_heading(yaw + (1.0 - alpha) * angular_difference(yaw, mag_heading_deg))

    return Orientation(roll, pitch, yaw)
