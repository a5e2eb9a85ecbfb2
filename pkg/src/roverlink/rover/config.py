"""Onboard controller configuration.

Plain ``key=value`` text, one setting per line, ``#`` comments. Power
sections use dotted keys::

    control_port=7401
    align_tolerance_deg=10
    power.drive.packs=10000mAh:11.1V,10000mAh:11.1V
    power.drive.series=true
    power.comms.taps=12,5

The ``ROVER_CONFIG`` environment variable overrides the config path passed
to ``load_config``.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..telemetry import SectionId
from .power import default_power_sections
from .state import BatteryPack, PowerSection

ENV_VAR = "ROVER_CONFIG"


@dataclass(frozen=True)
class RoverConfig:
    # network
    control_port: int = 7401
    telemetry_port: int = 7402
    heartbeat_interval_ms: float = 500.0
    watchdog_ms: float = 2000.0

    # control loop
    tick_ms: float = 50.0
    telemetry_period_ms: float = 200.0
    max_steer_deg: float = 35.0

    # autonomy controller
    align_tolerance_deg: float = 10.0
    steer_gain: float = 0.5
    cruise_throttle: float = 0.75
    approach_throttle: float = 0.5
    align_throttle: float = 0.5
    takeover_radius_m: float = 3.5
    arrival_radius_m: float = 1.0
    no_fix_limit: int = 40
    fix_hold_ms: float = 500.0
    realign_threshold_deg: float = 60.0
    vision_search_ticks: int = 600
    takeover_debounce: int = 3

    # attitude filter
    filter_alpha: float = 0.94

    # load model (amps)
    wheel_full_load_a: float = 10.0
    arm_full_load_a: float = 5.0
    compute_load_a: float = 3.0
    comms_load_a: float = 1.5

    power: tuple[PowerSection, ...] = field(default_factory=default_power_sections)


_SCALAR_FIELDS = {
    f.name: f.type for f in dataclasses.fields(RoverConfig) if f.name != "power"
}


def _parse_packs(raw: str) -> tuple[BatteryPack, ...]:
    packs = []
    for chunk in raw.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            cap_s, volt_s = chunk.split(":")
            cap = float(cap_s.lower().removesuffix("mah"))
            volt = float(volt_s.lower().removesuffix("v"))
        except ValueError:
            raise ValueError(f"bad pack spec {chunk!r}, expected e.g. 10000mAh:11.1V") from None
        packs.append(BatteryPack(cap, volt))
    if not packs:
        raise ValueError(f"no packs in {raw!r}")
    return tuple(packs)


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"bad boolean {raw!r}")


def parse_config(text: str) -> RoverConfig:
    scalars: dict[str, object] = {}
    power_raw: dict[str, dict[str, str]] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))

        if key.startswith("power."):
            try:
                _, section, attr = key.split(".")
            except ValueError:
                raise ValueError(f"line {lineno}: bad power key {key!r}") from None
            power_raw.setdefault(section, {})[attr] = value
            continue

        ftype = _SCALAR_FIELDS.get(key)
        if ftype is None:
            raise ValueError(f"line {lineno}: unknown setting {key!r}")
        try:
            if ftype in (int, "int"):
                scalars[key] = int(value)
            elif ftype in (float, "float"):
                scalars[key] = float(value)
            else:
                scalars[key] = value
        except ValueError:
            raise ValueError(f"line {lineno}: bad value {value!r} for {key}") from None

    kwargs: dict[str, object] = dict(scalars)
    if power_raw:
        sections = []
        for name, attrs in power_raw.items():
            try:
                section_id = SectionId(name)
            except ValueError:
                raise ValueError(f"unknown power section {name!r}") from None
            if "packs" not in attrs:
                raise ValueError(f"power section {name!r} needs a packs= entry")
            sections.append(
                PowerSection(
                    section_id,
                    _parse_packs(attrs["packs"]),
                    series=_parse_bool(attrs.get("series", "false")),
                    taps_v=tuple(
                        float(v) for v in attrs.get("taps", "").split(",") if v.strip()
                    ),
                )
            )
        kwargs["power"] = tuple(sections)

    return RoverConfig(**kwargs)


def load_config(path: str | Path | None = None) -> RoverConfig:
    """Load config from ``path``, the ROVER_CONFIG env var, or defaults."""
    override = os.environ.get(ENV_VAR)
    if override:
        path = override
    if path is None:
        return RoverConfig()
    return parse_config(Path(path).read_text())
