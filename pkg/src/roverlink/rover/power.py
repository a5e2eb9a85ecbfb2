"""Battery bookkeeping for the three power sections.

Series packs carry the full section current each; parallel packs share it
in proportion to capacity (so equal packs drain at equal fractions). Bus
voltage follows the series rule and does not model sag.
"""

from __future__ import annotations

from typing import Mapping

from ..telemetry import SectionId, SectionPower
from .state import BatteryPack, PowerSection

MS_PER_HOUR = 3_600_000.0


def default_power_sections() -> tuple[PowerSection, ...]:
    """The as-built battery layout.

    Drive: two 10 Ah 11.1 V packs in series (22.2 V bus). Compute: one
    5.4 Ah 11.1 V pack feeding regulated 12 V / 5 V taps. Comms: two
    5.4 Ah 11.1 V packs in series, 22.2 V nominal (the dc-dc converter is
    rated to take "24 V" down to 12 V / 5 V, but two 11.1 V packs make
    22.2 V nominal; the nominal figure is what gets reported).
    """
    return (
        PowerSection(
            SectionId.DRIVE,
            (BatteryPack(10_000.0, 11.1), BatteryPack(10_000.0, 11.1)),
            series=True,
        ),
        PowerSection(
            SectionId.COMPUTE,
            (BatteryPack(5_400.0, 11.1),),
            series=False,
            taps_v=(12.0, 5.0),
        ),
        PowerSection(
            SectionId.COMMS,
            (BatteryPack(5_400.0, 11.1), BatteryPack(5_400.0, 11.1)),
            series=True,
            taps_v=(12.0, 5.0),
        ),
    )


def power_step(
    sections: tuple[PowerSection, ...],
    loads_a: Mapping[SectionId, float],
    dt_ms: float,
) -> tuple[PowerSection, ...]:
    """Drain each section by its load current over ``dt_ms``.

    Charge fractions are clamped at zero and never increase (no charging
    model).
    """
    if dt_ms < 0:
        raise ValueError(f"dt must be non-negative, got {dt_ms!r}")
    out = []
    for section in sections:
        load = float(loads_a.get(section.id, 0.0))
        if load < 0:
            raise ValueError(f"load for {section.id.value} must be non-negative, got {load!r}")
        if load == 0.0 or dt_ms == 0.0:
            out.append(section)
            continue
        drawn_mah = load * 1000.0 * (dt_ms / MS_PER_HOUR)
        if section.series:
            packs = tuple(
                BatteryPack(
                    p.capacity_mah,
                    p.nominal_v,
                    max(0.0, p.charge_fraction - drawn_mah / p.capacity_mah),
                )
                for p in section.packs
            )
        else:
            # parallel packs share current in proportion to capacity, so the
            # per-pack fraction drop is the same: drawn / total capacity
            total = sum(p.capacity_mah for p in section.packs)
            packs = tuple(
                BatteryPack(
                    p.capacity_mah,
                    p.nominal_v,
                    max(0.0, p.charge_fraction - drawn_mah / total),
                )
                for p in section.packs
            )
        out.append(PowerSection(section.id, packs, section.series, section.taps_v))
    return tuple(out)


def section_power_report(sections: tuple[PowerSection, ...]) -> tuple[SectionPower, ...]:
    return tuple(
        SectionPower(s.id, s.bus_v, s.charge_fraction, s.taps_v) for s in sections
    )
