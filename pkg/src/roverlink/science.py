"""Soil habitability arithmetic and sample report generation.

Three checks run on each subsurface sample: whether the pH sits in the
band where nearly all known life is found ([6.5, 9.0], bounds inclusive),
the volatile mass fraction lost on heating (water and other liquid
bio-substance), and a coarse classification of the capillary rise rate
(water absorbing capacity).

CLI: ``science analyze --input samples.csv`` reads delimited rows and
emits one JSON report per line.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from enum import Enum

PH_LIFE_BAND = (6.5, 9.0)
CAPILLARY_LOW_MM_PER_MIN = 1.0
CAPILLARY_HIGH_MM_PER_MIN = 5.0
TARGET_SAMPLE_DEPTH_CM = 10.0

# context constants carried into report notes
SURFACE_RADIATION_MSV_PER_DAY = 0.67
GRAVITY_FRACTION_OF_EARTH = 0.375


class ScienceError(ValueError):
    pass


class OutOfScale(ScienceError):
    """pH outside the 0-14 scale."""


class NonPositiveMass(ScienceError):
    pass


class MassGain(ScienceError):
    """Mass increased on heating: a measurement error."""


class CapillaryClass(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SoilSample:
    depth_cm: float
    ph: float
    mass_before_g: float
    mass_after_g: float
    capillary_rise_mm_per_min: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.ph <= 14.0:
            raise OutOfScale(f"pH {self.ph!r} outside [0, 14]")
        if self.mass_before_g <= 0:
            raise NonPositiveMass(f"mass before heating must be positive, got {self.mass_before_g!r}")
        if self.mass_after_g < 0:
            raise NonPositiveMass(f"mass after heating must be >= 0, got {self.mass_after_g!r}")
        if self.mass_after_g > self.mass_before_g:
            raise MassGain(
                f"mass grew on heating ({self.mass_before_g!r} -> {self.mass_after_g!r})"
            )


@dataclass(frozen=True)
class HabitabilityReport:
    ph_in_life_band: bool
    volatile_fraction: float
    capillary_class: CapillaryClass
    notes: str


def ph_habitable(ph: float) -> bool:
    """True iff the pH falls in the life band, bounds inclusive."""
    if not (math.isfinite(ph) and 0.0 <= ph <= 14.0):
        raise OutOfScale(f"pH {ph!r} outside [0, 14]")
    lo, hi = PH_LIFE_BAND
    return lo <= ph <= hi


def biomass_fraction(mass_before_g: float, mass_after_g: float) -> float:
    """Fraction of mass lost on heating: (before - after) / before."""
    if not (math.isfinite(mass_before_g) and mass_before_g > 0):
        raise NonPositiveMass(f"mass before heating must be positive, got {mass_before_g!r}")
    if not math.isfinite(mass_after_g) or mass_after_g < 0:
        raise NonPositiveMass(f"mass after heating must be >= 0, got {mass_after_g!r}")
    if mass_after_g > mass_before_g:
        raise MassGain(f"mass grew on heating ({mass_before_g!r} -> {mass_after_g!r})")
    return (mass_before_g - mass_after_g) / mass_before_g


def classify_capillary(
    rise_mm_per_min: float | None,
    low: float = CAPILLARY_LOW_MM_PER_MIN,
    high: float = CAPILLARY_HIGH_MM_PER_MIN,
) -> CapillaryClass:
    if rise_mm_per_min is None:
        return CapillaryClass.UNKNOWN
    if rise_mm_per_min < low:
        return CapillaryClass.LOW
    if rise_mm_per_min < high:
        return CapillaryClass.MEDIUM
    return CapillaryClass.HIGH


def analyze(sample: SoilSample) -> HabitabilityReport:
    """Combine the three checks into one report."""
    volatile = biomass_fraction(sample.mass_before_g, sample.mass_after_g)
    notes = [
        f"sample depth {sample.depth_cm:g} cm"
        + ("" if sample.depth_cm >= TARGET_SAMPLE_DEPTH_CM else
           f" (shallower than the {TARGET_SAMPLE_DEPTH_CM:g} cm subsurface target)"),
        f"context: surface radiation ~{SURFACE_RADIATION_MSV_PER_DAY} mSv/day,"
        f" gravity ~{GRAVITY_FRACTION_OF_EARTH:.1%} of Earth's",
    ]
    return HabitabilityReport(
        ph_in_life_band=ph_habitable(sample.ph),
        volatile_fraction=volatile,
        capillary_class=classify_capillary(sample.capillary_rise_mm_per_min),
        notes="; ".join(notes),
    )


def report_to_dict(report: HabitabilityReport) -> dict:
    return {
        "phInLifeBand": report.ph_in_life_band,
        "volatileFraction": report.volatile_fraction,
        "capillaryClass": report.capillary_class.value,
        "notes": report.notes,
    }


_COLUMNS = ("depth_cm", "ph", "mass_before_g", "mass_after_g", "capillary_rise_mm_per_min")


def read_samples(fh) -> list[SoilSample]:
    """Read delimited sample rows (CSV with a header)."""
    reader = csv.DictReader(fh)
    missing = [c for c in _COLUMNS[:4] if c not in (reader.fieldnames or ())]
    if missing:
        raise ScienceError(f"input is missing columns {missing}")
    samples = []
    for row in reader:
        rise_raw = (row.get("capillary_rise_mm_per_min") or "").strip()
        samples.append(
            SoilSample(
                depth_cm=float(row["depth_cm"]),
                ph=float(row["ph"]),
                mass_before_g=float(row["mass_before_g"]),
                mass_after_g=float(row["mass_after_g"]),
                capillary_rise_mm_per_min=float(rise_raw) if rise_raw else None,
            )
        )
    return samples


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="science", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    analyze_p = sub.add_parser("analyze", help="analyze sample rows from a delimited file")
    analyze_p.add_argument("--input", required=True, help="CSV of soil sample rows")
    analyze_p.add_argument("--output", default=None, help="write JSON lines here (default stdout)")
    args = parser.parse_args(argv)

    with open(args.input, newline="") as fh:
        samples = read_samples(fh)
    out = open(args.output, "w") if args.output else sys.stdout
    try:
        for sample in samples:
            out.write(json.dumps(report_to_dict(analyze(sample))) + "\n")
    finally:
        if args.output:
            out.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
