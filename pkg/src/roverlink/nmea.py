"""NMEA 0183 sentence handling for the GPS stream.

The receiver emits many sentence kinds; only GGA and RMC carry the position
data this stack consumes, so only those decode to a fix. Everything else
parses as an opaque sentence and can be passed through untouched.

Checksum rule (bit-exact): XOR of every byte between ``$`` and ``*``,
rendered as two uppercase hex digits. Input lines are tolerated with or
without a trailing CR/LF; emitted lines always end in CRLF.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from enum import Enum
from functools import reduce

from .geodesy import GeoPoint


class NmeaError(ValueError):
    pass


class MalformedSentence(NmeaError):
    """Input is not a structurally valid NMEA sentence."""


class BadChecksum(NmeaError):
    """Sentence structure is fine but the checksum does not match."""


class NotPositional(NmeaError):
    """Sentence kind carries no position (not GGA/RMC)."""


POSITIONAL_KINDS = ("GGA", "RMC")

# minutes are encoded with 4 decimal places: 1e-4 arcmin is roughly 0.19 m
# of latitude, well under the GPS error budget
_MINUTE_DECIMALS = 4


class FixQuality(Enum):
    NO_FIX = "noFix"
    FIX = "fix"
    DGPS = "dgps"


def checksum_of(body: str) -> int:
    """XOR of all character values between '$' and '*'."""
    return reduce(operator.xor, body.encode("ascii"), 0)


@dataclass(frozen=True)
class NmeaSentence:
    """One validated sentence: ``$<talker><kind>,<fields>*<checksum>``."""

    talker: str
    kind: str
    fields: tuple[str, ...]
    checksum: int

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(self.fields))
        expected = checksum_of(self.body)
        if self.checksum != expected:
            raise ValueError(
                f"checksum 0x{self.checksum:02X} does not match body (0x{expected:02X})"
            )

    @classmethod
    def build(cls, talker: str, kind: str, fields: tuple[str, ...]) -> "NmeaSentence":
        body = ",".join((talker + kind,) + tuple(fields))
        return cls(talker, kind, tuple(fields), checksum_of(body))

    @property
    def body(self) -> str:
        return ",".join((self.talker + self.kind,) + self.fields)

    @property
    def text(self) -> str:
        return f"${self.body}*{self.checksum:02X}\r\n"

    def raw(self) -> bytes:
        return self.text.encode("ascii")


def parse_sentence(line: bytes | str) -> NmeaSentence:
    """Parse and checksum-verify one sentence.

    Accepts arbitrary bytes; anything that is not a structurally valid
    sentence raises MalformedSentence, a checksum mismatch raises
    BadChecksum. Unknown sentence kinds are not an error.
    """
    if isinstance(line, (bytes, bytearray, memoryview)):
        try:
            text = bytes(line).decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedSentence(f"non-ASCII input: {exc}") from None
    else:
        text = str(line)

    text = text.rstrip("\r\n")
    if not text.startswith("$"):
        raise MalformedSentence("sentence does not start with '$'")
    star = text.rfind("*")
    if star < 0:
        raise MalformedSentence("sentence has no '*' checksum delimiter")
    body, tail = text[1:star], text[star + 1 :]
    if len(tail) != 2:
        raise MalformedSentence(f"checksum field must be two hex digits, got {tail!r}")
    try:
        declared = int(tail, 16)
    except ValueError:
        raise MalformedSentence(f"checksum field must be two hex digits, got {tail!r}") from None
    if "$" in body:
        raise MalformedSentence("embedded '$' in sentence body")

    parts = body.split(",")
    address = parts[0]
    if len(address) < 3 or not address.isalnum():
        raise MalformedSentence(f"bad address field {address!r}")

    actual = checksum_of(body)
    if actual != declared:
        raise BadChecksum(f"declared 0x{declared:02X}, computed 0x{actual:02X}")

    return NmeaSentence(address[:2], address[2:], tuple(parts[1:]), declared)


@dataclass(frozen=True)
class GpsFix:
    """One decoded position fix.

    ``point`` is None whenever ``quality`` is NO_FIX: a no-fix sentence may
    still carry stale coordinates, and they must not be trusted.
    """

    point: GeoPoint | None
    utc_time: float | None  # seconds of day
    quality: FixQuality
    satellites: int = 0
    hdop: float | None = None
    altitude_m: float | None = None

    def __post_init__(self):
        if self.quality is FixQuality.NO_FIX and self.point is not None:
            object.__setattr__(self, "point", None)
        if self.quality is not FixQuality.NO_FIX and self.point is None:
            raise ValueError("a usable fix needs a position")
        if self.satellites < 0:
            raise ValueError(f"satellite count must be >= 0, got {self.satellites!r}")

    @classmethod
    def no_fix(cls, utc_time: float | None = None) -> "GpsFix":
        return cls(None, utc_time, FixQuality.NO_FIX)


def _parse_utc(field: str) -> float | None:
    if not field:
        return None
    try:
        raw = float(field)
    except ValueError:
        raise MalformedSentence(f"bad UTC time field {field!r}") from None
    hours = int(raw // 10000)
    minutes = int((raw % 10000) // 100)
    seconds = raw % 100.0
    return hours * 3600.0 + minutes * 60.0 + seconds


def _parse_coord(value: str, hemi: str, deg_digits: int) -> float:
    if len(value) <= deg_digits:
        raise MalformedSentence(f"coordinate field {value!r} too short")
    try:
        degrees = int(value[:deg_digits])
        minutes = float(value[deg_digits:])
    except ValueError:
        raise MalformedSentence(f"bad coordinate field {value!r}") from None
    if minutes >= 60.0:
        raise MalformedSentence(f"minutes {minutes!r} out of range in {value!r}")
    magnitude = degrees + minutes / 60.0
    if hemi in ("N", "E"):
        return magnitude
    if hemi in ("S", "W"):
        return -magnitude
    raise MalformedSentence(f"bad hemisphere letter {hemi!r}")


def _parse_point(lat_f: str, ns: str, lon_f: str, ew: str) -> GeoPoint | None:
    if not lat_f or not lon_f:
        return None
    lat = _parse_coord(lat_f, ns, 2)
    lon = _parse_coord(lon_f, ew, 3)
    try:
        return GeoPoint(lat, lon)
    except ValueError as exc:
        raise MalformedSentence(str(exc)) from None


def _float_or_none(field: str) -> float | None:
    if not field:
        return None
    try:
        return float(field)
    except ValueError:
        raise MalformedSentence(f"bad numeric field {field!r}") from None


def to_fix(sentence: NmeaSentence) -> GpsFix:
    """Decode a GGA or RMC sentence into a GpsFix.

    A quality field of 0 (GGA) or a void status (RMC) yields a NO_FIX fix
    rather than an error; so does an empty coordinate pair.
    """
    if sentence.kind not in POSITIONAL_KINDS:
        raise NotPositional(f"{sentence.kind} carries no position")
    f = sentence.fields

    if sentence.kind == "GGA":
        if len(f) < 8:
            raise MalformedSentence(f"GGA needs at least 8 fields, got {len(f)}")
        utc = _parse_utc(f[0])
        point = _parse_point(f[1], f[2], f[3], f[4])
        try:
            quality_raw = int(f[5]) if f[5] else 0
            satellites = int(f[6]) if f[6] else 0
        except ValueError:
            raise MalformedSentence(f"bad quality/satellite fields {f[5]!r}, {f[6]!r}") from None
        if satellites < 0:
            raise MalformedSentence(f"negative satellite count {satellites}")
        hdop = _float_or_none(f[7])
        altitude = _float_or_none(f[8]) if len(f) > 8 else None
        if quality_raw == 0 or point is None:
            return GpsFix(None, utc, FixQuality.NO_FIX, satellites, hdop, altitude)
        quality = FixQuality.DGPS if quality_raw == 2 else FixQuality.FIX
        return GpsFix(point, utc, quality, satellites, hdop, altitude)

    # RMC: time, status, lat, N/S, lon, E/W, speed, course, date, ...
    if len(f) < 6:
        raise MalformedSentence(f"RMC needs at least 6 fields, got {len(f)}")
    utc = _parse_utc(f[0])
    point = _parse_point(f[2], f[3], f[4], f[5])
    if f[1] != "A" or point is None:
        return GpsFix(None, utc, FixQuality.NO_FIX)
    return GpsFix(point, utc, FixQuality.FIX)


def _format_coord(value: float, deg_digits: int, positive: str, negative: str) -> tuple[str, str]:
    hemi = negative if math.copysign(1.0, value) < 0 else positive
    magnitude = abs(value)
    degrees = int(magnitude)
    minutes = (magnitude - degrees) * 60.0
    minutes = round(minutes, _MINUTE_DECIMALS)
    if minutes >= 60.0:  # rounding carried the minutes over
        minutes = 0.0
        degrees += 1
    return f"{degrees:0{deg_digits}d}{minutes:07.{_MINUTE_DECIMALS}f}", hemi


def _format_utc(utc_time: float | None) -> str:
    if utc_time is None:
        return ""
    total = utc_time % 86400.0
    hours = int(total // 3600)
    minutes = int((total % 3600) // 60)
    seconds = total % 60.0
    return f"{hours:02d}{minutes:02d}{seconds:05.2f}"


def encode_fix(fix: GpsFix, talker: str = "GP") -> NmeaSentence:
    """Encode a fix as a GGA sentence with a correct checksum."""
    utc = _format_utc(fix.utc_time)
    quality_digit = {FixQuality.NO_FIX: "0", FixQuality.FIX: "1", FixQuality.DGPS: "2"}[fix.quality]
    if fix.point is None:
        lat_f = ns = lon_f = ew = ""
    else:
        lat_f, ns = _format_coord(fix.point.lat, 2, "N", "S")
        lon_f, ew = _format_coord(fix.point.lon, 3, "E", "W")
    hdop_f = "" if fix.hdop is None else f"{fix.hdop:.1f}"
    alt_f = "" if fix.altitude_m is None else f"{fix.altitude_m:.1f}"
    fields = (
        utc,
        lat_f,
        ns,
        lon_f,
        ew,
        quality_digit,
        f"{fix.satellites:02d}",
        hdop_f,
        alt_f,
        "M",
        "",
        "M",
        "",
        "",
    )
    return NmeaSentence.build(talker, "GGA", fields)
