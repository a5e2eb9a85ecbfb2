"""Append-only mission log.

Every command, ack, telemetry snapshot and session event lands here with a
strictly increasing timestamp. Records are newline-delimited JSON when
backed by a file, which makes replay tooling trivial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..geodesy import GeoPoint


class EmptyLogError(ValueError):
    """The log holds no position fixes to export."""


@dataclass(frozen=True)
class LogRecord:
    t_ms: float
    kind: str  # command | ack | telemetry | event
    data: dict

    def to_json(self) -> str:
        return json.dumps({"tMs": self.t_ms, "kind": self.kind, "data": self.data},
                          separators=(",", ":"))


# timestamps must be strictly increasing; same-millisecond appends get
# nudged by this much
_TIE_BUMP_MS = 1e-3


class MissionLog:
    def __init__(self, clock=None, path: str | Path | None = None):
        self._clock = clock
        self._records: list[LogRecord] = []
        self._fh = open(path, "a") if path is not None else None

    def append(self, kind: str, data: dict, t_ms: float | None = None) -> LogRecord:
        if t_ms is None:
            if self._clock is None:
                raise ValueError("no clock: pass t_ms explicitly")
            t_ms = self._clock.now_ms()
        if self._records and t_ms <= self._records[-1].t_ms:
            t_ms = self._records[-1].t_ms + _TIE_BUMP_MS
        record = LogRecord(float(t_ms), kind, data)
        self._records.append(record)
        if self._fh is not None:
            self._fh.write(record.to_json() + "\n")
            self._fh.flush()
        return record

    @property
    def records(self) -> tuple[LogRecord, ...]:
        return tuple(self._records)

    def tail(self, n: int) -> list[LogRecord]:
        return self._records[-n:]

    def __len__(self) -> int:
        return len(self._records)

    def fixes(self) -> list[tuple[float, GeoPoint]]:
        """(t_ms, position) pairs from every telemetry record with a fix."""
        out = []
        for record in self._records:
            if record.kind != "telemetry":
                continue
            fix = (record.data.get("fix") or {}).get("point")
            if fix is None:
                continue
            out.append((record.t_ms, GeoPoint(fix["lat"], fix["lon"])))
        return out

    def waypoints(self) -> list[GeoPoint]:
        """Waypoints from the most recent dispatch command, if any."""
        for record in reversed(self._records):
            if record.kind == "command" and record.data.get("type") == "setWaypoints":
                return [GeoPoint(p["lat"], p["lon"]) for p in record.data.get("points", [])]
        return []

    def close(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    @classmethod
    def from_jsonl(cls, path: str | Path) -> "MissionLog":
        log = cls()
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                obj = json.loads(line)
                log._records.append(LogRecord(obj["tMs"], obj["kind"], obj["data"]))
        return log
