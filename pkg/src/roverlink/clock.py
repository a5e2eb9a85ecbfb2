"""Injectable clocks.

Every timed component (sessions, controller, simulator glue) takes a clock
object with a ``now_ms()`` method instead of reading wall time, so all timing
behaviour can be driven tick-by-tick in tests.
"""

import time


class ManualClock:
    """Clock advanced explicitly by the caller. The default in tests."""

    def __init__(self, start_ms: float = 0.0):
        self._now_ms = float(start_ms)

    def now_ms(self) -> float:
        return self._now_ms

    def advance(self, dt_ms: float) -> float:
        if dt_ms < 0:
            raise ValueError("clock cannot run backwards")
        self._now_ms += dt_ms
        return self._now_ms


class SystemClock:
    """Monotonic wall clock, used by the live CLI entry points."""

    def now_ms(self) -> float:
        return time.monotonic() * 1000.0
