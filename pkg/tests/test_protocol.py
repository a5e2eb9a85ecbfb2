import json
import random
import struct

import pytest
from hypothesis import given, settings, strategies as st

from roverlink.geodesy import GeoPoint
from roverlink.protocol import (
    Ack,
    ArmJoint,
    ArmJointName,
    CorruptPayload,
    Drive,
    EStop,
    LinkBudget,
    LinkQuality,
    MAX_PAYLOAD_BYTES,
    OversizedLength,
    OversizedPayload,
    SetWaypoints,
    StreamDecoder,
    Telemetry,
    TruncatedFrame,
    decode_frame,
    encode_frame,
    link_quality,
    message_from_dict,
    message_to_dict,
)
from roverlink.protocol.wire import to_camel, to_snake, to_wire
from roverlink.telemetry import snapshot_to_wire

from conftest import geopoints, message_strategy, snapshot_strategy


# ------------------------------------------------------------------- codec


def test_camel_snake_conversion():
    assert to_camel("steer_deg") == "steerDeg"
    assert to_camel("co2_ppm") == "co2Ppm"
    assert to_camel("lat") == "lat"
    assert to_snake("steerDeg") == "steer_deg"
    assert to_snake("co2Ppm") == "co2_ppm"


def test_wire_keys_are_lower_camel_case():
    d = message_to_dict(Drive(throttle=0.25, steer_deg=-3.5, seq=7))
    assert d == {"type": "drive", "throttle": 0.25, "steerDeg": -3.5, "seq": 7}


@given(message_strategy())
def test_decode_encode_identity(msg):
    decoded, rest = decode_frame(encode_frame(msg))
    assert decoded == msg
    assert rest == b""


@given(snapshot_strategy())
def test_snapshot_fast_wire_matches_generic_codec(snap):
    assert snapshot_to_wire(snap) == to_wire(snap)


def test_message_validation():
    with pytest.raises(ValueError):
        Drive(throttle=1.5, steer_deg=0.0)
    with pytest.raises(ValueError):
        Drive(throttle=float("nan"), steer_deg=0.0)
    with pytest.raises(ValueError):
        ArmJoint(joint=ArmJointName.BASE, rate=-2.0)


def test_estop_round_trip():
    msg, rest = decode_frame(encode_frame(EStop(seq=12)))
    assert msg == EStop(seq=12)


def test_zero_drive_round_trip():
    msg, _ = decode_frame(encode_frame(Drive(throttle=0.0, steer_deg=0.0, seq=1)))
    assert msg == Drive(throttle=0.0, steer_deg=0.0, seq=1)


@given(st.lists(geopoints, min_size=1, max_size=12))
def test_waypoint_list_fidelity(points):
    msg = SetWaypoints(points=tuple(points), seq=2)
    decoded, _ = decode_frame(encode_frame(msg))
    for sent, got in zip(msg.points, decoded.points):
        assert got.lat == pytest.approx(sent.lat, abs=1e-7)
        assert got.lon == pytest.approx(sent.lon, abs=1e-7)


# ----------------------------------------------------------------- framing


def test_truncated_frame_not_fatal():
    frame = encode_frame(EStop(seq=1))
    for cut in (0, 1, 3, len(frame) - 1):
        with pytest.raises(TruncatedFrame):
            decode_frame(frame[:cut])


def test_trailing_bytes_reported():
    frame = encode_frame(EStop(seq=1))
    msg, rest = decode_frame(frame + b"garbage")
    assert msg == EStop(seq=1)
    assert rest == b"garbage"


def test_oversized_length_rejected():
    header = struct.pack(">I", 2**31)
    with pytest.raises(OversizedLength):
        decode_frame(header + b"x" * 10)


def test_oversized_payload_rejected():
    points = tuple(GeoPoint(1e-4 * i, 1e-4 * i) for i in range(3000))
    with pytest.raises(OversizedPayload):
        encode_frame(SetWaypoints(points=points, seq=1))


def test_corrupt_payload_rejected():
    bad = json.dumps({"type": "drive", "throttle": "zoom"}).encode()
    with pytest.raises(CorruptPayload):
        decode_frame(struct.pack(">I", len(bad)) + bad)
    unknown = json.dumps({"type": "warp"}).encode()
    with pytest.raises(CorruptPayload):
        decode_frame(struct.pack(">I", len(unknown)) + unknown)
    nan = b'{"type":"drive","throttle":NaN,"steerDeg":0,"seq":1}'
    with pytest.raises(CorruptPayload):
        decode_frame(struct.pack(">I", len(nan)) + nan)


def test_unknown_wire_keys_rejected():
    with pytest.raises(ValueError):
        message_from_dict({"type": "estop", "seq": 1, "warp": 9})


@settings(max_examples=30)
@given(st.lists(message_strategy(), min_size=1, max_size=30), st.randoms())
def test_stream_reassembly_any_chunking(msgs, rng):
    stream = b"".join(encode_frame(msg) for msg in msgs)
    decoder = StreamDecoder()
    out = []
    i = 0
    while i < len(stream):
        step = rng.randint(1, 17)
        out.extend(decoder.feed(stream[i : i + step]))
        i += step
    assert out == msgs
    assert decoder.pending_bytes == 0


# -------------------------------------------------------------------- link


def test_link_quality_range_bands():
    budget = LinkBudget()
    assert link_quality(500.0, budget) is LinkQuality.FULL
    assert link_quality(1000.0, budget) is LinkQuality.DEGRADED
    assert link_quality(1200.0, budget) is LinkQuality.DEAD


def test_link_quality_boundaries():
    budget = LinkBudget()
    assert link_quality(899.999, budget) is LinkQuality.FULL
    assert link_quality(900.0, budget) is LinkQuality.DEGRADED
    assert link_quality(1050.0, budget) is LinkQuality.DEGRADED
    assert link_quality(1050.001, budget) is LinkQuality.DEAD


@given(st.floats(min_value=0, max_value=5000, allow_nan=False), st.floats(min_value=0, max_value=5000, allow_nan=False))
def test_link_quality_monotone(d1, d2):
    rank = {LinkQuality.FULL: 0, LinkQuality.DEGRADED: 1, LinkQuality.DEAD: 2}
    lo, hi = sorted((d1, d2))
    assert rank[link_quality(lo)] <= rank[link_quality(hi)]


def test_link_budget_validation():
    with pytest.raises(ValueError):
        LinkBudget(full_strength_range_m=1100.0, dropout_range_m=1050.0)
    with pytest.raises(ValueError):
        LinkBudget(degraded_loss_rate=1.5)
