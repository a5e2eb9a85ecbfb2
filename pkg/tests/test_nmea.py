import random
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from roverlink.geodesy import GeoPoint
from roverlink.nmea import (
    BadChecksum,
    FixQuality,
    GpsFix,
    MalformedSentence,
    NmeaError,
    NmeaSentence,
    NotPositional,
    checksum_of,
    encode_fix,
    parse_sentence,
    to_fix,
)

from conftest import fix_strategy

CLASSIC = b"$GPGGA,123519,4807.038,N,01131.000,E,1,08,0.9,545.4,M,46.9,M,,*47"


def xor_oracle(payload: bytes) -> int:
    """Independent re-statement of the checksum rule."""
    out = 0
    for byte in payload:
        out = out ^ byte
    return out


# ------------------------------------------------------------------ parsing


def test_parse_classic_sentence():
    s = parse_sentence(CLASSIC)
    assert (s.talker, s.kind) == ("GP", "GGA")
    assert s.fields[0] == "123519"
    assert s.checksum == xor_oracle(CLASSIC[1 : CLASSIC.rfind(b"*")])


def test_parse_rejects_bad_checksum():
    corrupted = CLASSIC[:-2] + b"00"
    with pytest.raises(BadChecksum):
        parse_sentence(corrupted)


@pytest.mark.parametrize(
    "line",
    [
        b"",
        b"GPGGA,1,2*33",
        b"$GPGGA,no-star-here",
        b"$GPGGA,fields*7",
        b"$GPGGA,fields*zz",
        b"$\xff\xfe*00",
        b"$GP,too-short-address*6A",
    ],
)
def test_parse_rejects_malformed(line):
    with pytest.raises(MalformedSentence):
        parse_sentence(line)


def test_parse_accepts_crlf_and_bare_lines():
    assert parse_sentence(CLASSIC) == parse_sentence(CLASSIC + b"\r\n")
    assert parse_sentence(CLASSIC) == parse_sentence(CLASSIC + b"\n")


def test_unknown_kind_is_carried_not_rejected():
    body = "GPVTG,054.7,T,034.4,M,005.5,N,010.2,K"
    raw = f"${body}*{checksum_of(body):02X}".encode()
    s = parse_sentence(raw)
    assert s.kind == "VTG"
    with pytest.raises(NotPositional):
        to_fix(s)


def test_single_byte_corruption_never_passes():
    raw = bytearray(CLASSIC)
    star = raw.rfind(b"*")
    for i in range(1, star):  # every payload byte between '$' and '*'
        for flip in (0x01, 0x55):
            corrupted = bytearray(raw)
            corrupted[i] ^= flip
            with pytest.raises(NmeaError):
                parse_sentence(bytes(corrupted))


def test_parse_never_crashes_on_random_bytes():
    rng = random.Random(7)
    for _ in range(5000):
        blob = rng.randbytes(rng.randrange(0, 90))
        try:
            parse_sentence(blob)
        except NmeaError:
            pass


@given(st.binary(max_size=120))
def test_parse_never_crashes_fuzz(blob):
    try:
        parse_sentence(blob)
    except NmeaError:
        pass


# ------------------------------------------------------------------- to_fix


def test_to_fix_classic_values():
    fix = to_fix(parse_sentence(CLASSIC))
    assert fix.quality is FixQuality.FIX
    # hand conversion: 48 deg + 7.038 / 60, 11 deg + 31.000 / 60
    assert fix.point.lat == pytest.approx(48.1173, abs=1e-6)
    assert fix.point.lon == pytest.approx(11.5166667, abs=1e-6)
    assert fix.satellites == 8
    assert fix.hdop == pytest.approx(0.9)
    assert fix.altitude_m == pytest.approx(545.4)
    assert fix.utc_time == pytest.approx(12 * 3600 + 35 * 60 + 19.0)


def test_to_fix_no_fix_sentinel():
    body = "GPGGA,123519,4807.038,N,01131.000,E,0,00,,,M,,M,,"
    raw = f"${body}*{checksum_of(body):02X}".encode()
    fix = to_fix(parse_sentence(raw))
    assert fix.quality is FixQuality.NO_FIX
    assert fix.point is None


def test_to_fix_southern_western_hemispheres():
    body = "GPGGA,000000,3342.0000,S,07036.0000,W,1,05,1.1,520.0,M,,M,,"
    raw = f"${body}*{checksum_of(body):02X}".encode()
    fix = to_fix(parse_sentence(raw))
    assert fix.point.lat == pytest.approx(-(33 + 42.0 / 60))
    assert fix.point.lon == pytest.approx(-(70 + 36.0 / 60))


def test_to_fix_rmc():
    body = "GPRMC,123519,A,4807.038,N,01131.000,E,022.4,084.4,230394,003.1,W"
    raw = f"${body}*{checksum_of(body):02X}".encode()
    fix = to_fix(parse_sentence(raw))
    assert fix.quality is FixQuality.FIX
    assert fix.point.lat == pytest.approx(48.1173, abs=1e-6)


def test_to_fix_rmc_void_status():
    body = "GPRMC,123519,V,4807.038,N,01131.000,E,,,230394,,"
    raw = f"${body}*{checksum_of(body):02X}".encode()
    assert to_fix(parse_sentence(raw)).quality is FixQuality.NO_FIX


# --------------------------------------------------------------- encode_fix


def test_encode_origin_fields():
    s = encode_fix(GpsFix(GeoPoint(0.0, 0.0), 0.0, FixQuality.FIX, 4))
    assert s.fields[1:5] == ("0000.0000", "N", "00000.0000", "E")
    assert parse_sentence(s.raw()) == s


def test_encode_classic_inverse():
    s = encode_fix(GpsFix(GeoPoint(48.1173, 11.516667), None, FixQuality.FIX, 8, 0.9, 545.4))
    assert s.fields[1].startswith("4807.038") and s.fields[2] == "N"
    assert s.fields[3].startswith("01131.000") and s.fields[4] == "E"


def test_encode_no_fix():
    s = encode_fix(GpsFix.no_fix(60.0))
    fix = to_fix(parse_sentence(s.raw()))
    assert fix.quality is FixQuality.NO_FIX


def test_encode_minute_rounding_carry():
    # 47 deg 59.99999' rounds up to 60': must carry into the degrees
    fix = GpsFix(GeoPoint(47.9999999, 0.0), None, FixQuality.FIX, 5)
    s = encode_fix(fix)
    assert s.fields[1] == "4800.0000"
    assert to_fix(parse_sentence(s.raw())).point.lat == pytest.approx(48.0, abs=1e-6)


@given(fix_strategy())
def test_encode_parse_round_trip(fix):
    sentence = encode_fix(fix)
    back = to_fix(parse_sentence(sentence.raw()))
    assert back.quality is fix.quality
    if fix.point is not None:
        assert back.point.lat == pytest.approx(fix.point.lat, abs=1e-6)
        assert back.point.lon == pytest.approx(fix.point.lon, abs=1e-6)
    # encode -> parse -> encode is a fixed point (minutes already quantized)
    assert encode_fix(back).raw() == sentence.raw()


def test_sentence_checksum_invariant_enforced():
    with pytest.raises(ValueError):
        NmeaSentence("GP", "GGA", ("1", "2"), 0x00)
