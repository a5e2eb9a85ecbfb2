"""roverlink: ground-control and onboard control stack for a small rover.

Subpackages:
    geodesy      spherical navigation math (distance, bearing, projection)
    nmea         GPS sentence parsing and encoding
    protocol     wire protocol, framing, control session, link model
    rover        onboard controller: safety, autonomy, sensors, power
    sim          deterministic rover + field simulator
    science      soil habitability arithmetic
    basestation  operator-side service, map, mission log, web console bridge
"""

__version__ = "0.1.0"
