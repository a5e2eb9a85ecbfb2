import json

from fastapi.testclient import TestClient

from roverlink.basestation.bridge import ConsoleBridge
from roverlink.basestation.web import create_console_app
from roverlink.clock import ManualClock
from roverlink.protocol.messages import EStop
from roverlink.rover.controller import RoverController, SensorReadings


def snapshot(humidity=45.0):
    ctrl = RoverController(clock=ManualClock())
    return ctrl.build_snapshot(SensorReadings(humidity_pct=humidity), 500.0)


def test_status_endpoint():
    bridge = ConsoleBridge()
    client = TestClient(create_console_app(bridge))
    body = client.get("/status").json()
    assert body == {"connected": False, "hasTelemetry": False, "t": None}


def test_fallback_index_served_without_bundle():
    bridge = ConsoleBridge()
    client = TestClient(create_console_app(bridge, ui_dir=None))
    page = client.get("/")
    assert page.status_code == 200
    assert "console" in page.text


def test_live_socket_hello_and_telemetry_push():
    bridge = ConsoleBridge()
    client = TestClient(create_console_app(bridge))
    with client.websocket_connect("/live") as ws:
        hello = json.loads(ws.receive_text())
        assert hello["type"] == "hello"
        assert hello["connected"] is False
        bridge.on_telemetry(snapshot(humidity=45.0))
        event = json.loads(ws.receive_text())
        assert event["type"] == "telemetry"
        assert event["snapshot"]["humidityPct"] == 45.0


def test_live_socket_forwards_commands():
    sent = []

    def send(msg):
        sent.append(msg)
        return msg

    bridge = ConsoleBridge(send_command=send)
    bridge.set_connected(True)
    client = TestClient(create_console_app(bridge))
    with client.websocket_connect("/live") as ws:
        ws.receive_text()  # hello
        ws.send_text(json.dumps({"type": "estop"}))
        event = json.loads(ws.receive_text())
        assert event["type"] == "sent"
        assert event["command"] == "estop"
    assert sent and isinstance(sent[0], EStop)


def test_live_socket_rejects_bad_json():
    bridge = ConsoleBridge(send_command=lambda m: m)
    bridge.set_connected(True)
    client = TestClient(create_console_app(bridge))
    with client.websocket_connect("/live") as ws:
        ws.receive_text()
        ws.send_text("this is not json")
        event = json.loads(ws.receive_text())
        assert event["type"] == "rejected"


def test_static_bundle_served_when_present(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>console bundle</body></html>")
    bridge = ConsoleBridge()
    client = TestClient(create_console_app(bridge, ui_dir=tmp_path))
    assert "console bundle" in client.get("/").text


def test_offline_map_endpoints(tmp_path):
    image = tmp_path / "field.png"
    image.write_bytes(b"\x89PNG\r\n\x1a\nfake")
    bridge = ConsoleBridge()
    app = create_console_app(
        bridge, map_image=image, map_bounds=(23.79, 90.41, 23.77, 90.43)
    )
    client = TestClient(app)
    info = client.get("/map").json()
    assert info["imageUrl"] == "/map-image"
    assert info["bounds"] == {"north": 23.79, "south": 23.77, "east": 90.43, "west": 90.41}
    assert client.get("/map-image").content.startswith(b"\x89PNG")


def test_map_endpoint_empty_without_config():
    client = TestClient(create_console_app(ConsoleBridge()))
    assert client.get("/map").json() == {}
    assert client.get("/map-image").status_code == 404
