"""Web console endpoint: static UI bundle plus the `/live` event socket.

The socket speaks JSON both ways: the bridge pushes telemetry/status/ack
events, the console sends command events. The UI is served from a built
bundle directory when one exists; otherwise a bare status page explains
how to build it.
"""

from __future__ import annotations

import asyncio
import json
import queue
from pathlib import Path

from fastapi import FastAPI, WebSocket
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from .bridge import ConsoleBridge

CONSOLE_PORT = 8080

_FALLBACK_PAGE = """<!doctype html>
<html><head><title>rover console</title></head>
<body style="font-family: monospace; background:#10141a; color:#d7dde4">
<h2>rover console</h2>
<p>No UI bundle found. Build the frontend (<code>cd frontend &amp;&amp; npm run build</code>)
and restart, or talk to the event socket at <code>/live</code> directly.</p>
</body></html>
"""


def create_console_app(
    bridge: ConsoleBridge,
    ui_dir: str | Path | None = None,
    map_image: str | Path | None = None,
    map_bounds: tuple[float, float, float, float] | None = None,
) -> FastAPI:
    app = FastAPI(title="rover console bridge")

    @app.get("/status")
    def status() -> JSONResponse:
        snapshot = bridge.latest
        return JSONResponse(
            {
                "connected": bridge.connected,
                "hasTelemetry": snapshot is not None,
                "t": snapshot.t if snapshot is not None else None,
            }
        )

    map_path = Path(map_image) if map_image is not None else None

    @app.get("/map")
    def map_info() -> JSONResponse:
        # the offline map is a user-supplied image + bounds pair
        if map_path is None or map_bounds is None or not map_path.exists():
            return JSONResponse({})
        lat1, lon1, lat2, lon2 = map_bounds
        return JSONResponse(
            {
                "imageUrl": "/map-image",
                "bounds": {
                    "north": max(lat1, lat2),
                    "south": min(lat1, lat2),
                    "east": max(lon1, lon2),
                    "west": min(lon1, lon2),
                },
            }
        )

    @app.get("/map-image")
    def map_image_file():
        from fastapi.responses import FileResponse

        if map_path is None or not map_path.exists():
            return JSONResponse({"error": "no map image configured"}, status_code=404)
        return FileResponse(str(map_path))

    @app.websocket("/live")
    async def live(ws: WebSocket) -> None:
        await ws.accept()
        q = bridge.subscribe()
        loop = asyncio.get_event_loop()
        stop = False

        def next_event():
            # short timeout so the sender notices disconnects quickly
            while not stop:
                try:
                    return q.get(timeout=0.2)
                except queue.Empty:
                    continue
            return None

        async def sender():
            while True:
                event = await loop.run_in_executor(None, next_event)
                if event is None:
                    return
                await ws.send_text(json.dumps(event))

        async def receiver():
            while True:
                raw = await ws.receive_text()
                try:
                    event = json.loads(raw)
                except json.JSONDecodeError:
                    event = {"type": None}
                bridge.handle_console_command(event)

        send_task = asyncio.ensure_future(sender())
        recv_task = asyncio.ensure_future(receiver())
        try:
            done, pending = await asyncio.wait(
                {send_task, recv_task}, return_when=asyncio.FIRST_EXCEPTION
            )
        finally:
            stop = True
            for task in (send_task, recv_task):
                if not task.done():
                    task.cancel()
            bridge.unsubscribe(q)

    ui_path = Path(ui_dir) if ui_dir is not None else None
    if ui_path is not None and (ui_path / "index.html").exists():
        app.mount("/", StaticFiles(directory=str(ui_path), html=True), name="ui")
    else:

        @app.get("/")
        def index() -> HTMLResponse:
            return HTMLResponse(_FALLBACK_PAGE)

    return app


def serve_console(
    bridge: ConsoleBridge,
    port: int = CONSOLE_PORT,
    ui_dir=None,
    host="127.0.0.1",
    map_image=None,
    map_bounds=None,
):
    """Blocking uvicorn server; used by the CLI in a background thread."""
    import uvicorn

    app = create_console_app(bridge, ui_dir, map_image=map_image, map_bounds=map_bounds)
    config = uvicorn.Config(app, host=host, port=port, log_level="warning")
    server = uvicorn.Server(config)
    server.run()
    return server
