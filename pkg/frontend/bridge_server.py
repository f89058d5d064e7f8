"""Local bridge exposing the graphdive core to the browser frontend.

Endpoints mirror the core's documented surfaces one-to-one: the graph
JSON schema in, the packed instance-buffer blob out, the timestamped
input-event contract, and the overlay payloads. No interaction
semantics live here.

Run:  python bridge_server.py [--port 8023]
"""
import argparse

import numpy as np
import uvicorn
from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from graphdive import EngineConfig, GraphFormatError, Session
from graphdive.graph import build_graph
from graphdive.session import (
    ControllerPoseEvent,
    DpadEvent,
    HeadPoseEvent,
    IndicatorClickEvent,
    ModifierEvent,
    TriggerEvent,
)

app = FastAPI(title="graphdive bridge")
app.add_middleware(
    CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
)

session: Session | None = None


def active_session() -> Session:
    if session is None:
        raise HTTPException(status_code=409, detail="no graph loaded")
    return session


@app.post("/graph")
async def load_graph_endpoint(request: Request) -> dict:
    global session
    try:
        graph = build_graph(await request.json())
    except GraphFormatError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    session = Session(graph, EngineConfig())
    return {
        "nodes": graph.node_count,
        "edges": graph.edge_count,
        "frames": graph.frame_count,
    }


def _event_from_json(doc: dict):
    kind = doc.get("kind")
    t = float(doc.get("timestamp", 0.0))
    if kind == "dpad":
        return DpadEvent(x=float(doc["x"]), y=float(doc["y"]), timestamp=t)
    if kind == "trigger":
        return TriggerEvent(timestamp=t)
    if kind == "modifier":
        return ModifierEvent(held=bool(doc["held"]), timestamp=t)
    if kind == "head_pose":
        return HeadPoseEvent(
            position=np.asarray(doc["position"], dtype=np.float64),
            orientation=np.asarray(doc["orientation"], dtype=np.float64),
            timestamp=t,
        )
    if kind == "controller_pose":
        return ControllerPoseEvent(
            position=np.asarray(doc["position"], dtype=np.float64),
            orientation=np.asarray(doc["orientation"], dtype=np.float64),
            timestamp=t,
        )
    if kind == "indicator_click":
        return IndicatorClickEvent(timestamp=t)
    raise HTTPException(status_code=422, detail=f"unknown event kind {kind!r}")


@app.post("/input")
async def input_endpoint(request: Request) -> dict:
    active_session().handle_event(_event_from_json(await request.json()))
    return {"ok": True}


@app.get("/frame")
def frame_endpoint(dt: float = 1.0 / 60.0) -> Response:
    blob = active_session().frame(dt).pack()
    return Response(content=blob, media_type="application/octet-stream")


@app.get("/overlays")
def overlays_endpoint() -> dict:
    return active_session().overlays()


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--port", type=int, default=8023)
    parser.add_argument("--host", default="127.0.0.1")
    args = parser.parse_args()
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
