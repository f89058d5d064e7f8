"""Record core outputs for the frontend's mocked-boundary tests.

Loads the repository's 199-node fixture through the real engine,
simulates a hover on the biggest hub plus one time-scrub step, and
writes the packed frame blob and overlay payloads the vitest suite
replays.

Run from frontend/:  python scripts/make_fixture.py
"""
import json
from pathlib import Path

import numpy as np

from graphdive import EngineConfig, Session, load_graph
from graphdive import quaternion as quat
from graphdive.session import ControllerPoseEvent, DpadEvent, ModifierEvent

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
GRAPH = ROOT.parent / "data" / "mednet_f4.json"


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    graph = load_graph(GRAPH.read_text())
    session = Session(graph, EngineConfig(seed=7))

    # plain overview frame
    (FIXTURES / "frame_plain.bin").write_bytes(session.frame().pack())
    (FIXTURES / "overlays_plain.json").write_text(json.dumps(session.overlays()))

    # hover the biggest always-present hub: centered label + red
    # neighborhood in the buffers (frame-absent nodes are unpickable)
    candidates = [i for i, n in enumerate(graph.nodes) if n.frames is None]
    hub = graph.nodes[max(candidates, key=lambda i: graph.degrees[i])].id
    target = session.positions[graph.index_of[hub]]
    session.handle_event(ControllerPoseEvent(
        position=target + np.array([0.0, 0.0, 150.0]), orientation=quat.identity(),
    ))
    (FIXTURES / "frame_hover.bin").write_bytes(session.frame().pack())
    (FIXTURES / "overlays_hover.json").write_text(json.dumps(session.overlays()))

    # modifier + axis: one scrub step mid-transition
    session.handle_event(ModifierEvent(held=True))
    session.handle_event(DpadEvent(x=1.0, y=0.0))
    session.frame(dt=0.25)
    (FIXTURES / "frame_scrub.bin").write_bytes(session.frame(dt=0.0).pack())
    (FIXTURES / "overlays_scrub.json").write_text(json.dumps(session.overlays()))

    meta = {
        "nodes": graph.node_count,
        "edges": graph.edge_count,
        "frames": graph.frame_count,
        "hub": hub,
    }
    (FIXTURES / "meta.json").write_text(json.dumps(meta))
    print(f"wrote fixtures for {meta}")


if __name__ == "__main__":
    main()
