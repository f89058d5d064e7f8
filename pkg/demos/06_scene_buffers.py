"""Walkthrough: turning a frame's state into GPU-instancing buffers.

Shows the three instanced batches (node spheres, edge tubes, direction
arrows), the effect of hover lowlighting on colors and opacities, and
the packed little-endian wire format a renderer binds directly.
"""
from pathlib import Path

import numpy as np

from graphdive import EngineConfig, Session, load_graph, unpack
from graphdive.scene import EDGE_STRIDE, NODE_STRIDE
from graphdive.session import ControllerPoseEvent
from graphdive import quaternion as quat

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def main() -> None:
    graph = load_graph(FIXTURE.read_text())
    session = Session(graph, EngineConfig(seed=7))
    buffers = session.frame()
    print(f"batches: {buffers.batch_count} "
          f"(nodes={buffers.node_count}, tubes={buffers.edge_count}, "
          f"arrows={buffers.arrow_count})")
    print(f"node stride {NODE_STRIDE} floats: px py pz radius r g b a")
    print(f"edge stride {EDGE_STRIDE} floats: mid(3) quat(4) length girth rgba(4)")

    # hover the biggest always-present hub: neighborhood turns red, the
    # rest goes dark (nodes absent from the current frame are unpickable)
    candidates = [i for i, n in enumerate(graph.nodes) if n.frames is None]
    hub = graph.nodes[max(candidates, key=lambda i: graph.degrees[i])].id
    target = session.positions[graph.index_of[hub]]
    session.handle_event(ControllerPoseEvent(
        position=target + np.array([0.0, 0.0, 120.0]),
        orientation=quat.identity(),
    ))
    hovered = session.frame()
    alphas = hovered.node_data[:, 7]
    print(f"\nhover on {hub}: {(alphas == 1.0).sum()} nodes at full opacity, "
          f"{(alphas < 0.2).sum()} lowlighted to 0.15")
    print(f"label payload: {session.overlays()['label']}")

    blob = hovered.pack()
    print(f"\npacked frame: {len(blob)} bytes, header {blob[:4]!r}")
    counts = np.frombuffer(blob, dtype='<u4', count=5, offset=4)
    print(f"header counts (version, nodes, edges, arrows, flags): {counts.tolist()}")
    roundtrip = unpack(blob)
    print(f"round-trip intact: "
          f"{np.array_equal(roundtrip.node_data, hovered.node_data)}")


if __name__ == "__main__":
    main()
