"""Regenerate data/mednet_f4.json, the 199-node / 593-edge test fixture.

The fixture is a seeded random surrogate sized like a small co-morbidity
network: 12 groups, skewed node values, weighted edges, 10 time frames
with a fifth of the elements present only in a contiguous frame window,
and a sprinkling of directed edges.

Run from the repository root:  python demos/make_fixture.py
"""
import json
from pathlib import Path

import numpy as np

from graphdive.bench import generate_er
from graphdive.graph import build_graph, load_graph, serialize

N_NODES = 199
N_EDGES = 593
FRAME_COUNT = 10
SEED = 20199


def main() -> None:
    rng = np.random.default_rng(SEED)
    base = generate_er(N_NODES, N_EDGES, SEED)

    nodes = []
    for i, n in enumerate(base.nodes):
        rec = {
            "id": f"D{i:03d}",
            "label": f"disease-{i:03d}",
            "group": int(rng.integers(0, 12)),
            "value": round(float(rng.lognormal(0.0, 0.7)), 4),
        }
        if rng.random() < 0.2:
            start = int(rng.integers(0, FRAME_COUNT - 1))
            stop = int(rng.integers(start + 1, FRAME_COUNT + 1))
            rec["frames"] = list(range(start, stop))
        nodes.append(rec)

    links = []
    for e in base.edges:
        si = base.index_of[e.source]
        ti = base.index_of[e.target]
        rec = {
            "source": f"D{si:03d}",
            "target": f"D{ti:03d}",
            "weight": round(float(rng.uniform(0.05, 1.0)), 4),
            "directed": bool(rng.random() < 0.3),
        }
        if rng.random() < 0.2:
            start = int(rng.integers(0, FRAME_COUNT - 1))
            stop = int(rng.integers(start + 1, FRAME_COUNT + 1))
            rec["frames"] = list(range(start, stop))
        links.append(rec)

    doc = {"directed": False, "frame_count": FRAME_COUNT, "nodes": nodes, "links": links}
    graph = build_graph(doc)
    assert graph.node_count == N_NODES and graph.edge_count == N_EDGES

    out = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(serialize(graph))
    reloaded = load_graph(out.read_text())
    print(f"wrote {out} ({reloaded.node_count} nodes, {reloaded.edge_count} edges, "
          f"{reloaded.frame_count} frames)")


if __name__ == "__main__":
    main()
