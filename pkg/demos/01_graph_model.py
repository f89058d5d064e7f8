"""Walkthrough: loading a dynamic graph and querying its structure.

Loads the bundled 199-node co-morbidity-sized fixture, inspects
neighborhoods, per-frame presence, and the attribute-to-visual
mappings.
"""
from pathlib import Path

import numpy as np

from graphdive import (
    edge_girths,
    frame_presence,
    load_graph,
    neighborhood,
    node_radii,
    out_edges,
)

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def main() -> None:
    graph = load_graph(FIXTURE.read_text())
    print(f"{graph.node_count} nodes, {graph.edge_count} edges, "
          f"{graph.frame_count} time frames")

    # Hubs: the highest-degree nodes are the natural exploration anchors.
    order = np.argsort(graph.degrees)[::-1]
    print("\ntop hubs by degree:")
    for i in order[:5]:
        n = graph.nodes[int(i)]
        print(f"  {n.id} ({n.label}): degree {graph.degrees[i]}, group {n.group}")

    hub = graph.nodes[int(order[0])].id
    nbr_nodes, nbr_edges = neighborhood(graph, hub)
    print(f"\nhovering {hub} would highlight {len(nbr_nodes)} neighbors "
          f"and {len(nbr_edges)} incident edges "
          f"({len(out_edges(graph, hub))} outgoing)")

    print("\nelements present per frame:")
    for f in range(graph.frame_count):
        nodes, edges = frame_presence(graph, f)
        print(f"  frame {f}: {len(nodes):3d} nodes, {len(edges):3d} edges")

    radii = node_radii(graph)
    girths = edge_girths(graph)
    print(f"\nnode radii span [{radii.min():.2f}, {radii.max():.2f}] scene units")
    print(f"edge girths span [{girths.min():.3f}, {girths.max():.3f}]")


if __name__ == "__main__":
    main()
