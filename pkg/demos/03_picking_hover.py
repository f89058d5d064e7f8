"""Walkthrough: laser-pointer picking and hover highlighting.

Casts rays into the converged scene, compares the BVH result with the
exhaustive oracle, and shows the highlight/lowlight partition plus the
centered label payload a hover produces.
"""
from pathlib import Path

import numpy as np

from graphdive import (
    build_pick_index,
    build_snapshot,
    hover_update,
    label_payload,
    layout_graph,
    load_graph,
    make_ray,
    ray_pick,
    ray_pick_linear,
)

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def main() -> None:
    graph = load_graph(FIXTURE.read_text())
    positions = layout_graph(graph, seed=7)
    snapshot = build_snapshot(graph, positions)
    index = build_pick_index(snapshot)

    rng = np.random.default_rng(0)
    print("ten random rays, BVH vs linear-scan oracle:")
    for k in range(10):
        target = positions[rng.integers(0, graph.node_count)]
        origin = target + rng.normal(size=3) * 60.0
        ray = make_ray(origin, target - origin)
        fast = ray_pick(index, ray)
        slow = ray_pick_linear(snapshot, ray)
        tag = "miss" if fast is None else f"{fast.kind} {fast.ident} @ {fast.distance:.3f}"
        agree = (fast == slow) or (
            fast is not None and slow is not None
            and fast.kind == slow.kind and fast.ident == slow.ident
            and abs(fast.distance - slow.distance) < 1e-6
        )
        print(f"  ray {k}: {tag:32s} oracle agrees: {agree}")

    hub = graph.nodes[int(np.argmax(graph.degrees))].id
    target = positions[graph.index_of[hub]]
    ray = make_ray(target + np.array([0.0, 0.0, 80.0]), np.array([0.0, 0.0, -1.0]))
    hit = ray_pick(index, ray)
    highlight = hover_update(graph, hit)
    label = label_payload(graph, highlight.hovered)
    print(f"\nhovering {highlight.hovered}:")
    print(f"  label shown center-screen: {label.text!r}")
    print(f"  {len(highlight.highlight_nodes)} neighbors + "
          f"{len(highlight.highlight_edges)} edges turn red")
    print(f"  {len(highlight.lowlight_nodes)} nodes + "
          f"{len(highlight.lowlight_edges)} edges fade to the dark hue")


if __name__ == "__main__":
    main()
