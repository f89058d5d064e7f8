"""Walkthrough: force-directed layout, annealing, and the Barnes-Hut
approximation quality.

Converges the fixture layout, then compares exact and approximate
many-body forces at a few opening angles. Saves a 3D scatter of the
result when matplotlib is available.
"""
from pathlib import Path

import numpy as np

from graphdive import (
    LayoutParams,
    bounding_sphere,
    init_layout,
    load_graph,
    node_colors,
    node_radii,
    run_to_convergence,
)
from graphdive.layout import repulsion_bh, repulsion_brute

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def main() -> None:
    graph = load_graph(FIXTURE.read_text())
    state = init_layout(graph, seed=7)
    print(f"annealing from alpha=1.0 toward alpha_min={state.params.alpha_min} ...")
    positions = run_to_convergence(state, graph)
    center, radius = bounding_sphere(positions, node_radii(graph))
    print(f"converged in {state.tick_count} ticks; bounding sphere radius {radius:.1f}")
    print(f"centroid pinned at {np.linalg.norm(center):.2e} from the origin")

    exact = repulsion_brute(positions, 1.0, state.params)
    print("\nBarnes-Hut force error vs the exact O(n^2) sum:")
    for theta in (0.0, 0.3, 0.5, 0.9, 1.5):
        approx, pairs = repulsion_bh(
            positions, 1.0, LayoutParams(theta=theta), with_stats=True
        )
        err = np.linalg.norm(approx - exact) / np.linalg.norm(exact)
        share = pairs / (graph.node_count * (graph.node_count - 1))
        print(f"  theta={theta:3.1f}: rms error {err:.2e}, "
              f"{share:6.1%} of all pairs evaluated")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig = plt.figure(figsize=(7, 7))
        ax = fig.add_subplot(projection="3d")
        ax.scatter(*positions.T, s=node_radii(graph) * 20, c=node_colors(graph))
        ax.set_title("converged 3D layout")
        out = Path(__file__).with_name("layout_scatter.png")
        fig.savefig(out, dpi=110)
        print(f"\nsaved {out}")
    except ImportError:
        print("\nmatplotlib not installed; skipping the scatter plot")


if __name__ == "__main__":
    main()
