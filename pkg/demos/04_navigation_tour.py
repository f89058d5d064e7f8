"""Walkthrough: the dual-rig overview/detail navigation state machine.

Scripted tour: rotate the overview, select and confirm a hub to
teleport inside, auto-fly to a neighbor, check the overview-indicator
arrow, then return to a freshly fitted overview.
"""
from pathlib import Path

import numpy as np

from graphdive import (
    bounding_sphere,
    indicator_direction,
    layout_graph,
    load_graph,
    neighborhood,
    node_radii,
    return_to_overview,
    start_auto_flight,
    update_auto_flight,
)
from graphdive.navigation import apply_overview_rotation, initial_nav, trigger_select

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def fmt(v) -> str:
    return "(" + ", ".join(f"{x:7.2f}" for x in v) + ")"


def main() -> None:
    graph = load_graph(FIXTURE.read_text())
    positions = layout_graph(graph, seed=7)
    radii = node_radii(graph)
    bounding = bounding_sphere(positions, radii)
    nav = initial_nav(bounding, eye_height=1.6)
    print(f"overview camera at {fmt(nav.active.position)}, "
          f"bounding radius {bounding[1]:.1f}")

    # D-pad right for half a second spins the graph about its up axis.
    apply_overview_rotation(nav, (1.0, 0.0), 0.5, bounding)
    print(f"after 0.5 s rotation: graph quaternion {fmt(nav.graph_rotation)}")

    hub = graph.nodes[int(np.argmax(graph.degrees))].id
    i = graph.index_of[hub]
    trigger_select(nav, hub, positions[i], float(radii[i]))     # select
    trigger_select(nav, hub, positions[i], float(radii[i]))     # confirm
    print(f"\nteleported into the {nav.perspective.value} perspective at {hub}")
    print(f"  camera {fmt(nav.active.position)}, orientation unchanged")
    print(f"  camera prop stays at {fmt(nav.passive.position)}")

    neighbor = sorted(neighborhood(graph, hub)[0])[0]
    j = graph.index_of[neighbor]
    start_auto_flight(nav, positions[j], float(radii[j]))
    steps = 0
    while nav.flight is not None:
        update_auto_flight(nav, 1.0 / 90.0)
        steps += 1
    print(f"\nauto-flight to {neighbor} eased in over {steps} frames "
          f"({steps / 90.0:.2f} s)")

    arrow = indicator_direction(nav, nav.active)
    print(f"green overview arrow points {fmt(arrow)} (head-local)")

    return_to_overview(nav, bounding, nav.active.orientation, eye_height=1.6)
    print(f"\nback in the {nav.perspective.value}: graph refitted dead ahead "
          f"at {fmt(nav.active.position)}")


if __name__ == "__main__":
    main()
