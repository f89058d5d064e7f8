"""Walkthrough: time scrubbing with fades, attribute filtering, and the
two-network comparison mode.

Positions never move while scrubbing; only opacities change.
"""
from pathlib import Path

import numpy as np

from graphdive import load_graph
from graphdive.temporal import (
    TimeCursor,
    advance_transition,
    attribute_cursor,
    bin_by_attribute,
    comparison_cursor,
    element_opacity,
    scrub,
    time_bar_payload,
)

FIXTURE = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def main() -> None:
    graph = load_graph(FIXTURE.read_text())
    cursor = TimeCursor(frame_count=graph.frame_count)

    print("holding the modifier and pushing the stick right:")
    for frame_step in range(3):
        scrub(cursor, axis_x=1.0, modifier_held=True, dt=1.0 / 90.0)
        for _ in range(3):
            advance_transition(cursor, cursor.duration / 3.0)
        bar = time_bar_payload(cursor)
        print(f"  step {frame_step}: time-bar {bar}")
        cursor.cooldown = 0.0

    cursor = TimeCursor(frame_count=graph.frame_count, current=4)
    scrub(cursor, 1.0, True, 1.0 / 90.0)
    print("\nfade of a departing element while crossing 4 -> 5:")
    for _ in range(5):
        advance_transition(cursor, cursor.duration / 5.0)
        p = 0.0 if cursor.transition is None else cursor.transition.progress
        print(f"  progress {p:4.2f}: opacity {element_opacity(cursor, True, False):4.2f}")

    weights = np.array([e.weight for e in graph.edges])
    bins, edges = bin_by_attribute(weights, bins=10)
    fc = attribute_cursor()
    print(f"\nattribute filter: {fc.frame_count} equal-width weight ranges")
    for b in range(10):
        print(f"  range [{edges[b]:.2f}, {edges[b + 1]:.2f}): "
              f"{int((bins == b).sum()):3d} edges")

    cc = comparison_cursor()
    scrub(cc, 1.0, True, 1.0 / 90.0)
    print(f"\ncomparison mode flips between two element sets: {time_bar_payload(cc)}")


if __name__ == "__main__":
    main()
