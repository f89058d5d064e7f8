"""Headless benchmark: Erdos-Renyi generators, three scripted scenarios
(static overview, overview rotation, detail navigation), and CSV/JSON
timing reports.

Core time per frame covers layout work, scene synthesis and one
scripted pick; display/GPU time is out of scope, so absolute frame
rates are not comparable across machines. Scenario orderings are.
"""
from __future__ import annotations

import enum
import gc
import json
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import DynamicGraph, build_graph, node_radii
from .layout import (
    LayoutParams,
    bounding_sphere,
    init_layout,
    run_to_convergence,
)
from .navigation import (
    DEFAULT_NAV,
    apply_overview_rotation,
    initial_nav,
    start_auto_flight,
    teleport_to_node,
    update_auto_flight,
)
from .picking import build_pick_index, build_snapshot, make_ray, ray_pick
from .quaternion import to_matrix
from .scene import synthesize
from .temporal import TimeCursor
from .picking import hover_update

WARMUP_FRAMES = 60
FRAME_DT = 1.0 / 90.0
_ROTATION_RATE = np.deg2rad(30.0)  # scripted overview spin
_FLIGHTS_PER_RUN = 10
_DETAIL_LASER_REACH = 40.0  # scene units, ~local neighborhood scale


class ScenarioKind(enum.Enum):
    OVERVIEW_STATIC = "overview"
    OVERVIEW_ROTATION = "rotation"
    DETAIL_NAVIGATION = "detail"


@dataclass(frozen=True)
class Scenario:
    kind: ScenarioKind
    frames: int
    seed: int = 42

    def __post_init__(self) -> None:
        if self.frames <= 0:
            raise ValueError("scenario frame count must be positive")


@dataclass
class TimingReport:
    scenario: str
    n: int
    m: int
    samples_ms: list[float]

    @property
    def mean_ms(self) -> float:
        return sum(self.samples_ms) / len(self.samples_ms)

    @property
    def p95_ms(self) -> float:
        return float(np.percentile(self.samples_ms, 95))

    @property
    def fps_equivalent(self) -> float:
        return 1000.0 / self.mean_ms


def generate_er(n: int, m: int, seed: int) -> DynamicGraph:
    """G(n, m): exactly m distinct undirected edges, uniform, seeded.

    Pair indices are sampled without replacement from the C(n, 2)
    possible edges and decoded, so there are never self-loops or
    duplicates.
    """
    max_m = n * (n - 1) // 2
    if not 0 <= m <= max_m:
        raise ValueError(f"edge count {m} out of range [0, {max_m}] for n={n}")
    rng = np.random.default_rng(seed)
    chosen = rng.choice(max_m, size=m, replace=False) if m else np.zeros(0, dtype=np.int64)
    chosen.sort()
    # Pair index k enumerates (i, j), i < j, ordered by i then j:
    # k = i*n - i*(i+1)/2 + (j - i - 1)
    i = (
        n - 2
        - np.floor(np.sqrt(-8.0 * chosen + 4.0 * n * (n - 1) - 7.0) / 2.0 - 0.5)
    ).astype(np.int64)
    j = chosen + i + 1 - i * n + i * (i + 1) // 2
    doc = {
        "directed": False,
        "frame_count": 1,
        "nodes": [
            {"id": f"n{k}", "label": f"n{k}", "group": int(k % 12), "value": 1.0}
            for k in range(n)
        ],
        "links": [
            {"source": f"n{a}", "target": f"n{b}", "weight": 1.0}
            for a, b in zip(i.tolist(), j.tolist())
        ],
    }
    return build_graph(doc)


def _scripted_targets(graph: DynamicGraph, seed: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.integers(0, graph.node_count, size=count)


class _ScenarioRunner:
    """Converged engine state plus the per-frame scripted workload.

    Each step times layout-facing work, scene synthesis and one scripted
    pick (laser from the user's camera, tracking a seeded cycle of
    target nodes). In the overview scenarios the camera never moves; the
    rotation scenario additionally spins the graph, re-measures its
    enclosure and re-fits the camera, so its per-frame work is a strict
    superset of the static scenario's.
    """

    def __init__(self, graph: DynamicGraph, scenario: Scenario,
                 params: Optional[LayoutParams] = None):
        self.graph = graph
        self.scenario = scenario
        state = init_layout(graph, scenario.seed, params)
        self.positions = run_to_convergence(state, graph)
        self.radii = node_radii(graph)
        self.index = build_pick_index(build_snapshot(graph, self.positions))
        self.bounding = bounding_sphere(self.positions, self.radii)
        self.nav = initial_nav(self.bounding)
        self.cursor = TimeCursor(frame_count=graph.frame_count)
        self.targets = _scripted_targets(graph, scenario.seed, _FLIGHTS_PER_RUN)
        self.detail = scenario.kind == ScenarioKind.DETAIL_NAVIGATION
        self.rotation = scenario.kind == ScenarioKind.OVERVIEW_ROTATION
        if self.detail:
            first = int(self.targets[0])
            self.nav.selected_node = graph.nodes[first].id
            teleport_to_node(self.nav, self.positions[first], float(self.radii[first]))
        self.flight_every = max((scenario.frames + WARMUP_FRAMES) // _FLIGHTS_PER_RUN, 1)
        self.dpad_x = _ROTATION_RATE / DEFAULT_NAV.rotate_speed
        self.picks = 0

    def step(self, f: int) -> float:
        """Run one simulated frame; returns elapsed core milliseconds."""
        target = int(self.targets[(f // self.flight_every) % len(self.targets)])
        begin = time.perf_counter()
        if self.rotation:
            # the spinning scene's enclosure is re-measured before the re-fit
            spun = self.positions @ to_matrix(self.nav.graph_rotation).T
            apply_overview_rotation(
                self.nav, (self.dpad_x, 0.0), FRAME_DT,
                bounding_sphere(spun, self.radii),
            )
        elif self.detail:
            if f % self.flight_every == 0:
                start_auto_flight(
                    self.nav, self.positions[target], float(self.radii[target])
                )
            update_auto_flight(self.nav, FRAME_DT)
        origin = self.nav.active.position
        aim = self.positions[target] - origin
        if not np.any(aim):
            aim = np.array([0.0, 0.0, -1.0])
        # the overview user points across the whole graph; inside it, the
        # laser's reach only needs to cover the local neighborhood
        reach = _DETAIL_LASER_REACH if self.detail else np.inf
        hit = ray_pick(self.index, make_ray(origin, aim), max_distance=reach)
        self.picks += 1
        highlight = hover_update(self.graph, hit)
        synthesize(self.graph, self.positions, self.cursor, highlight, self.nav)
        return (time.perf_counter() - begin) * 1000.0

    def report(self, samples: list[float]) -> TimingReport:
        return TimingReport(
            scenario=self.scenario.kind.value,
            n=self.graph.node_count,
            m=self.graph.edge_count,
            samples_ms=samples,
        )


def run_scenario(
    graph: DynamicGraph,
    scenario: Scenario,
    params: Optional[LayoutParams] = None,
    warmup: int = WARMUP_FRAMES,
) -> TimingReport:
    """Converge the layout, then measure per-frame core milliseconds."""
    runner = _ScenarioRunner(graph, scenario, params)
    samples: list[float] = []
    gc_was_enabled = gc.isenabled()
    gc.disable()  # collector pauses would otherwise dominate frame spikes
    try:
        for f in range(scenario.frames + warmup):
            ms = runner.step(f)
            if f >= warmup:
                samples.append(ms)
    finally:
        if gc_was_enabled:
            gc.enable()
    return runner.report(samples)


def compare_scenarios(
    graph: DynamicGraph,
    frames: int = 600,
    seed: int = 42,
    params: Optional[LayoutParams] = None,
    warmup: int = WARMUP_FRAMES,
) -> dict[str, TimingReport]:
    """Measure all three scenarios interleaved frame-by-frame.

    Round-robin stepping pairs the samples in time, so machine-load
    drift hits every scenario equally and the scenario means stay
    comparable even on noisy hosts. This is the fair instrument for
    cross-scenario ordering claims; per-scenario absolute numbers come
    from run_scenario.
    """
    runners = {
        kind: _ScenarioRunner(graph, Scenario(kind, frames, seed), params)
        for kind in ScenarioKind
    }
    samples: dict[ScenarioKind, list[float]] = {kind: [] for kind in runners}
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for f in range(frames + warmup):
            for kind, runner in runners.items():
                ms = runner.step(f)
                if f >= warmup:
                    samples[kind].append(ms)
    finally:
        if gc_was_enabled:
            gc.enable()
    return {kind.value: runners[kind].report(samples[kind]) for kind in runners}


REPORT_JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["scenario", "n", "m", "frames", "samples_ms", "aggregates"],
    "properties": {
        "scenario": {"type": "string", "enum": ["overview", "rotation", "detail"]},
        "n": {"type": "integer", "minimum": 0},
        "m": {"type": "integer", "minimum": 0},
        "frames": {"type": "integer", "minimum": 1},
        "samples_ms": {"type": "array", "items": {"type": "number", "minimum": 0}, "minItems": 1},
        "aggregates": {
            "type": "object",
            "required": ["mean_ms", "p95_ms", "fps_equivalent"],
            "properties": {
                "mean_ms": {"type": "number", "minimum": 0},
                "p95_ms": {"type": "number", "minimum": 0},
                "fps_equivalent": {"type": "number", "minimum": 0},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def report(timing: TimingReport, fmt: str = "csv") -> str:
    """Render a timing report; CSV carries aggregates as comment footer lines."""
    if not timing.samples_ms:
        raise ValueError("cannot report an empty sample set")
    if fmt == "csv":
        lines = ["scenario,n,m,frame,ms"]
        for k, ms in enumerate(timing.samples_ms):
            lines.append(f"{timing.scenario},{timing.n},{timing.m},{k},{ms!r}")
        lines.append(f"# aggregate,mean_ms,{timing.mean_ms!r}")
        lines.append(f"# aggregate,p95_ms,{timing.p95_ms!r}")
        lines.append(f"# aggregate,fps_equivalent,{timing.fps_equivalent!r}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(
            {
                "scenario": timing.scenario,
                "n": timing.n,
                "m": timing.m,
                "frames": len(timing.samples_ms),
                "samples_ms": timing.samples_ms,
                "aggregates": {
                    "mean_ms": timing.mean_ms,
                    "p95_ms": timing.p95_ms,
                    "fps_equivalent": timing.fps_equivalent,
                },
            },
            indent=1,
        )
    raise ValueError(f"unknown report format {fmt!r}")


def parse_csv(text: str) -> TimingReport:
    """Read back a CSV report (aggregate footer lines are recomputed)."""
    samples: list[float] = []
    scenario, n, m = "", 0, 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#") or line.startswith("scenario,"):
            continue
        scenario, ns, ms_, _frame, ms = line.split(",")
        n, m = int(ns), int(ms_)
        samples.append(float(ms))
    if not samples:
        raise ValueError("no samples in CSV report")
    return TimingReport(scenario=scenario, n=n, m=m, samples_ms=samples)
