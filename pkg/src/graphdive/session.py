"""Engine facade: wires graph, layout, picking, navigation, temporal state
and scene synthesis behind the timestamped input-event contract a UI
shell speaks (dpad, trigger, modifier, head pose, controller pose).

Pick rays arrive in world space and are transformed into layout space
by the inverse graph rotation, so the pick index never needs rebuilding
while the overview spins.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from . import quaternion as quat
from .graph import DynamicGraph, frame_presence, node_radii
from .layout import (
    LayoutParams,
    LayoutState,
    bounding_sphere,
    init_layout,
    run_to_convergence,
    tick,
)
from .navigation import (
    DEFAULT_NAV,
    NavParams,
    NavigationState,
    Perspective,
    RigPose,
    apply_free_flight,
    apply_overview_rotation,
    initial_nav,
    return_to_overview,
    start_auto_flight,
    trigger_select,
    update_auto_flight,
)
from .picking import (
    EMPTY_HIGHLIGHT,
    NODE,
    HighlightState,
    PickIndex,
    Ray,
    build_pick_index,
    build_snapshot,
    hover_update,
    make_ray,
    ray_pick,
)
from .scene import DEFAULT_STYLE, InstanceBuffers, SceneStyle, label_payload, synthesize
from .temporal import TimeCursor, advance_transition, scrub, time_bar_payload


@dataclass(frozen=True)
class DpadEvent:
    x: float
    y: float
    timestamp: float = 0.0


@dataclass(frozen=True)
class TriggerEvent:
    timestamp: float = 0.0


@dataclass(frozen=True)
class ModifierEvent:
    held: bool
    timestamp: float = 0.0


@dataclass(frozen=True)
class HeadPoseEvent:
    position: np.ndarray
    orientation: np.ndarray
    timestamp: float = 0.0


@dataclass(frozen=True)
class ControllerPoseEvent:
    """Controller pose; the laser ray runs along the controller's -z axis."""

    position: np.ndarray
    orientation: np.ndarray
    timestamp: float = 0.0


@dataclass(frozen=True)
class IndicatorClickEvent:
    """Click on the green overview-indicator arrow."""

    timestamp: float = 0.0


InputEvent = Union[
    DpadEvent, TriggerEvent, ModifierEvent, HeadPoseEvent, ControllerPoseEvent, IndicatorClickEvent
]


@dataclass
class EngineConfig:
    layout: LayoutParams = field(default_factory=LayoutParams)
    nav: NavParams = field(default_factory=lambda: DEFAULT_NAV)
    style: SceneStyle = field(default_factory=lambda: DEFAULT_STYLE)
    seed: int = 42
    eye_height: float = 1.6
    keep_ticking: bool = False      # keep annealing after convergence
    pick_lowlighted: bool = True    # lowlighted elements stay pickable


class Session:
    """One loaded graph plus all interaction state."""

    def __init__(self, graph: DynamicGraph, config: Optional[EngineConfig] = None):
        self.graph = graph
        self.config = config or EngineConfig()
        self.state: LayoutState = init_layout(graph, self.config.seed, self.config.layout)
        self.positions = run_to_convergence(self.state, graph)
        self.radii = node_radii(graph)
        self.snapshot = build_snapshot(graph, self.positions)
        self.pick_index: PickIndex = build_pick_index(self.snapshot)
        self.bounding = bounding_sphere(self.positions, self.radii)
        self.nav: NavigationState = initial_nav(
            self.bounding, self.config.eye_height, self.config.nav
        )
        self.cursor = TimeCursor(frame_count=graph.frame_count)
        self.highlight: HighlightState = EMPTY_HIGHLIGHT
        self.modifier_held = False
        self.head = RigPose(self.nav.active.position.copy(), self.nav.active.orientation.copy())
        self.pointer: Optional[Ray] = None

    # -- input ---------------------------------------------------------------

    def handle_event(self, event: InputEvent, dt: float = 1.0 / 90.0) -> None:
        if isinstance(event, HeadPoseEvent):
            self.head = RigPose(
                np.asarray(event.position, dtype=np.float64),
                np.asarray(event.orientation, dtype=np.float64),
            )
        elif isinstance(event, ControllerPoseEvent):
            self.pointer = make_ray(
                event.position, quat.view_vector(np.asarray(event.orientation, dtype=np.float64))
            )
            self._refresh_hover()
        elif isinstance(event, ModifierEvent):
            self.modifier_held = event.held
        elif isinstance(event, DpadEvent):
            self._handle_dpad(event, dt)
        elif isinstance(event, TriggerEvent):
            self._handle_trigger()
        elif isinstance(event, IndicatorClickEvent):
            if self.nav.perspective == Perspective.DETAIL:
                return_to_overview(
                    self.nav, self.bounding, self.head.orientation,
                    self.config.eye_height, self.config.nav,
                )

    def _handle_dpad(self, event: DpadEvent, dt: float) -> None:
        if self.modifier_held:
            scrub(self.cursor, event.x, True, dt)
        elif self.nav.perspective == Perspective.OVERVIEW:
            apply_overview_rotation(
                self.nav, (event.x, event.y), dt, self.bounding,
                self.config.eye_height, self.config.nav,
            )
        else:
            apply_free_flight(self.nav, (event.x, event.y), self.head.orientation, dt, self.config.nav)

    def _handle_trigger(self) -> None:
        if not self.highlight.active:
            return
        kind, ident = self.highlight.hovered
        if kind == NODE:
            i = self.graph.index_of[ident]
            target = self.positions[i]
            radius = float(self.radii[i])
        else:
            e = self.graph.edges[int(ident)]
            si, ti = self.graph.index_of[e.source], self.graph.index_of[e.target]
            target = (self.positions[si] + self.positions[ti]) / 2.0
            radius = 0.0
        if self.nav.perspective == Perspective.OVERVIEW:
            if kind == NODE:
                trigger_select(self.nav, ident, target, radius, self.config.nav)
        else:
            start_auto_flight(self.nav, target, radius, self.config.nav)

    def _visible_sets(self) -> tuple[set, set]:
        nodes, edges = frame_presence(self.graph, self.cursor.current)
        if self.cursor.transition:
            n2, e2 = frame_presence(self.graph, self.cursor.transition.to_index)
            nodes |= n2
            edges |= e2
        return nodes, edges

    def _refresh_hover(self) -> None:
        if self.pointer is None:
            self.highlight = EMPTY_HIGHLIGHT
            return
        vis_nodes, vis_edges = self._visible_sets()
        if not self.config.pick_lowlighted and self.highlight.active:
            vis_nodes &= self.highlight.emphasized_nodes() | {
                i for k, i in [self.highlight.hovered] if k == NODE
            }
            vis_edges &= self.highlight.emphasized_edges()
        ray = self._layout_space_ray(self.pointer)
        hit = ray_pick(self.pick_index, ray, vis_nodes, vis_edges)
        self.highlight = hover_update(self.graph, hit, vis_nodes, vis_edges)

    def _layout_space_ray(self, ray: Ray) -> Ray:
        q = self.nav.graph_rotation
        if np.array_equal(q, np.array([0.0, 0.0, 0.0, 1.0])):
            return ray
        inv = quat.conjugate(q)
        return Ray(origin=quat.rotate(inv, ray.origin), direction=quat.rotate(inv, ray.direction))

    # -- per-frame -----------------------------------------------------------

    def frame(self, dt: float = 1.0 / 90.0) -> InstanceBuffers:
        """Advance transient state and synthesize the frame's buffers."""
        if self.config.keep_ticking and self.state.alpha >= self.config.layout.alpha_min:
            tick(self.state, self.graph)
            self.positions = self.state.positions.copy()
            self.snapshot = build_snapshot(self.graph, self.positions)
            self.pick_index = build_pick_index(self.snapshot)
            self.bounding = bounding_sphere(self.positions, self.radii)
        advance_transition(self.cursor, dt)
        update_auto_flight(self.nav, dt)
        return synthesize(
            self.graph, self.positions, self.cursor, self.highlight, self.nav,
            style=self.config.style, head_pose=self.head,
        )

    def overlays(self) -> dict:
        """Overlay payloads: centered label, time bar, hover state."""
        label = label_payload(self.graph, self.highlight.hovered)
        return {
            "label": None if label is None else {
                "kind": label.kind,
                "ident": label.ident,
                "text": label.text,
                "screen_center": label.screen_center,
                "extra": label.extra,
            },
            "time_bar": time_bar_payload(self.cursor),
            "perspective": self.nav.perspective.value,
            "selected_node": self.nav.selected_node,
        }
