"""Dual-rig overview/detail navigation state machine.

The active rig is the live viewpoint; the passive rig stores the other
perspective's pose. Overview input rotates the graph (not the camera)
and keeps the camera fitted to the bounding sphere; detail input flies
the rig. Switching perspectives swaps the rigs.

Input event contract from the UI shell: dpad(x, y), trigger on the
entity under the ray, modifier_held, head pose, controller pose, all
timestamped (see session.py for the dataclasses).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import quaternion as quat


class Perspective(enum.Enum):
    OVERVIEW = "overview"
    DETAIL = "detail"


class PerspectiveError(RuntimeError):
    """Raised when an operation is invoked from the wrong perspective."""


@dataclass
class NavParams:
    """Navigation constants; tune freely, none are load-bearing."""

    rotate_speed: float = np.deg2rad(45.0)  # rad/s per full D-pad deflection
    free_flight_speed: float = 3.0          # scene units/s
    auto_flight_speed: float = 9.0          # average units/s, 3x free flight
    standoff_factor: float = 1.5            # flights stop at factor*radius before a node
    fov_vertical: float = np.deg2rad(60.0)
    fit_margin: float = 1.2


DEFAULT_NAV = NavParams()


@dataclass
class RigPose:
    position: np.ndarray     # (3,)
    orientation: np.ndarray  # (4,) unit quaternion, xyzw

    def copy(self) -> "RigPose":
        return RigPose(self.position.copy(), self.orientation.copy())


@dataclass
class AutoFlight:
    start: np.ndarray
    target: np.ndarray
    progress: float
    speed: float


@dataclass
class NavigationState:
    active: RigPose
    passive: RigPose
    perspective: Perspective
    graph_rotation: np.ndarray = field(default_factory=quat.identity)
    flight: Optional[AutoFlight] = None
    selected_node: Optional[str] = None
    detail_visited: bool = False
    last_heading: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, -1.0]))


def ease_out(t: float) -> float:
    """Cubic ease-out: zero slope at arrival."""
    return 1.0 - (1.0 - t) ** 3


def _fit_distance(radius: float, params: NavParams) -> float:
    return radius / np.tan(params.fov_vertical / 2.0) * params.fit_margin


def overview_pose(
    bounding: tuple[np.ndarray, float],
    heading: np.ndarray,
    eye_height: float,
    params: NavParams = DEFAULT_NAV,
) -> RigPose:
    """Overview pose facing the horizontal heading with the whole graph in view.

    The rig sits at the fit distance along -heading; its vertical
    coordinate puts the graph center at the user's eye height.
    """
    center, radius = bounding
    d = _fit_distance(radius, params)
    pos = np.array([
        center[0] - d * heading[0],
        center[1] - eye_height,
        center[2] - d * heading[2],
    ])
    return RigPose(position=pos, orientation=quat.yaw_facing(heading))


def initial_nav(
    bounding: tuple[np.ndarray, float],
    eye_height: float = 1.6,
    params: NavParams = DEFAULT_NAV,
) -> NavigationState:
    pose = overview_pose(bounding, np.array([0.0, 0.0, -1.0]), eye_height, params)
    return NavigationState(active=pose, passive=pose.copy(), perspective=Perspective.OVERVIEW)


def swap_rigs(nav: NavigationState) -> NavigationState:
    """Exchange active and passive poses and flip the perspective.

    This is the primitive both perspective switches build on; applying
    it twice restores both rigs exactly.
    """
    nav.active, nav.passive = nav.passive, nav.active
    nav.perspective = (
        Perspective.DETAIL if nav.perspective == Perspective.OVERVIEW else Perspective.OVERVIEW
    )
    return nav


def _require(nav: NavigationState, perspective: Perspective, op: str) -> None:
    if nav.perspective != perspective:
        raise PerspectiveError(f"{op} requires the {perspective.value} perspective")


def apply_overview_rotation(
    nav: NavigationState,
    dpad: tuple[float, float],
    dt: float,
    bounding: tuple[np.ndarray, float],
    eye_height: float = 1.6,
    params: NavParams = DEFAULT_NAV,
) -> NavigationState:
    """Rotate the graph around its local axes and re-fit the camera.

    D-pad x yaws about the graph's local up; y pitches about the
    camera-right axis. The camera itself never rotates, which keeps the
    user's physical frame stable.
    """
    _require(nav, Perspective.OVERVIEW, "overview rotation")
    x, y = dpad
    if x != 0.0:
        yaw = quat.from_axis_angle(np.array([0.0, 1.0, 0.0]), x * params.rotate_speed * dt)
        nav.graph_rotation = quat.multiply(nav.graph_rotation, yaw)
    if y != 0.0:
        right = quat.right_vector(nav.active.orientation)
        pitch = quat.from_axis_angle(right, y * params.rotate_speed * dt)
        nav.graph_rotation = quat.multiply(pitch, nav.graph_rotation)
    nav.graph_rotation = quat.normalize(nav.graph_rotation)
    heading = quat.view_vector(nav.active.orientation)
    heading[1] = 0.0
    n = np.linalg.norm(heading)
    heading = heading / n if n > 0 else nav.last_heading
    nav.active = RigPose(
        position=overview_pose(bounding, heading, eye_height, params).position,
        orientation=nav.active.orientation,
    )
    return nav


def apply_free_flight(
    nav: NavigationState,
    dpad: tuple[float, float],
    head_orientation: np.ndarray,
    dt: float,
    params: NavParams = DEFAULT_NAV,
) -> NavigationState:
    """Fly relative to the head: forward/back along the view, strafing right."""
    _require(nav, Perspective.DETAIL, "free flight")
    x, y = dpad
    step = params.free_flight_speed * dt
    nav.active.position = (
        nav.active.position
        + y * step * quat.view_vector(head_orientation)
        + x * step * quat.right_vector(head_orientation)
    )
    return nav


def start_auto_flight(
    nav: NavigationState,
    target: np.ndarray,
    node_radius: float = 0.0,
    params: NavParams = DEFAULT_NAV,
) -> NavigationState:
    """Begin an eased flight toward a point, stopping short of node surfaces.

    The approach stops at standoff_factor * node_radius before the
    target; a target at the current position is a no-op.
    """
    _require(nav, Perspective.DETAIL, "auto flight")
    target = np.asarray(target, dtype=np.float64)
    if not np.all(np.isfinite(target)):
        raise ValueError("auto-flight target must be finite")
    offset = target - nav.active.position
    length = float(np.linalg.norm(offset))
    standoff = params.standoff_factor * node_radius
    if length <= standoff or length == 0.0:
        return nav
    adjusted = target - offset / length * standoff
    nav.flight = AutoFlight(
        start=nav.active.position.copy(),
        target=adjusted,
        progress=0.0,
        speed=params.auto_flight_speed,
    )
    return nav


def update_auto_flight(nav: NavigationState, dt: float) -> NavigationState:
    """Advance the active flight; eased position, constant average speed."""
    f = nav.flight
    if f is None:
        return nav
    length = float(np.linalg.norm(f.target - f.start))
    duration = length / f.speed
    f.progress = min(1.0, f.progress + (dt / duration if duration > 0 else 1.0))
    nav.active.position = f.start + ease_out(f.progress) * (f.target - f.start)
    if f.progress >= 1.0:
        nav.active.position = f.target.copy()
        nav.flight = None
    return nav


def teleport_to_node(
    nav: NavigationState,
    node_position: np.ndarray,
    node_radius: float = 0.0,
    params: NavParams = DEFAULT_NAV,
) -> NavigationState:
    """Jump into the detail perspective at a node's standoff point.

    Only the position changes; the orientation held before the teleport
    is carried over bit-exactly. The pose left behind becomes the
    passive rig (rendered as the camera prop).
    """
    _require(nav, Perspective.OVERVIEW, "teleport")
    node_position = np.asarray(node_position, dtype=np.float64)
    orientation_before = nav.active.orientation.copy()
    standoff = params.standoff_factor * node_radius
    view = quat.view_vector(orientation_before)
    swap_rigs(nav)
    nav.active = RigPose(
        position=node_position - standoff * view,
        orientation=orientation_before,
    )
    nav.selected_node = None
    nav.detail_visited = True
    return nav


def return_to_overview(
    nav: NavigationState,
    bounding: tuple[np.ndarray, float],
    head_orientation: np.ndarray,
    eye_height: float = 1.6,
    params: NavParams = DEFAULT_NAV,
) -> NavigationState:
    """Switch back to overview with the graph directly ahead at eye level.

    The pose is recomputed from the current viewing heading rather than
    restored, so the user never has to search for the graph. A vertical
    head view falls back to the previous horizontal heading.
    """
    _require(nav, Perspective.DETAIL, "overview return")
    h = quat.view_vector(head_orientation)
    h[1] = 0.0
    n = float(np.linalg.norm(h))
    heading = h / n if n > 1e-9 else nav.last_heading.copy()
    swap_rigs(nav)
    nav.active = overview_pose(bounding, heading, eye_height, params)
    nav.last_heading = heading
    return nav


def indicator_direction(nav: NavigationState, head_pose: RigPose) -> np.ndarray:
    """Head-local unit vector pointing at the overview rig (the green arrow)."""
    _require(nav, Perspective.DETAIL, "overview indicator")
    v = nav.passive.position - head_pose.position
    n = float(np.linalg.norm(v))
    if n == 0.0:
        return np.array([0.0, 0.0, -1.0])
    return quat.rotate(quat.conjugate(head_pose.orientation), v / n)


def trigger_select(
    nav: NavigationState,
    node_id: str,
    node_position: np.ndarray,
    node_radius: float = 0.0,
    params: NavParams = DEFAULT_NAV,
) -> bool:
    """Two-step overview selection: first trigger selects, second confirms.

    Returns True when the confirmation fired a teleport.
    """
    _require(nav, Perspective.OVERVIEW, "node selection")
    if nav.selected_node == node_id:
        teleport_to_node(nav, node_position, node_radius, params)
        return True
    nav.selected_node = node_id
    return False
