"""Per-frame scene synthesis: flat GPU-instancing buffers and label payloads.

Buffers are rebuilt from scratch every frame (no diffing) and hold at
most three instanced batches regardless of graph size: node spheres,
edge tubes, direction arrows.

Packed layout (InstanceBuffers.pack, all little-endian):

    header:  magic b"GDIB" | u32 version=1 | u32 node_count
             | u32 edge_count | u32 arrow_count | u32 prop_flags
             (bit 0: camera prop valid, bit 1: indicator valid)
    props:   camera prop f32[7] (position xyz, orientation xyzw)
             indicator  f32[3] (head-local unit direction)
    nodes:   node_count  * f32[8]:  px py pz radius r g b a
    edges:   edge_count  * f32[13]: mx my mz qx qy qz qw length girth r g b a
    arrows:  arrow_count * f32[13]: same field order as edges

Edge quaternions map the unit +z axis onto the source-to-target
direction; mx/my/mz is the tube segment midpoint.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import quaternion as quat
from .graph import (
    DynamicGraph,
    EDGE_BASE_COLOR,
    edge_girths,
    node_colors,
    node_radii,
    presence_masks,
)
from .navigation import NavigationState, Perspective, RigPose, indicator_direction
from .picking import EDGE, NODE, HighlightState
from .temporal import CursorMode, TimeCursor, fade_endpoints, opacity_array

NODE_STRIDE = 8
EDGE_STRIDE = 13
MAGIC = b"GDIB"
PACK_VERSION = 1

_IDENTITY_Q = np.array([0.0, 0.0, 0.0, 1.0])


@dataclass
class SceneStyle:
    """Rendering constants the buffers bake in."""

    background: tuple = (0.05, 0.06, 0.08)
    highlight_color: tuple = (1.0, 0.12, 0.10)
    lowlight_opacity: float = 0.15
    lowlight_gray: float = 0.12
    lowlight_background_mix: float = 0.5
    arrow_fraction: float = 0.85   # arrow center position along the tube
    arrow_length_fraction: float = 0.08
    arrow_girth_scale: float = 2.5

    def lowlight_color(self) -> np.ndarray:
        gray = np.full(3, self.lowlight_gray)
        bg = np.asarray(self.background)
        return gray * (1.0 - self.lowlight_background_mix) + bg * self.lowlight_background_mix


DEFAULT_STYLE = SceneStyle()


@dataclass
class InstanceBuffers:
    node_data: np.ndarray   # (node_count, 8) float32
    edge_data: np.ndarray   # (edge_count, 13) float32
    arrow_data: np.ndarray  # (arrow_count, 13) float32
    camera_prop: Optional[np.ndarray] = None  # (7,) float32
    indicator: Optional[np.ndarray] = None    # (3,) float32

    @property
    def node_count(self) -> int:
        return len(self.node_data)

    @property
    def edge_count(self) -> int:
        return len(self.edge_data)

    @property
    def arrow_count(self) -> int:
        return len(self.arrow_data)

    @property
    def batch_count(self) -> int:
        """Instanced draw batches a renderer needs for this frame (<= 3)."""
        return sum(1 for a in (self.node_data, self.edge_data, self.arrow_data) if len(a))

    def pack(self) -> bytes:
        """Serialize to the documented little-endian wire layout."""
        flags = (1 if self.camera_prop is not None else 0) | (
            2 if self.indicator is not None else 0
        )
        header = MAGIC + struct.pack(
            "<5I", PACK_VERSION, self.node_count, self.edge_count, self.arrow_count, flags
        )
        prop = np.zeros(7, dtype="<f4")
        if self.camera_prop is not None:
            prop[:] = self.camera_prop
        ind = np.zeros(3, dtype="<f4")
        if self.indicator is not None:
            ind[:] = self.indicator
        return b"".join([
            header,
            prop.tobytes(),
            ind.tobytes(),
            np.ascontiguousarray(self.node_data, dtype="<f4").tobytes(),
            np.ascontiguousarray(self.edge_data, dtype="<f4").tobytes(),
            np.ascontiguousarray(self.arrow_data, dtype="<f4").tobytes(),
        ])


def unpack(data: bytes) -> InstanceBuffers:
    """Inverse of InstanceBuffers.pack (used by tests and bridges)."""
    if data[:4] != MAGIC:
        raise ValueError("bad buffer magic")
    version, n, m, a, flags = struct.unpack_from("<5I", data, 4)
    if version != PACK_VERSION:
        raise ValueError(f"unsupported buffer version {version}")
    off = 4 + 20
    prop = np.frombuffer(data, dtype="<f4", count=7, offset=off).copy()
    off += 7 * 4
    ind = np.frombuffer(data, dtype="<f4", count=3, offset=off).copy()
    off += 3 * 4
    node = np.frombuffer(data, dtype="<f4", count=n * NODE_STRIDE, offset=off).reshape(n, NODE_STRIDE).copy()
    off += n * NODE_STRIDE * 4
    edge = np.frombuffer(data, dtype="<f4", count=m * EDGE_STRIDE, offset=off).reshape(m, EDGE_STRIDE).copy()
    off += m * EDGE_STRIDE * 4
    arrow = np.frombuffer(data, dtype="<f4", count=a * EDGE_STRIDE, offset=off).reshape(a, EDGE_STRIDE).copy()
    return InstanceBuffers(
        node_data=node,
        edge_data=edge,
        arrow_data=arrow,
        camera_prop=prop if flags & 1 else None,
        indicator=ind if flags & 2 else None,
    )


@dataclass(frozen=True)
class LabelPayload:
    """Detail text shown in the center of the user's view.

    extra carries the element's opaque attributes so UIs can append
    them to the label.
    """

    kind: str
    ident: object
    text: str
    screen_center: bool = True
    extra: dict = field(default_factory=dict)


def label_payload(graph: DynamicGraph, hovered: Optional[tuple]) -> Optional[LabelPayload]:
    """Node hover shows the label; edge hover shows the formatted weight."""
    if hovered is None:
        return None
    kind, ident = hovered
    if kind == NODE:
        if ident not in graph.index_of:
            raise KeyError(f"unknown node id {ident!r}")
        node = graph.nodes[graph.index_of[ident]]
        return LabelPayload(kind=NODE, ident=ident, text=node.label, extra=dict(node.attrs))
    ei = int(ident)
    if not 0 <= ei < graph.edge_count:
        raise KeyError(f"unknown edge index {ei}")
    edge = graph.edges[ei]
    return LabelPayload(kind=EDGE, ident=ei, text=f"{edge.weight:.3g}", extra=dict(edge.attrs))


def _mode_presence(
    graph: DynamicGraph,
    cursor: TimeCursor,
    frame: int,
    node_bins: Optional[np.ndarray],
    edge_bins: Optional[np.ndarray],
) -> tuple[np.ndarray, np.ndarray]:
    if cursor.mode == CursorMode.TIME_FRAMES:
        return presence_masks(graph, frame)
    node_mask = np.ones(graph.node_count, dtype=bool) if node_bins is None else node_bins == frame
    own = np.ones(graph.edge_count, dtype=bool) if edge_bins is None else edge_bins == frame
    if graph.edge_count == 0:
        return node_mask, own
    edge_mask = own & node_mask[graph.pairs[:, 0]] & node_mask[graph.pairs[:, 1]]
    return node_mask, edge_mask


def synthesize(
    graph: DynamicGraph,
    positions: np.ndarray,
    cursor: TimeCursor,
    highlight: HighlightState,
    nav: NavigationState,
    style: SceneStyle = DEFAULT_STYLE,
    node_bins: Optional[np.ndarray] = None,
    edge_bins: Optional[np.ndarray] = None,
    head_pose: Optional[RigPose] = None,
) -> InstanceBuffers:
    """Build the frame's instance buffers.

    A pure function of its inputs: identical arguments produce
    byte-identical buffers.
    """
    n, m = graph.node_count, graph.edge_count
    if len(positions) != n:
        raise ValueError(f"positions length {len(positions)} does not match {n} nodes")

    f_from, f_to = fade_endpoints(cursor)
    n_from, e_from = _mode_presence(graph, cursor, f_from, node_bins, edge_bins)
    n_to, e_to = _mode_presence(graph, cursor, f_to, node_bins, edge_bins)
    node_alpha = opacity_array(cursor, n_from, n_to)
    edge_alpha = opacity_array(cursor, e_from, e_to)

    node_rgb = node_colors(graph)
    edge_rgb = np.tile(np.asarray(EDGE_BASE_COLOR), (m, 1))
    if highlight.active:
        hl = np.asarray(style.highlight_color)
        low = style.lowlight_color()
        hi_n = np.fromiter(
            (graph.index_of[nid] for nid in highlight.highlight_nodes), dtype=np.int64,
            count=len(highlight.highlight_nodes),
        )
        lo_n = np.fromiter(
            (graph.index_of[nid] for nid in highlight.lowlight_nodes), dtype=np.int64,
            count=len(highlight.lowlight_nodes),
        )
        node_rgb[hi_n] = hl
        node_rgb[lo_n] = low
        node_alpha[lo_n] *= style.lowlight_opacity
        kind, ident = highlight.hovered
        if kind == EDGE:
            edge_rgb[int(ident)] = hl
        hi_e = np.fromiter(iter(highlight.highlight_edges), dtype=np.int64,
                           count=len(highlight.highlight_edges))
        lo_e = np.fromiter(iter(highlight.lowlight_edges), dtype=np.int64,
                           count=len(highlight.lowlight_edges))
        edge_rgb[hi_e] = hl
        edge_rgb[lo_e] = low
        edge_alpha[lo_e] *= style.lowlight_opacity

    world = positions
    if not np.array_equal(nav.graph_rotation, _IDENTITY_Q):
        world = positions @ quat.to_matrix(nav.graph_rotation).T

    radii = node_radii(graph)
    vis_n = np.flatnonzero(node_alpha > 0.0)
    node_data = np.empty((len(vis_n), NODE_STRIDE), dtype="<f4")
    node_data[:, 0:3] = world[vis_n]
    node_data[:, 3] = radii[vis_n]
    node_data[:, 4:7] = node_rgb[vis_n]
    node_data[:, 7] = node_alpha[vis_n]

    if m:
        girths = edge_girths(graph)
        s, t = graph.pairs[:, 0], graph.pairs[:, 1]
        vis_e = np.flatnonzero(edge_alpha > 0.0)
        a = world[s[vis_e]]
        b = world[t[vis_e]]
        delta = b - a
        dist = np.linalg.norm(delta, axis=1)
        unit = np.divide(delta, dist[:, None], out=np.zeros_like(delta), where=dist[:, None] > 0)
        ra = radii[s[vis_e]]
        rb = radii[t[vis_e]]
        span = np.maximum(dist - ra - rb, 0.0)
        start = a + unit * ra[:, None]
        orient = quat.align_z_to(unit) if len(vis_e) else np.zeros((0, 4))

        edge_data = np.empty((len(vis_e), EDGE_STRIDE), dtype="<f4")
        edge_data[:, 0:3] = start + unit * (span / 2.0)[:, None]
        edge_data[:, 3:7] = orient
        edge_data[:, 7] = span
        edge_data[:, 8] = girths[vis_e]
        edge_data[:, 9:12] = edge_rgb[vis_e]
        edge_data[:, 12] = edge_alpha[vis_e]

        directed = np.array([graph.edges[int(e)].directed for e in vis_e], dtype=bool)
        da = np.flatnonzero(directed)
        arrow_data = np.empty((len(da), EDGE_STRIDE), dtype="<f4")
        arrow_data[:, 0:3] = start[da] + unit[da] * (span[da] * style.arrow_fraction)[:, None]
        arrow_data[:, 3:7] = orient[da]
        arrow_data[:, 7] = span[da] * style.arrow_length_fraction
        arrow_data[:, 8] = girths[vis_e][da] * style.arrow_girth_scale
        arrow_data[:, 9:12] = edge_rgb[vis_e][da]
        arrow_data[:, 12] = edge_alpha[vis_e][da]
    else:
        edge_data = np.zeros((0, EDGE_STRIDE), dtype="<f4")
        arrow_data = np.zeros((0, EDGE_STRIDE), dtype="<f4")

    camera_prop = None
    if nav.perspective == Perspective.OVERVIEW and nav.detail_visited:
        camera_prop = np.concatenate([nav.passive.position, nav.passive.orientation]).astype("<f4")
    indicator = None
    if nav.perspective == Perspective.DETAIL:
        head = head_pose if head_pose is not None else nav.active
        indicator = indicator_direction(nav, head).astype("<f4")

    return InstanceBuffers(
        node_data=node_data,
        edge_data=edge_data,
        arrow_data=arrow_data,
        camera_prop=camera_prop,
        indicator=indicator,
    )
