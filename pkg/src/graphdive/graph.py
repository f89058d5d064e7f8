"""Dynamic attributed graph model.

Owns parsing and validation of the graph JSON document, adjacency,
per-frame presence, and the attribute-to-visual mappings (node radius,
edge girth, group color) used by scene synthesis.

Graphs are immutable after load and safe to share read-only across
threads.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

# 12-entry categorical palette (colorbrewer "Paired"), cycled by group index.
PALETTE = (
    (0.651, 0.808, 0.890),
    (0.122, 0.471, 0.706),
    (0.698, 0.875, 0.541),
    (0.200, 0.627, 0.173),
    (0.984, 0.604, 0.600),
    (0.890, 0.102, 0.110),
    (0.992, 0.749, 0.435),
    (1.000, 0.498, 0.000),
    (0.792, 0.698, 0.839),
    (0.416, 0.239, 0.604),
    (1.000, 1.000, 0.600),
    (0.694, 0.349, 0.157),
)

EDGE_BASE_COLOR = (0.62, 0.65, 0.70)

_NODE_FIELDS = {"id", "label", "group", "value", "frames"}
_EDGE_FIELDS = {"source", "target", "weight", "directed", "frames"}


class GraphFormatError(ValueError):
    """Raised when a graph document violates the schema or an invariant."""


@dataclass(frozen=True)
class NodeRecord:
    """A single attributed node; frames=None means present in all frames."""

    id: str
    label: str
    group: int
    value: float
    frames: Optional[frozenset[int]]
    attrs: dict = field(default_factory=dict)


@dataclass(frozen=True)
class EdgeRecord:
    """A single attributed edge; frames=None means present in all frames."""

    source: str
    target: str
    weight: float
    directed: bool
    frames: Optional[frozenset[int]]
    attrs: dict = field(default_factory=dict)


@dataclass
class DynamicGraph:
    """Validated graph with adjacency and cached index arrays.

    adjacency[i] lists the indices of every edge incident to node i,
    regardless of direction.
    """

    nodes: tuple[NodeRecord, ...]
    edges: tuple[EdgeRecord, ...]
    frame_count: int
    directed: bool
    index_of: dict[str, int]
    adjacency: tuple[tuple[int, ...], ...]
    pairs: np.ndarray      # (m, 2) int32 node indices per edge
    degrees: np.ndarray    # (n,) int32 incident edge counts

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _parse_frames(raw: Any, frame_count: int, owner: str) -> Optional[frozenset[int]]:
    if raw is None:
        return None
    if not isinstance(raw, (list, tuple)):
        raise GraphFormatError(f"{owner}: 'frames' must be a list of frame indices")
    if len(raw) == 0:
        raise GraphFormatError(f"{owner}: empty 'frames' set is forbidden")
    frames = set()
    for f in raw:
        if not isinstance(f, int) or isinstance(f, bool) or f < 0:
            raise GraphFormatError(f"{owner}: frame index {f!r} is not a nonnegative integer")
        if f >= frame_count:
            raise GraphFormatError(
                f"{owner}: frame index {f} out of range (frame_count={frame_count})"
            )
        frames.add(f)
    return frozenset(frames)


def _require_number(raw: Any, default: float, minimum: float, owner: str, name: str) -> float:
    if raw is None:
        return default
    if not isinstance(raw, (int, float)) or isinstance(raw, bool):
        raise GraphFormatError(f"{owner}: '{name}' must be a number")
    v = float(raw)
    if v < minimum:
        raise GraphFormatError(f"{owner}: '{name}' must be >= {minimum}, got {v}")
    return v


def build_graph(doc: dict) -> DynamicGraph:
    """Validate a parsed graph document and build adjacency."""
    if not isinstance(doc, dict):
        raise GraphFormatError("top-level document must be a JSON object")

    frame_count = doc.get("frame_count", 1)
    if not isinstance(frame_count, int) or isinstance(frame_count, bool) or frame_count < 1:
        raise GraphFormatError(f"'frame_count' must be a positive integer, got {frame_count!r}")
    directed_default = bool(doc.get("directed", False))

    nodes: list[NodeRecord] = []
    index_of: dict[str, int] = {}
    for raw in doc.get("nodes", []):
        if not isinstance(raw, dict) or "id" not in raw:
            raise GraphFormatError(f"node record missing 'id': {raw!r}")
        nid = str(raw["id"])
        if nid in index_of:
            raise GraphFormatError(f"duplicate node id {nid!r}")
        owner = f"node {nid!r}"
        group = raw.get("group", 0)
        if not isinstance(group, int) or isinstance(group, bool):
            raise GraphFormatError(f"{owner}: 'group' must be an integer")
        node = NodeRecord(
            id=nid,
            label=str(raw.get("label", nid)),
            group=group,
            value=_require_number(raw.get("value"), 1.0, 0.0, owner, "value"),
            frames=_parse_frames(raw.get("frames"), frame_count, owner),
            attrs={k: v for k, v in raw.items() if k not in _NODE_FIELDS},
        )
        index_of[nid] = len(nodes)
        nodes.append(node)

    edges: list[EdgeRecord] = []
    seen: dict[tuple[str, str], list[Optional[frozenset[int]]]] = {}
    for raw in doc.get("links", []):
        if not isinstance(raw, dict) or "source" not in raw or "target" not in raw:
            raise GraphFormatError(f"link record missing 'source'/'target': {raw!r}")
        src, tgt = str(raw["source"]), str(raw["target"])
        owner = f"edge {src!r}->{tgt!r}"
        for endpoint in (src, tgt):
            if endpoint not in index_of:
                raise GraphFormatError(f"{owner}: dangling endpoint {endpoint!r}")
        directed = bool(raw.get("directed", directed_default))
        frames = _parse_frames(raw.get("frames"), frame_count, owner)
        key = (src, tgt) if directed else (min(src, tgt), max(src, tgt))
        for other in seen.setdefault(key, []):
            if other is None or frames is None or (other & frames):
                raise GraphFormatError(f"{owner}: duplicate edge within a shared frame")
        seen[key].append(frames)
        edges.append(
            EdgeRecord(
                source=src,
                target=tgt,
                weight=_require_number(raw.get("weight"), 1.0, 0.0, owner, "weight"),
                directed=directed,
                frames=frames,
                attrs={k: v for k, v in raw.items() if k not in _EDGE_FIELDS},
            )
        )

    adjacency: list[list[int]] = [[] for _ in nodes]
    pairs = np.zeros((len(edges), 2), dtype=np.int32)
    for ei, e in enumerate(edges):
        si, ti = index_of[e.source], index_of[e.target]
        adjacency[si].append(ei)
        if ti != si:
            adjacency[ti].append(ei)
        pairs[ei, 0] = si
        pairs[ei, 1] = ti
    degrees = np.array([len(a) for a in adjacency], dtype=np.int32)
    pairs.flags.writeable = False
    degrees.flags.writeable = False

    return DynamicGraph(
        nodes=tuple(nodes),
        edges=tuple(edges),
        frame_count=frame_count,
        directed=directed_default,
        index_of=index_of,
        adjacency=tuple(tuple(a) for a in adjacency),
        pairs=pairs,
        degrees=degrees,
    )


def load_graph(text: str) -> DynamicGraph:
    """Parse and validate a graph JSON document.

    Elements without a "frames" field are present in every frame.
    Unknown fields are preserved as opaque attributes.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from exc
    return build_graph(doc)


def serialize(graph: DynamicGraph) -> str:
    """Serialize to the canonical document form (sorted frame lists)."""
    doc: dict[str, Any] = {
        "directed": graph.directed,
        "frame_count": graph.frame_count,
        "nodes": [],
        "links": [],
    }
    for n in graph.nodes:
        rec: dict[str, Any] = {"id": n.id, "label": n.label, "group": n.group, "value": n.value}
        if n.frames is not None:
            rec["frames"] = sorted(n.frames)
        rec.update(n.attrs)
        doc["nodes"].append(rec)
    for e in graph.edges:
        rec = {
            "source": e.source,
            "target": e.target,
            "weight": e.weight,
            "directed": e.directed,
        }
        if e.frames is not None:
            rec["frames"] = sorted(e.frames)
        rec.update(e.attrs)
        doc["links"].append(rec)
    return json.dumps(doc, indent=1, sort_keys=True)


def neighborhood(graph: DynamicGraph, node_id: str) -> tuple[set[str], set[int]]:
    """All nodes adjacent to node_id via any incident edge, plus those edges.

    Both in- and out-neighbors are included; use out_edges() to filter a
    directed rendering policy.
    """
    if node_id not in graph.index_of:
        raise KeyError(f"unknown node id {node_id!r}")
    ni = graph.index_of[node_id]
    nbr_nodes: set[str] = set()
    nbr_edges: set[int] = set()
    for ei in graph.adjacency[ni]:
        e = graph.edges[ei]
        nbr_edges.add(ei)
        other = e.target if e.source == node_id else e.source
        if other != node_id:
            nbr_nodes.add(other)
    return nbr_nodes, nbr_edges


def out_edges(graph: DynamicGraph, node_id: str) -> set[int]:
    """Incident edges leaving node_id (undirected edges count as outgoing)."""
    if node_id not in graph.index_of:
        raise KeyError(f"unknown node id {node_id!r}")
    ni = graph.index_of[node_id]
    return {
        ei for ei in graph.adjacency[ni]
        if not graph.edges[ei].directed or graph.edges[ei].source == node_id
    }


def frame_presence(graph: DynamicGraph, frame: int) -> tuple[set[str], set[int]]:
    """Elements present in a frame; an edge needs both endpoints present."""
    node_mask, edge_mask = presence_masks(graph, frame)
    nodes = {graph.nodes[i].id for i in np.flatnonzero(node_mask)}
    edges = set(np.flatnonzero(edge_mask).tolist())
    return nodes, edges


def presence_masks(graph: DynamicGraph, frame: int) -> tuple[np.ndarray, np.ndarray]:
    """Boolean presence masks over node and edge indices for one frame."""
    if not 0 <= frame < graph.frame_count:
        raise ValueError(f"frame {frame} out of range (frame_count={graph.frame_count})")
    node_mask = np.array(
        [n.frames is None or frame in n.frames for n in graph.nodes], dtype=bool
    )
    if graph.edge_count == 0:
        return node_mask, np.zeros(0, dtype=bool)
    edge_own = np.array(
        [e.frames is None or frame in e.frames for e in graph.edges], dtype=bool
    )
    edge_mask = edge_own & node_mask[graph.pairs[:, 0]] & node_mask[graph.pairs[:, 1]]
    return node_mask, edge_mask


def node_radii(graph: DynamicGraph, r_min: float = 0.5, r_max: float = 2.5) -> np.ndarray:
    """Map node values to sphere radii: r_min + k*sqrt(value).

    k is chosen so the max-value node lands on r_max; sqrt keeps perceived
    volume sub-linear in the attribute.
    """
    values = np.array([n.value for n in graph.nodes], dtype=np.float64)
    if len(values) == 0:
        return values
    vmax = values.max()
    if vmax <= 0:
        return np.full(len(values), r_min)
    k = (r_max - r_min) / np.sqrt(vmax)
    return r_min + k * np.sqrt(values)


def edge_girths(graph: DynamicGraph, g_min: float = 0.05, g_max: float = 0.3) -> np.ndarray:
    """Map edge weights to tube girths, normalized into [g_min, g_max]."""
    weights = np.array([e.weight for e in graph.edges], dtype=np.float64)
    if len(weights) == 0:
        return weights
    wmax = weights.max()
    if wmax <= 0:
        return np.full(len(weights), g_min)
    return g_min + (weights / wmax) * (g_max - g_min)


def node_colors(graph: DynamicGraph) -> np.ndarray:
    """(n, 3) RGB per node from the fixed categorical palette."""
    return np.array(
        [PALETTE[n.group % len(PALETTE)] for n in graph.nodes], dtype=np.float64
    ).reshape(-1, 3)
