"""Laser-pointer picking: ray casts against node spheres and edge capsules,
accelerated by a median-split BVH, plus hover highlight/lowlight sets.

The BVH and the linear-scan oracle share the same batched primitive
tests and the same nearest-hit ordering (nodes beat edges at equal
distance), so their results are required to be identical. Traversal is
level-synchronous over flat arrays: every box the ray pierces is
expanded, candidate leaf primitives are tested in one vectorized pass.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import DynamicGraph, edge_girths, neighborhood, node_radii

NODE = "node"
EDGE = "edge"

# Thin edges are practically unpickable at their visual girth; rays test
# against at least this capsule radius (scene units).
MIN_EDGE_PICK_RADIUS = 0.08

_LEAF_SIZE = 4
_KIND_PRIORITY = {NODE: 0, EDGE: 1}


@dataclass(frozen=True)
class Ray:
    origin: np.ndarray
    direction: np.ndarray  # unit length


def make_ray(origin, direction) -> Ray:
    o = np.asarray(origin, dtype=np.float64)
    d = np.asarray(direction, dtype=np.float64)
    n = np.linalg.norm(d)
    if n == 0:
        raise ValueError("ray direction must be nonzero")
    return Ray(origin=o, direction=d / n)


@dataclass(frozen=True)
class PickHit:
    kind: str         # NODE or EDGE
    ident: object     # node id (str) or edge index (int)
    distance: float


@dataclass(frozen=True)
class SceneSnapshot:
    """Immutable per-frame pick geometry.

    Edge capsules run between the endpoint sphere surfaces; their pick
    radius is the girth with a minimum slack so thin tubes stay
    selectable.
    """

    node_ids: tuple[str, ...]
    positions: np.ndarray    # (n, 3)
    radii: np.ndarray        # (n,)
    seg_a: np.ndarray        # (m, 3) capsule start points
    seg_b: np.ndarray        # (m, 3) capsule end points
    pick_radii: np.ndarray   # (m,)
    girths: np.ndarray       # (m,) visual girths


def build_snapshot(
    graph: DynamicGraph,
    positions: np.ndarray,
    radii: Optional[np.ndarray] = None,
    girths: Optional[np.ndarray] = None,
    min_pick_radius: float = MIN_EDGE_PICK_RADIUS,
) -> SceneSnapshot:
    if radii is None:
        radii = node_radii(graph)
    if girths is None:
        girths = edge_girths(graph)
    positions = np.asarray(positions, dtype=np.float64)
    if graph.edge_count:
        s, t = graph.pairs[:, 0], graph.pairs[:, 1]
        delta = positions[t] - positions[s]
        dist = np.linalg.norm(delta, axis=1)
        unit = np.divide(delta, dist[:, None], out=np.zeros_like(delta), where=dist[:, None] > 0)
        # Collapse to the midpoint when the endpoint spheres overlap.
        span = dist - radii[s] - radii[t]
        ok = span > 0
        mid = (positions[s] + positions[t]) / 2.0
        seg_a = np.where(ok[:, None], positions[s] + unit * radii[s][:, None], mid)
        seg_b = np.where(ok[:, None], positions[t] - unit * radii[t][:, None], mid)
        pick_radii = np.maximum(girths, min_pick_radius)
    else:
        seg_a = np.zeros((0, 3))
        seg_b = np.zeros((0, 3))
        pick_radii = np.zeros(0)
    return SceneSnapshot(
        node_ids=tuple(n.id for n in graph.nodes),
        positions=positions,
        radii=np.asarray(radii, dtype=np.float64),
        seg_a=seg_a,
        seg_b=seg_b,
        pick_radii=pick_radii,
        girths=np.asarray(girths, dtype=np.float64),
    )


def sphere_hits(origin, direction, centers, radii) -> np.ndarray:
    """Nearest nonnegative ray parameters against spheres; inf for misses."""
    oc = origin[None, :] - centers
    b = oc @ direction
    c = np.einsum("ij,ij->i", oc, oc) - radii * radii
    disc = b * b - c
    with np.errstate(invalid="ignore"):
        sq = np.sqrt(np.maximum(disc, 0.0))
    t1 = -b - sq
    t2 = -b + sq
    t = np.where(t1 >= 0.0, t1, np.where(t2 >= 0.0, t2, np.inf))
    return np.where(disc >= 0.0, t, np.inf)


def capsule_hits(origin, direction, seg_a, seg_b, radii) -> np.ndarray:
    """Nearest nonnegative ray parameters against capsules; inf for misses.

    Capsule sides are infinite-cylinder hits clipped to the segment;
    spherical caps close both ends (and cover degenerate segments).
    """
    axis = seg_b - seg_a
    length = np.linalg.norm(axis, axis=1)
    safe = np.maximum(length, 1e-300)
    u = axis / safe[:, None]
    m = origin[None, :] - seg_a
    d_par = u @ direction
    m_par = np.einsum("ij,ij->i", m, u)
    pd = direction[None, :] - d_par[:, None] * u
    pm = m - m_par[:, None] * u
    aa = np.einsum("ij,ij->i", pd, pd)
    bb = np.einsum("ij,ij->i", pm, pd)
    cc = np.einsum("ij,ij->i", pm, pm) - radii * radii
    disc = bb * bb - aa * cc
    usable = (aa > 1e-16) & (disc >= 0.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        sq = np.sqrt(np.maximum(disc, 0.0))
        t_lo = (-bb - sq) / aa
        t_hi = (-bb + sq) / aa
    best = np.full(len(seg_a), np.inf)
    for t_side in (t_lo, t_hi):
        s = m_par + t_side * d_par
        valid = usable & (t_side >= 0.0) & (s >= 0.0) & (s <= length)
        best = np.minimum(best, np.where(valid, t_side, np.inf))
    best = np.minimum(best, sphere_hits(origin, direction, seg_a, radii))
    best = np.minimum(best, sphere_hits(origin, direction, seg_b, radii))
    return best


def ray_sphere_t(origin, direction, center, radius) -> float:
    """Scalar convenience wrapper over sphere_hits."""
    return float(sphere_hits(np.asarray(origin, dtype=np.float64),
                             np.asarray(direction, dtype=np.float64),
                             np.asarray(center, dtype=np.float64)[None, :],
                             np.array([radius], dtype=np.float64))[0])


def ray_capsule_t(origin, direction, a, b, radius) -> float:
    """Scalar convenience wrapper over capsule_hits."""
    return float(capsule_hits(np.asarray(origin, dtype=np.float64),
                              np.asarray(direction, dtype=np.float64),
                              np.asarray(a, dtype=np.float64)[None, :],
                              np.asarray(b, dtype=np.float64)[None, :],
                              np.array([radius], dtype=np.float64))[0])


@dataclass
class PickIndex:
    """Median-split BVH over node spheres then edge capsules, as flat arrays.

    Primitives 0..n-1 are node spheres; n..n+m-1 are edge capsules.
    Internal BVH nodes have prim_count 0.
    """

    snapshot: SceneSnapshot
    box_lo: np.ndarray      # (K, 3)
    box_hi: np.ndarray      # (K, 3)
    left: np.ndarray        # (K,)
    right: np.ndarray       # (K,)
    start: np.ndarray       # (K,) offset into order
    prim_count: np.ndarray  # (K,) 0 for internal nodes
    order: np.ndarray       # primitive indices grouped by leaf

    @property
    def empty(self) -> bool:
        return len(self.order) == 0


def build_pick_index(snapshot: SceneSnapshot) -> PickIndex:
    """Bounding-volume hierarchy with median splits on the largest axis."""
    n = len(snapshot.positions)
    m = len(snapshot.seg_a)
    total = n + m
    if total == 0:
        z3 = np.zeros((0, 3))
        zi = np.zeros(0, dtype=np.int64)
        return PickIndex(snapshot, z3, z3, zi, zi, zi, zi, zi)

    r = snapshot.radii[:, None]
    lo = np.concatenate([
        snapshot.positions - r,
        np.minimum(snapshot.seg_a, snapshot.seg_b) - snapshot.pick_radii[:, None],
    ])
    hi = np.concatenate([
        snapshot.positions + r,
        np.maximum(snapshot.seg_a, snapshot.seg_b) + snapshot.pick_radii[:, None],
    ])
    centroid = (lo + hi) / 2.0

    box_lo: list[np.ndarray] = []
    box_hi: list[np.ndarray] = []
    left: list[int] = []
    right: list[int] = []
    start: list[int] = []
    prim_count: list[int] = []
    order = np.arange(total, dtype=np.int64)

    def rec(s: int, count: int) -> int:
        idx = order[s:s + count]
        ni = len(box_lo)
        box_lo.append(lo[idx].min(axis=0))
        box_hi.append(hi[idx].max(axis=0))
        left.append(-1)
        right.append(-1)
        start.append(s)
        prim_count.append(count)
        if count <= _LEAF_SIZE:
            return ni
        axis = int(np.argmax(box_hi[ni] - box_lo[ni]))
        half = count // 2
        part = np.argpartition(centroid[idx, axis], half)
        order[s:s + count] = idx[part]
        prim_count[ni] = 0
        left[ni] = rec(s, half)
        right[ni] = rec(s + half, count - half)
        return ni

    rec(0, total)
    return PickIndex(
        snapshot=snapshot,
        box_lo=np.array(box_lo),
        box_hi=np.array(box_hi),
        left=np.array(left, dtype=np.int64),
        right=np.array(right, dtype=np.int64),
        start=np.array(start, dtype=np.int64),
        prim_count=np.array(prim_count, dtype=np.int64),
        order=order,
    )


def _segmented_take(order, starts, counts):
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    base = np.repeat(np.cumsum(counts) - counts, counts)
    offsets = np.arange(total, dtype=np.int64) - base
    return order[np.repeat(starts, counts) + offsets]


def _pierced_leaves(index: PickIndex, origin, direction) -> tuple[np.ndarray, np.ndarray]:
    """Leaf boxes the ray pierces, with their slab entry parameters."""
    with np.errstate(divide="ignore"):
        inv = 1.0 / direction
    frontier = np.array([0], dtype=np.int64)
    leaves: list[np.ndarray] = []
    entries: list[np.ndarray] = []
    while frontier.size:
        lo = index.box_lo[frontier]
        hi = index.box_hi[frontier]
        with np.errstate(invalid="ignore"):
            t1 = (lo - origin) * inv
            t2 = (hi - origin) * inv
        # 0 * inf on a boundary-touching axis means "inside the slab".
        t1 = np.where(np.isnan(t1), -np.inf, t1)
        t2 = np.where(np.isnan(t2), np.inf, t2)
        tmin = np.minimum(t1, t2).max(axis=1)
        tmax = np.maximum(t1, t2).min(axis=1)
        entry = np.maximum(tmin, 0.0)
        hit = tmax >= entry
        pierced = frontier[hit]
        is_leaf = index.prim_count[pierced] > 0
        if is_leaf.any():
            leaves.append(pierced[is_leaf])
            entries.append(entry[hit][is_leaf])
        inner = pierced[~is_leaf]
        frontier = np.concatenate([index.left[inner], index.right[inner]])
    if not leaves:
        z = np.zeros(0, dtype=np.int64)
        return z, np.zeros(0)
    return np.concatenate(leaves), np.concatenate(entries)


def _visibility_masks(snapshot, visible_nodes, visible_edges):
    if visible_nodes is None:
        nm = np.ones(len(snapshot.positions), dtype=bool)
    else:
        nm = np.array([nid in visible_nodes for nid in snapshot.node_ids], dtype=bool)
    em = np.zeros(len(snapshot.seg_a), dtype=bool)
    if visible_edges is None:
        em[:] = True
    else:
        for ei in visible_edges:
            em[ei] = True
    return nm, em


def _best_key(node_idx, node_t, edge_idx, edge_t) -> Optional[tuple]:
    """Nearest-hit ordering key: distance, then nodes over edges, then index."""
    t = np.concatenate([node_t, edge_t])
    finite = np.isfinite(t)
    if not finite.any():
        return None
    pri = np.concatenate([np.zeros(len(node_t), np.int8), np.ones(len(edge_t), np.int8)])
    ref = np.concatenate([node_idx, edge_idx])
    k = np.flatnonzero(finite)
    k = k[np.lexsort((ref[k], pri[k], t[k]))[0]]
    return float(t[k]), int(pri[k]), int(ref[k])


def _hit_from_key(snapshot, key) -> Optional[PickHit]:
    if key is None:
        return None
    t, pri, ref = key
    if pri == 0:
        return PickHit(kind=NODE, ident=snapshot.node_ids[ref], distance=t)
    return PickHit(kind=EDGE, ident=ref, distance=t)


_LEAF_CHUNK = 48


def ray_pick(
    index: PickIndex,
    ray: Ray,
    visible_nodes: Optional[set] = None,
    visible_edges: Optional[set] = None,
    max_distance: float = math.inf,
) -> Optional[PickHit]:
    """Nearest visible entity along the ray, within the pointer's reach.

    Node hits beat edge hits at equal distance; faded-out (invisible)
    elements are not pickable. None means a miss. Pierced leaves are
    processed in slab-entry order so leaves beyond the best hit so far
    (or beyond max_distance) are never opened; a leaf's entry never
    exceeds its primitives' hit distances, so pruning cannot change the
    result.
    """
    if index.empty:
        return None
    snap = index.snapshot
    leaves, entry = _pierced_leaves(index, ray.origin, ray.direction)
    if leaves.size == 0:
        return None
    order = np.argsort(entry, kind="stable")
    leaves, entry = leaves[order], entry[order]
    n = len(snap.positions)
    nm, em = _visibility_masks(snap, visible_nodes, visible_edges)
    best: Optional[tuple] = None
    pos = 0
    limit = max_distance
    while pos < len(leaves):
        if entry[pos] > limit:
            break
        chunk = leaves[pos:pos + _LEAF_CHUNK]
        pos += _LEAF_CHUNK
        cand = _segmented_take(index.order, index.start[chunk], index.prim_count[chunk])
        node_idx = cand[cand < n]
        node_idx = node_idx[nm[node_idx]]
        edge_idx = cand[cand >= n] - n
        edge_idx = edge_idx[em[edge_idx]]
        node_t = sphere_hits(
            ray.origin, ray.direction, snap.positions[node_idx], snap.radii[node_idx]
        )
        edge_t = capsule_hits(
            ray.origin, ray.direction, snap.seg_a[edge_idx], snap.seg_b[edge_idx],
            snap.pick_radii[edge_idx],
        )
        key = _best_key(node_idx, node_t, edge_idx, edge_t)
        if key is not None and key[0] <= max_distance and (best is None or key < best):
            best = key
            limit = min(limit, best[0])
    return _hit_from_key(snap, best)


def ray_pick_linear(
    snapshot: SceneSnapshot,
    ray: Ray,
    visible_nodes: Optional[set] = None,
    visible_edges: Optional[set] = None,
    max_distance: float = math.inf,
) -> Optional[PickHit]:
    """Exhaustive scan over every primitive; the oracle for the BVH path."""
    nm, em = _visibility_masks(snapshot, visible_nodes, visible_edges)
    node_idx = np.flatnonzero(nm)
    edge_idx = np.flatnonzero(em)
    node_t = sphere_hits(
        ray.origin, ray.direction, snapshot.positions[node_idx], snapshot.radii[node_idx]
    )
    edge_t = capsule_hits(
        ray.origin, ray.direction, snapshot.seg_a[edge_idx], snapshot.seg_b[edge_idx],
        snapshot.pick_radii[edge_idx],
    )
    key = _best_key(node_idx, node_t, edge_idx, edge_t)
    if key is not None and key[0] > max_distance:
        key = None
    return _hit_from_key(snapshot, key)


@dataclass(frozen=True)
class HighlightState:
    """Hover feedback partition: hovered entity, highlight, lowlight.

    Every visible element lands in exactly one of the three buckets when
    a hover is active; the hovered entity is not duplicated inside the
    highlight sets.
    """

    hovered: Optional[tuple[str, object]]  # (kind, ident)
    highlight_nodes: frozenset[str] = frozenset()
    highlight_edges: frozenset[int] = frozenset()
    lowlight_nodes: frozenset[str] = frozenset()
    lowlight_edges: frozenset[int] = frozenset()

    @property
    def active(self) -> bool:
        return self.hovered is not None

    def emphasized_nodes(self) -> frozenset[str]:
        if self.hovered and self.hovered[0] == NODE:
            return self.highlight_nodes | {self.hovered[1]}
        return self.highlight_nodes

    def emphasized_edges(self) -> frozenset[int]:
        if self.hovered and self.hovered[0] == EDGE:
            return self.highlight_edges | {self.hovered[1]}
        return self.highlight_edges


EMPTY_HIGHLIGHT = HighlightState(hovered=None)


def hover_update(
    graph: DynamicGraph,
    hit: Optional[PickHit],
    visible_nodes: Optional[set] = None,
    visible_edges: Optional[set] = None,
) -> HighlightState:
    """Highlight the hovered entity's direct neighborhood, lowlight the rest."""
    if hit is None:
        return EMPTY_HIGHLIGHT
    all_nodes = set(graph.index_of) if visible_nodes is None else set(visible_nodes)
    all_edges = set(range(graph.edge_count)) if visible_edges is None else set(visible_edges)
    if hit.kind == NODE:
        if hit.ident not in graph.index_of:
            raise KeyError(f"unknown node id {hit.ident!r}")
        hl_nodes, hl_edges = neighborhood(graph, hit.ident)
        hl_nodes &= all_nodes
        hl_edges &= all_edges
        hovered = (NODE, hit.ident)
        low_nodes = all_nodes - hl_nodes - {hit.ident}
        low_edges = all_edges - hl_edges
    else:
        ei = int(hit.ident)
        if not 0 <= ei < graph.edge_count:
            raise KeyError(f"unknown edge index {ei}")
        e = graph.edges[ei]
        hl_nodes = {e.source, e.target} & all_nodes
        hl_edges = set()
        hovered = (EDGE, ei)
        low_nodes = all_nodes - hl_nodes
        low_edges = all_edges - {ei}
    return HighlightState(
        hovered=hovered,
        highlight_nodes=frozenset(hl_nodes),
        highlight_edges=frozenset(hl_edges),
        lowlight_nodes=frozenset(low_nodes),
        lowlight_edges=frozenset(low_edges),
    )
