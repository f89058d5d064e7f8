"""3D force-directed layout: many-body repulsion (exact and Barnes-Hut),
link springs, centering, and the annealed integration loop.

The layout runs once over the union of all frames; positions are then
held static across time steps. The force model and its defaults follow
the widely used web force-simulation conventions so layouts stay
visually comparable to typical node-link renderings.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import DynamicGraph, node_radii
from .octree import Octree, build_octree

INITIAL_RADIUS = 10.0
_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))
_YAW_ANGLE = np.pi * 20.0 / (9.0 + np.sqrt(221.0))


class LayoutDivergenceError(RuntimeError):
    """Raised when integration produces a non-finite position."""


@dataclass
class LayoutParams:
    """Force-model constants.

    repulsion_strength is negative for repulsion (force on i from j is
    strength * alpha * (x_j - x_i) / d^2, so a negative coefficient
    pushes nodes apart). distance_min damps the singularity for
    near-coincident pairs by clamping d^2 to sqrt(distance_min^2 * d^2).
    """

    repulsion_strength: float = -30.0
    link_distance: float = 30.0
    link_stiffness: Optional[float] = None  # None: 1/min(deg(s), deg(t))
    velocity_decay: float = 0.4
    alpha_decay: float = 1.0 - 0.001 ** (1.0 / 300.0)
    alpha_min: float = 0.001
    theta: float = 0.9
    distance_min: float = 1.0
    leaf_capacity: int = 8

    def __post_init__(self) -> None:
        if self.theta <= 0 and self.theta != 0.0:
            raise ValueError("theta must be nonnegative")
        for name in ("velocity_decay", "alpha_decay"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must be in (0, 1), got {v}")


@dataclass
class LayoutState:
    positions: np.ndarray   # (n, 3) scene units
    velocities: np.ndarray  # (n, 3) units per tick
    alpha: float
    tick_count: int
    params: LayoutParams
    seed: int = 0


def init_layout(graph: DynamicGraph, seed: int, params: Optional[LayoutParams] = None) -> LayoutState:
    """Deterministic initial placement on a 3D phyllotaxis spiral.

    Node 0 sits at the origin; radii grow with cbrt(index) so all
    positions are pairwise distinct. The seed only offsets the spiral
    phase angles.
    """
    n = graph.node_count
    if n == 0:
        raise ValueError("cannot lay out an empty graph")
    rng = np.random.default_rng(seed)
    phase_roll, phase_yaw = rng.uniform(0.0, 2.0 * np.pi, size=2)
    i = np.arange(n, dtype=np.float64)
    radius = INITIAL_RADIUS * np.cbrt(i)
    roll = i * _GOLDEN_ANGLE + phase_roll
    yaw = i * _YAW_ANGLE + phase_yaw
    positions = np.column_stack([
        radius * np.sin(roll) * np.cos(yaw),
        radius * np.cos(roll),
        radius * np.sin(roll) * np.sin(yaw),
    ])
    positions[0] = 0.0
    return LayoutState(
        positions=positions,
        velocities=np.zeros((n, 3)),
        alpha=1.0,
        tick_count=0,
        params=params if params is not None else LayoutParams(),
        seed=seed,
    )


def _pair_jiggle(i: int, j: int, seed: int) -> np.ndarray:
    """Deterministic unit displacement for a coincident node pair."""
    a, b = (i, j) if i < j else (j, i)
    rng = np.random.default_rng(abs(hash((a, b, seed))))
    v = rng.normal(size=3)
    return v / np.linalg.norm(v)


def _segmented_arange(counts: np.ndarray) -> np.ndarray:
    """[2, 3] -> [0, 1, 0, 1, 2]."""
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=np.int64)
    starts = np.repeat(np.cumsum(counts) - counts, counts)
    return np.arange(total, dtype=np.int64) - starts


def _scatter_add(out: np.ndarray, idx: np.ndarray, vals: np.ndarray) -> None:
    n = len(out)
    for k in range(3):
        out[:, k] += np.bincount(idx, weights=vals[:, k], minlength=n)


def _clamped_d2(d2: np.ndarray, distance_min: float) -> np.ndarray:
    dmin2 = distance_min * distance_min
    near = d2 < dmin2
    if np.any(near):
        d2 = d2.copy()
        d2[near] = np.sqrt(dmin2 * d2[near])
    return d2


def repulsion_brute(
    positions: np.ndarray, alpha: float, params: LayoutParams, seed: int = 0
) -> np.ndarray:
    """Exact O(n^2) many-body force; the oracle for the Barnes-Hut path."""
    n = len(positions)
    diff = positions[None, :, :] - positions[:, None, :]  # diff[i, j] = x_j - x_i
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    ii, jj = np.nonzero((d2 == 0.0) & ~np.eye(n, dtype=bool))
    for i, j in zip(ii.tolist(), jj.tolist()):
        v = _pair_jiggle(i, j, seed) * 1e-6
        diff[i, j] = v if i < j else -v
        d2[i, j] = 1e-12
    np.fill_diagonal(d2, np.inf)
    d2 = _clamped_d2(d2, params.distance_min)
    coef = params.repulsion_strength * alpha / d2
    np.fill_diagonal(coef, 0.0)
    return np.einsum("ij,ijk->ik", coef, diff)


def repulsion_bh(
    positions: np.ndarray,
    alpha: float,
    params: LayoutParams,
    tree: Optional[Octree] = None,
    seed: int = 0,
    with_stats: bool = False,
):
    """Barnes-Hut many-body force.

    A cell's aggregate acts for a node when cell_width / distance-to-com
    < theta; otherwise the cell is opened. Leaves are summed exactly,
    excluding self-interaction. with_stats additionally returns the
    number of point/cell interactions evaluated.
    """
    n = len(positions)
    if tree is None:
        tree = build_octree(
            positions,
            np.full(n, params.repulsion_strength),
            leaf_capacity=params.leaf_capacity,
        )
    forces = np.zeros((n, 3))
    interactions = 0
    theta2 = params.theta * params.theta
    q = np.arange(n, dtype=np.int64)
    c = np.zeros(n, dtype=np.int64)
    while q.size:
        delta = tree.com[c] - positions[q]
        d2 = np.einsum("ij,ij->i", delta, delta)
        width = 2.0 * tree.half[c]
        leaf = tree.is_leaf[c]
        far = width * width < theta2 * d2
        agg = ~leaf & far
        if np.any(agg):
            d2a = _clamped_d2(d2[agg], params.distance_min)
            coef = tree.strength[c[agg]] * alpha / d2a
            _scatter_add(forces, q[agg], delta[agg] * coef[:, None])
            interactions += int(agg.sum())
        if np.any(leaf):
            ql, cl = q[leaf], c[leaf]
            cnt = tree.leaf_count[cl]
            qq = np.repeat(ql, cnt)
            mem = tree.members[np.repeat(tree.leaf_ptr[cl], cnt) + _segmented_arange(cnt)]
            keep = mem != qq
            qq, mem = qq[keep], mem[keep]
            if qq.size:
                dd = positions[mem] - positions[qq]
                dd2 = np.einsum("ij,ij->i", dd, dd)
                zero = np.flatnonzero(dd2 == 0.0)
                for k in zero.tolist():
                    i, j = int(qq[k]), int(mem[k])
                    v = _pair_jiggle(i, j, seed) * 1e-6
                    dd[k] = v if i < j else -v
                    dd2[k] = 1e-12
                dd2 = _clamped_d2(dd2, params.distance_min)
                coef = params.repulsion_strength * alpha / dd2
                _scatter_add(forces, qq, dd * coef[:, None])
                interactions += int(qq.size)
        rec = ~leaf & ~far
        if np.any(rec):
            cr, qr = c[rec], q[rec]
            cnt = tree.child_count[cr]
            q = np.repeat(qr, cnt)
            c = tree.child_index[np.repeat(tree.child_ptr[cr], cnt) + _segmented_arange(cnt)]
        else:
            break
    if with_stats:
        return forces, interactions
    return forces


def link_stiffness(graph: DynamicGraph, params: LayoutParams) -> np.ndarray:
    """Per-link spring stiffness: 1/min(deg(source), deg(target))."""
    if params.link_stiffness is not None:
        return np.full(graph.edge_count, params.link_stiffness)
    if graph.edge_count == 0:
        return np.zeros(0)
    deg = graph.degrees.astype(np.float64)
    s, t = graph.pairs[:, 0], graph.pairs[:, 1]
    return 1.0 / np.minimum(deg[s], deg[t])


def spring_forces(
    positions: np.ndarray, graph: DynamicGraph, alpha: float, params: LayoutParams, seed: int = 0
) -> np.ndarray:
    """Link springs toward the rest length.

    The correction is split between endpoints biased by degree, so
    well-connected nodes move less.
    """
    forces = np.zeros_like(positions)
    if graph.edge_count == 0:
        return forces
    s, t = graph.pairs[:, 0], graph.pairs[:, 1]
    delta = positions[t] - positions[s]
    dist = np.linalg.norm(delta, axis=1)
    zero = np.flatnonzero(dist == 0.0)
    for k in zero.tolist():
        i, j = int(s[k]), int(t[k])
        if i == j:
            continue
        v = _pair_jiggle(i, j, seed) * 1e-6
        delta[k] = v if i < j else -v
        dist[k] = 1e-6
    dist[dist == 0.0] = 1.0  # self-loops exert no spring force
    stiff = link_stiffness(graph, params)
    corr = delta * ((dist - params.link_distance) / dist * alpha * stiff)[:, None]
    deg = graph.degrees.astype(np.float64)
    bias = deg[s] / (deg[s] + deg[t])
    _scatter_add(forces, t, -corr * bias[:, None])
    _scatter_add(forces, s, corr * (1.0 - bias)[:, None])
    return forces


def centering_term(positions: np.ndarray) -> np.ndarray:
    """Uniform translation moving the position centroid onto the origin."""
    return np.broadcast_to(-positions.mean(axis=0), positions.shape)


def compute_forces_brute(state: LayoutState, graph: DynamicGraph) -> np.ndarray:
    """Exact per-node force sum: repulsion + link springs + centering."""
    rep = repulsion_brute(state.positions, state.alpha, state.params, state.seed)
    spr = spring_forces(state.positions, graph, state.alpha, state.params, state.seed)
    return rep + spr + centering_term(state.positions)


def compute_forces_bh(
    state: LayoutState, graph: DynamicGraph, tree: Optional[Octree] = None
) -> np.ndarray:
    """Barnes-Hut approximate repulsion; links and centering stay exact."""
    rep = repulsion_bh(state.positions, state.alpha, state.params, tree, state.seed)
    spr = spring_forces(state.positions, graph, state.alpha, state.params, state.seed)
    return rep + spr + centering_term(state.positions)


def tick(state: LayoutState, graph: DynamicGraph) -> LayoutState:
    """Advance the simulation one step (semi-implicit, fixed timestep).

    alpha anneals geometrically; forces integrate into velocities, which
    decay and then advance positions; positions are recentered so the
    centroid stays pinned to the origin.
    """
    p = state.params
    state.alpha += (0.0 - state.alpha) * p.alpha_decay
    forces = compute_forces_bh(state, graph)
    state.velocities += forces
    state.velocities *= 1.0 - p.velocity_decay
    state.positions += state.velocities
    state.positions -= state.positions.mean(axis=0)
    if not np.all(np.isfinite(state.positions)):
        bad = int(np.flatnonzero(~np.isfinite(state.positions).all(axis=1))[0])
        raise LayoutDivergenceError(
            f"non-finite position for node {graph.nodes[bad].id!r} at tick {state.tick_count + 1}"
        )
    state.tick_count += 1
    return state


def run_to_convergence(state: LayoutState, graph: DynamicGraph) -> np.ndarray:
    """Tick until alpha drops below alpha_min; returns final positions."""
    while state.alpha >= state.params.alpha_min:
        tick(state, graph)
    return state.positions.copy()


def bounding_sphere(positions: np.ndarray, radii: np.ndarray) -> tuple[np.ndarray, float]:
    """Sphere containing all node spheres, centered on the centroid."""
    if len(positions) == 0:
        raise ValueError("bounding sphere of empty input")
    center = positions.mean(axis=0)
    radius = float((np.linalg.norm(positions - center, axis=1) + radii).max())
    return center, radius


def layout_graph(
    graph: DynamicGraph, seed: int = 42, params: Optional[LayoutParams] = None
) -> np.ndarray:
    """Convenience wrapper: init, converge, return positions."""
    state = init_layout(graph, seed, params)
    return run_to_convergence(state, graph)


def graph_bounding_sphere(graph: DynamicGraph, positions: np.ndarray) -> tuple[np.ndarray, float]:
    return bounding_sphere(positions, node_radii(graph))
