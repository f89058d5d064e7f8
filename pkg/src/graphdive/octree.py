"""Octree spatial partition for Barnes-Hut many-body approximation.

The tree is stored as flat arrays (struct-of-arrays) so force traversal
can run batched over numpy index vectors instead of per-node recursion.
Internal cells carry the aggregate strength and the strength-weighted
center of mass of their subtree; leaves hold node indices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Octree:
    center: np.ndarray       # (C, 3) cell cube centers
    half: np.ndarray         # (C,) cube half-widths
    com: np.ndarray          # (C, 3) strength-weighted centers of mass
    strength: np.ndarray     # (C,) aggregate strengths
    count: np.ndarray        # (C,) nodes in subtree
    is_leaf: np.ndarray      # (C,) bool
    child_ptr: np.ndarray    # (C,) offset into child_index
    child_count: np.ndarray  # (C,)
    child_index: np.ndarray  # flat child cell indices
    leaf_ptr: np.ndarray     # (C,) offset into members
    leaf_count: np.ndarray   # (C,)
    members: np.ndarray      # permutation of node indices, grouped by leaf

    @property
    def cell_count(self) -> int:
        return len(self.half)


# Child cube center offsets in units of half/2, indexed by octant code.
_OFFSETS = np.array(
    [[dx, dy, dz] for dz in (-1, 1) for dy in (-1, 1) for dx in (-1, 1)],
    dtype=np.float64,
)


def build_octree(
    positions: np.ndarray,
    strengths: np.ndarray,
    leaf_capacity: int = 8,
    max_depth: int = 48,
) -> Octree:
    """Build the octree over current positions.

    Cells with at most leaf_capacity nodes become leaves; coincident
    points that cannot be separated stop subdividing at max_depth.
    """
    n = len(positions)
    if n == 0:
        raise ValueError("cannot build an octree over zero nodes")
    lo = positions.min(axis=0)
    hi = positions.max(axis=0)
    root_center = (lo + hi) / 2.0
    root_half = max(float((hi - lo).max()) / 2.0, 1e-9) * (1.0 + 1e-12)

    centers: list[np.ndarray] = []
    halves: list[float] = []
    coms: list[np.ndarray] = []
    strs: list[float] = []
    counts: list[int] = []
    leaf_flags: list[bool] = []
    child_ptrs: list[int] = []
    child_cnts: list[int] = []
    child_idx: list[int] = []
    leaf_ptrs: list[int] = []
    leaf_cnts: list[int] = []
    members: list[int] = []

    abs_s = np.abs(strengths)

    def rec(idx: np.ndarray, center: np.ndarray, half: float, depth: int) -> int:
        ci = len(halves)
        centers.append(center)
        halves.append(half)
        w = abs_s[idx]
        wsum = w.sum()
        if wsum > 0:
            coms.append((positions[idx] * w[:, None]).sum(axis=0) / wsum)
        else:
            coms.append(positions[idx].mean(axis=0))
        strs.append(float(strengths[idx].sum()))
        counts.append(len(idx))
        leaf_flags.append(False)
        child_ptrs.append(0)
        child_cnts.append(0)
        leaf_ptrs.append(0)
        leaf_cnts.append(0)

        if len(idx) <= leaf_capacity or depth >= max_depth:
            leaf_flags[ci] = True
            leaf_ptrs[ci] = len(members)
            leaf_cnts[ci] = len(idx)
            members.extend(idx.tolist())
            return ci

        pts = positions[idx]
        code = (
            (pts[:, 0] > center[0]).astype(np.int8)
            + 2 * (pts[:, 1] > center[1]).astype(np.int8)
            + 4 * (pts[:, 2] > center[2]).astype(np.int8)
        )
        kids: list[int] = []
        for octant in range(8):
            sub = idx[code == octant]
            if len(sub) == 0:
                continue
            sub_center = center + _OFFSETS[octant] * (half / 2.0)
            kids.append(rec(sub, sub_center, half / 2.0, depth + 1))
        child_ptrs[ci] = len(child_idx)
        child_cnts[ci] = len(kids)
        child_idx.extend(kids)
        return ci

    rec(np.arange(n, dtype=np.int64), root_center, root_half, 0)

    return Octree(
        center=np.array(centers),
        half=np.array(halves),
        com=np.array(coms),
        strength=np.array(strs),
        count=np.array(counts, dtype=np.int64),
        is_leaf=np.array(leaf_flags, dtype=bool),
        child_ptr=np.array(child_ptrs, dtype=np.int64),
        child_count=np.array(child_cnts, dtype=np.int64),
        child_index=np.array(child_idx, dtype=np.int64),
        leaf_ptr=np.array(leaf_ptrs, dtype=np.int64),
        leaf_count=np.array(leaf_cnts, dtype=np.int64),
        members=np.array(members, dtype=np.int64),
    )
