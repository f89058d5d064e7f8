"""Small quaternion toolkit for rig orientations and edge-tube transforms.

Quaternions are float64 arrays in (x, y, z, w) order. The local view
direction is -z; local right is +x; world up is +y.
"""
from __future__ import annotations

import numpy as np

VIEW_FORWARD = np.array([0.0, 0.0, -1.0])
WORLD_UP = np.array([0.0, 1.0, 0.0])


def identity() -> np.ndarray:
    return np.array([0.0, 0.0, 0.0, 1.0])


def normalize(q: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(q)
    if n == 0:
        raise ValueError("cannot normalize a zero quaternion")
    return q / n


def multiply(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Hamilton product a*b: rotating by the result applies b first, then a."""
    ax, ay, az, aw = a
    bx, by, bz, bw = b
    return np.array([
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
        aw * bw - ax * bx - ay * by - az * bz,
    ])


def conjugate(q: np.ndarray) -> np.ndarray:
    return np.array([-q[0], -q[1], -q[2], q[3]])


def from_axis_angle(axis: np.ndarray, angle: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=np.float64)
    n = np.linalg.norm(axis)
    if n == 0:
        raise ValueError("rotation axis must be nonzero")
    half = 0.5 * angle
    return np.concatenate([axis / n * np.sin(half), [np.cos(half)]])


def rotate(q: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Rotate a vector (3,) or stacked vectors (n, 3) by q."""
    u = q[:3]
    w = q[3]
    v = np.asarray(v, dtype=np.float64)
    t = 2.0 * np.cross(u, v)
    return v + w * t + np.cross(u, t)


def to_matrix(q: np.ndarray) -> np.ndarray:
    """3x3 rotation matrix equivalent of q (assumed unit)."""
    x, y, z, w = q
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


def view_vector(q: np.ndarray) -> np.ndarray:
    return rotate(q, VIEW_FORWARD)


def right_vector(q: np.ndarray) -> np.ndarray:
    return rotate(q, np.array([1.0, 0.0, 0.0]))


def yaw_facing(heading: np.ndarray) -> np.ndarray:
    """Yaw-only quaternion whose view vector equals the horizontal heading."""
    hx, _, hz = heading
    norm = np.hypot(hx, hz)
    if norm == 0:
        raise ValueError("heading has no horizontal component")
    yaw = np.arctan2(-hx / norm, -hz / norm)
    return from_axis_angle(WORLD_UP, yaw)


def is_unit(q: np.ndarray, tol: float = 1e-9) -> bool:
    return abs(float(np.linalg.norm(q)) - 1.0) <= tol


def align_z_to(directions: np.ndarray) -> np.ndarray:
    """Quaternions mapping +z onto each unit direction; directions is (n, 3).

    The antiparallel case (-z) falls back to a half-turn about +x.
    """
    d = np.atleast_2d(np.asarray(directions, dtype=np.float64))
    n = len(d)
    q = np.zeros((n, 4))
    w = 1.0 + d[:, 2]                      # 1 + dot(z, d)
    q[:, 0] = -d[:, 1]                     # cross(z, d).x
    q[:, 1] = d[:, 0]                      # cross(z, d).y
    q[:, 3] = w
    flipped = w < 1e-12
    q[flipped] = (1.0, 0.0, 0.0, 0.0)
    norms = np.linalg.norm(q, axis=1, keepdims=True)
    return q / norms
