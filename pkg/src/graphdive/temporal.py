"""Time-cursor scrubbing with smooth fades, plus the attribute-filter and
two-network comparison modes that reuse the same frame machinery.

Node and edge positions never change with the cursor; only opacities
do, which keeps time steps directly comparable.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

DEADZONE = 0.3
STEP_RATE = 2.0        # scrub steps per second
DEFAULT_DURATION = 0.5  # fade seconds
ATTRIBUTE_BINS = 10


class CursorMode(enum.Enum):
    TIME_FRAMES = "time_frames"
    ATTRIBUTE_FILTER = "attribute_filter"
    COMPARISON = "comparison"


@dataclass
class Transition:
    from_index: int
    to_index: int
    progress: float  # in [0, 1]


@dataclass
class TimeCursor:
    frame_count: int
    mode: CursorMode = CursorMode.TIME_FRAMES
    current: int = 0
    transition: Optional[Transition] = None
    duration: float = DEFAULT_DURATION
    cooldown: float = 0.0  # rate-limit timer, internal

    def effective_index(self) -> int:
        """The frame being approached (or shown, when idle)."""
        return self.transition.to_index if self.transition else self.current


def scrub(cursor: TimeCursor, axis_x: float, modifier_held: bool, dt: float) -> TimeCursor:
    """Step to an adjacent frame on strong horizontal input.

    Only acts while the modifier is held and |axis| clears the deadzone;
    steps are rate-limited so long presses advance one frame at a time,
    and the cursor clamps at the range ends. Stepping during an active
    transition retargets from that transition's destination.
    """
    cursor.cooldown = max(0.0, cursor.cooldown - dt)
    if not modifier_held or abs(axis_x) <= DEADZONE:
        return cursor
    if cursor.cooldown > 0.0:
        return cursor
    base = cursor.effective_index()
    step = 1 if axis_x > 0 else -1
    to = min(max(base + step, 0), cursor.frame_count - 1)
    if to == base:
        return cursor
    cursor.current = base
    cursor.transition = Transition(from_index=base, to_index=to, progress=0.0)
    cursor.cooldown = 1.0 / STEP_RATE
    return cursor


def advance_transition(cursor: TimeCursor, dt: float) -> TimeCursor:
    """Advance fade progress; at 1 the transition clears and current lands."""
    t = cursor.transition
    if t is None:
        return cursor
    t.progress = min(1.0, t.progress + (dt / cursor.duration if cursor.duration > 0 else 1.0))
    if t.progress >= 1.0:
        cursor.current = t.to_index
        cursor.transition = None
    return cursor


def element_opacity(cursor: TimeCursor, present_from: bool, present_to: bool) -> float:
    """Linear fade opacity for one element.

    Without a transition, pass the current-frame presence for both
    flags; the formula then degenerates to 1-or-0 by presence.
    """
    p = cursor.transition.progress if cursor.transition else 1.0
    if present_from and present_to:
        return 1.0
    if present_to:
        return p
    if present_from:
        return 1.0 - p
    return 0.0


def opacity_array(cursor: TimeCursor, present_from: np.ndarray, present_to: np.ndarray) -> np.ndarray:
    """Vectorized element_opacity over presence masks."""
    p = cursor.transition.progress if cursor.transition else 1.0
    pf = present_from.astype(np.float64)
    pt = present_to.astype(np.float64)
    return pf * pt + pt * (1.0 - pf) * p + pf * (1.0 - pt) * (1.0 - p)


def fade_endpoints(cursor: TimeCursor) -> tuple[int, int]:
    """(from, to) frame indices the current opacities interpolate between."""
    if cursor.transition:
        return cursor.transition.from_index, cursor.transition.to_index
    return cursor.current, cursor.current


def time_bar_payload(cursor: TimeCursor) -> dict:
    """Payload for the time bar drawn on top of the laser pointer."""
    return {
        "frame_count": cursor.frame_count,
        "current": cursor.current,
        "progress": cursor.transition.progress if cursor.transition else 0.0,
        "target": cursor.effective_index(),
    }


def bin_by_attribute(values: np.ndarray, bins: int = ATTRIBUTE_BINS) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width binning of a numeric attribute into discrete ranges.

    Returns per-element bin indices in [0, bins) and the bin edges
    (length bins + 1). Degenerate (constant) attributes land in bin 0.
    """
    values = np.asarray(values, dtype=np.float64)
    lo, hi = float(values.min()), float(values.max())
    edges = np.linspace(lo, hi, bins + 1)
    if hi == lo:
        return np.zeros(len(values), dtype=np.int64), edges
    idx = np.minimum(((values - lo) / (hi - lo) * bins).astype(np.int64), bins - 1)
    return idx, edges


def attribute_cursor(bins: int = ATTRIBUTE_BINS) -> TimeCursor:
    """Cursor sliding through discrete attribute ranges instead of time."""
    return TimeCursor(frame_count=bins, mode=CursorMode.ATTRIBUTE_FILTER)


def comparison_cursor() -> TimeCursor:
    """Two-frame cursor for switching between two related element sets."""
    return TimeCursor(frame_count=2, mode=CursorMode.COMPARISON)
