import numpy as np
import pytest

from graphdive import quaternion as quat
from graphdive.layout import LayoutParams
from graphdive.navigation import Perspective
from graphdive.session import (
    ControllerPoseEvent,
    DpadEvent,
    EngineConfig,
    HeadPoseEvent,
    IndicatorClickEvent,
    ModifierEvent,
    Session,
    TriggerEvent,
)

from conftest import make_graph

@pytest.fixture(scope="module")
def session_graph():
    return make_graph(
        [{"id": "a", "value": 2.0}, {"id": "b"}, {"id": "c", "frames": [0]}],
        [
            {"source": "a", "target": "b", "directed": True},
            {"source": "b", "target": "c"},
        ],
        frame_count=2,
    )


def fresh(graph):
    return Session(graph, EngineConfig(layout=LayoutParams(alpha_min=0.3)))


def aim_at(session, node_id):
    """Controller pose whose -z axis points at the node from outside."""
    i = session.graph.index_of[node_id]
    target = session.positions[i]
    origin = target + np.array([0.0, 0.0, 150.0])
    return ControllerPoseEvent(position=origin, orientation=quat.identity())


class TestSessionFlow:
    def test_hover_via_controller_pose(self, session_graph):
        s = fresh(session_graph)
        s.handle_event(aim_at(s, "a"))
        assert s.highlight.active
        assert s.overlays()["label"]["screen_center"]

    def test_select_confirm_teleports(self, session_graph):
        s = fresh(session_graph)
        s.handle_event(aim_at(s, "a"))
        hovered = s.highlight.hovered
        assert hovered[0] == "node"
        s.handle_event(TriggerEvent())
        assert s.nav.selected_node == hovered[1]
        s.handle_event(TriggerEvent())
        assert s.nav.perspective == Perspective.DETAIL

    def test_indicator_click_returns_to_overview(self, session_graph):
        s = fresh(session_graph)
        s.handle_event(aim_at(s, "a"))
        s.handle_event(TriggerEvent())
        s.handle_event(TriggerEvent())
        s.handle_event(IndicatorClickEvent())
        assert s.nav.perspective == Perspective.OVERVIEW

    def test_modifier_dpad_scrubs_time(self, session_graph):
        s = fresh(session_graph)
        assert s.cursor.current == 0
        s.handle_event(ModifierEvent(held=True))
        s.handle_event(DpadEvent(x=1.0, y=0.0))
        assert s.cursor.transition is not None
        assert s.overlays()["time_bar"]["target"] == 1
        s.frame(dt=0.5)
        assert s.cursor.current == 1

    def test_dpad_rotates_in_overview(self, session_graph):
        s = fresh(session_graph)
        q0 = s.nav.graph_rotation.copy()
        s.handle_event(DpadEvent(x=1.0, y=0.0), dt=0.5)
        assert not np.array_equal(s.nav.graph_rotation, q0)

    def test_dpad_flies_in_detail(self, session_graph):
        s = fresh(session_graph)
        s.handle_event(aim_at(s, "a"))
        s.handle_event(TriggerEvent())
        s.handle_event(TriggerEvent())
        p0 = s.nav.active.position.copy()
        s.handle_event(HeadPoseEvent(position=p0, orientation=quat.identity()))
        s.handle_event(DpadEvent(x=0.0, y=1.0), dt=1.0)
        assert np.allclose(s.nav.active.position - p0, [0.0, 0.0, -3.0], atol=1e-9)

    def test_trigger_in_detail_starts_auto_flight(self, session_graph):
        s = fresh(session_graph)
        s.handle_event(aim_at(s, "a"))
        s.handle_event(TriggerEvent())
        s.handle_event(TriggerEvent())
        s.handle_event(aim_at(s, "b"))
        if s.highlight.active:
            s.handle_event(TriggerEvent())
            assert s.nav.flight is not None
            s.frame(dt=10.0)
            assert s.nav.flight is None

    def test_frame_returns_buffers_and_respects_frames(self, session_graph):
        s = fresh(session_graph)
        buf = s.frame()
        assert buf.node_count == 3
        s.cursor.current = 1  # node c absent in frame 1
        s.pointer = None
        s._refresh_hover()
        buf2 = s.frame()
        assert buf2.node_count == 2
        assert buf2.edge_count == 1  # edge b-c lost its endpoint

    def test_keep_ticking_flag_resumes_layout(self, session_graph):
        cfg = EngineConfig(layout=LayoutParams(alpha_min=0.3), keep_ticking=True)
        s = Session(session_graph, cfg)
        s.state.alpha = 1.0  # pretend annealing is unfinished
        before = s.positions.copy()
        s.frame()
        assert not np.array_equal(s.positions, before)
        assert s.state.tick_count > 0

    def test_picks_only_visible_elements(self, session_graph):
        s = fresh(session_graph)
        s.cursor.current = 1
        s.handle_event(aim_at(s, "c"))
        hovered = s.highlight.hovered
        assert hovered is None or hovered[1] != "c"
