import numpy as np
import pytest

from graphdive import quaternion as quat
from graphdive.graph import node_colors
from graphdive.layout import layout_graph
from graphdive.navigation import initial_nav, teleport_to_node
from graphdive.picking import EDGE, EMPTY_HIGHLIGHT, NODE, PickHit, hover_update
from graphdive.scene import (
    DEFAULT_STYLE,
    EDGE_STRIDE,
    NODE_STRIDE,
    InstanceBuffers,
    label_payload,
    synthesize,
    unpack,
)
from graphdive.temporal import TimeCursor, Transition

from conftest import make_graph, random_graph

BOUNDING = (np.zeros(3), 10.0)


def nav_overview():
    return initial_nav(BOUNDING)


def nav_detail():
    nav = nav_overview()
    teleport_to_node(nav, np.array([0.0, 0.0, -5.0]), 1.0)
    return nav


def simple_scene():
    g = make_graph(
        ["a", "b"],
        [{"source": "a", "target": "b", "directed": True}],
    )
    pos = np.array([[0.0, 0.0, 0.0], [20.0, 0.0, 0.0]])
    return g, pos


class TestSynthesize:
    def test_two_nodes_one_directed_edge_counts(self):
        g, pos = simple_scene()
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())
        assert (buf.node_count, buf.edge_count, buf.arrow_count) == (2, 1, 1)
        assert buf.batch_count == 3

    def test_empty_graph_all_zero(self):
        g = make_graph([], [])
        buf = synthesize(g, np.zeros((0, 3)), TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())
        assert (buf.node_count, buf.edge_count, buf.arrow_count) == (0, 0, 0)
        assert buf.batch_count == 0

    def test_batch_count_capped_at_three(self):
        g = random_graph(120, 240, seed=2)
        pos = layout_graph(g, 2)
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())
        assert buf.batch_count <= 3

    def test_arrow_iff_directed_and_visible(self):
        g = make_graph(
            ["a", "b", "c"],
            [
                {"source": "a", "target": "b", "directed": True},
                {"source": "b", "target": "c", "directed": False},
            ],
        )
        pos = np.array([[0.0, 0.0, 0.0], [20.0, 0.0, 0.0], [40.0, 0.0, 0.0]])
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())
        assert buf.edge_count == 2
        assert buf.arrow_count == 1
        # hide the directed edge's target: arrow disappears with the edge
        g2 = make_graph(
            [{"id": "a"}, {"id": "b", "frames": [1]}, {"id": "c"}],
            [
                {"source": "a", "target": "b", "directed": True},
                {"source": "b", "target": "c", "directed": False},
            ],
            frame_count=2,
        )
        buf2 = synthesize(g2, pos, TimeCursor(2), EMPTY_HIGHLIGHT, nav_overview())
        assert buf2.edge_count == 0
        assert buf2.arrow_count == 0

    def test_edge_orientation_maps_z_to_direction(self):
        g = random_graph(20, 45, seed=5)
        pos = layout_graph(g, 5)
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())
        s, t = g.pairs[:, 0], g.pairs[:, 1]
        direction = pos[t] - pos[s]
        direction /= np.linalg.norm(direction, axis=1, keepdims=True)
        for k in range(buf.edge_count):
            q = buf.edge_data[k, 3:7].astype(np.float64)
            mapped = quat.rotate(q, np.array([0.0, 0.0, 1.0]))
            assert np.allclose(mapped, direction[k], atol=1e-6)

    def test_arrow_placed_at_fraction(self):
        g, pos = simple_scene()
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())
        mid = buf.edge_data[0, 0:3].astype(np.float64)
        length = float(buf.edge_data[0, 7])
        start = mid - np.array([length / 2.0, 0.0, 0.0])
        arrow = buf.arrow_data[0, 0:3].astype(np.float64)
        expect = start + np.array([length * DEFAULT_STYLE.arrow_fraction, 0.0, 0.0])
        assert np.allclose(arrow, expect, atol=1e-5)

    def test_pure_function_byte_identical(self):
        g = random_graph(40, 80, seed=7, frame_count=3)
        pos = layout_graph(g, 7)
        cur = TimeCursor(3, current=1)
        cur.transition = Transition(1, 2, 0.4)
        hit = PickHit(kind=NODE, ident=g.nodes[3].id, distance=1.0)
        hl = hover_update(g, hit)
        nav = nav_overview()
        a = synthesize(g, pos, cur, hl, nav)
        b = synthesize(g, pos, cur, hl, nav)
        assert a.pack() == b.pack()

    def test_lowlight_constants_applied(self):
        g = random_graph(10, 16, seed=1)
        pos = layout_graph(g, 1)
        hub = g.nodes[0].id
        hl = hover_update(g, PickHit(kind=NODE, ident=hub, distance=1.0))
        buf = synthesize(g, pos, TimeCursor(1), hl, nav_overview())
        low_color = DEFAULT_STYLE.lowlight_color()
        ids = list(g.index_of)
        for k in range(buf.node_count):
            # visible node order follows node index order when all visible
            nid = ids[k]
            rgba = buf.node_data[k, 4:8].astype(np.float64)
            if nid in hl.lowlight_nodes:
                assert rgba[3] == pytest.approx(DEFAULT_STYLE.lowlight_opacity)
                assert np.allclose(rgba[:3], low_color, atol=1e-6)
            elif nid in hl.highlight_nodes:
                assert np.allclose(rgba[:3], DEFAULT_STYLE.highlight_color, atol=1e-6)
                assert rgba[3] == pytest.approx(1.0)
            else:
                assert nid == hub
                assert np.allclose(rgba[:3], node_colors(g)[k], atol=1e-6)
                assert rgba[3] == pytest.approx(1.0)

    def test_temporal_opacity_in_alpha_channel(self):
        g = make_graph(
            [{"id": "a"}, {"id": "b", "frames": [0]}],
            [],
            frame_count=2,
        )
        pos = np.array([[0.0, 0.0, 0.0], [10.0, 0.0, 0.0]])
        cur = TimeCursor(2, current=0)
        cur.transition = Transition(0, 1, 0.25)
        buf = synthesize(g, pos, cur, EMPTY_HIGHLIGHT, nav_overview())
        assert buf.node_count == 2
        assert buf.node_data[0, 7] == pytest.approx(1.0)      # present both
        assert buf.node_data[1, 7] == pytest.approx(0.75)     # departing

    def test_positions_static_across_cursor_states(self):
        g = random_graph(30, 60, seed=9, frame_count=4)
        pos = layout_graph(g, 9)
        nav = nav_overview()

        def node_positions(cur):
            buf = synthesize(g, pos, cur, EMPTY_HIGHLIGHT, nav)
            return buf.node_data[:, 0:3].tobytes()

        base = node_positions(TimeCursor(4, current=0))
        for f in range(4):
            assert node_positions(TimeCursor(4, current=f)) == base
        mid = TimeCursor(4, current=1)
        mid.transition = Transition(1, 2, 0.5)
        assert node_positions(mid) == base

    def test_graph_rotation_applied(self):
        g, pos = simple_scene()
        nav = nav_overview()
        nav.graph_rotation = quat.from_axis_angle(np.array([0.0, 1.0, 0.0]), np.pi / 2.0)
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav)
        rotated = quat.rotate(nav.graph_rotation, pos[1])
        assert np.allclose(buf.node_data[1, 0:3], rotated, atol=1e-5)

    def test_camera_prop_only_in_overview_after_visit(self):
        g, pos = simple_scene()
        cur = TimeCursor(1)
        nav = nav_overview()
        assert synthesize(g, pos, cur, EMPTY_HIGHLIGHT, nav).camera_prop is None
        nav2 = nav_detail()
        buf2 = synthesize(g, pos, cur, EMPTY_HIGHLIGHT, nav2)
        assert buf2.camera_prop is None
        assert buf2.indicator is not None
        assert np.linalg.norm(buf2.indicator) == pytest.approx(1.0, abs=1e-6)
        from graphdive.navigation import return_to_overview

        return_to_overview(nav2, BOUNDING, nav2.active.orientation)
        buf3 = synthesize(g, pos, cur, EMPTY_HIGHLIGHT, nav2)
        assert buf3.camera_prop is not None
        assert buf3.indicator is None

    def test_mismatched_positions_rejected(self):
        g, pos = simple_scene()
        with pytest.raises(ValueError):
            synthesize(g, pos[:1], TimeCursor(1), EMPTY_HIGHLIGHT, nav_overview())


class TestPack:
    def test_round_trip(self):
        g = random_graph(15, 30, seed=3)
        pos = layout_graph(g, 3)
        buf = synthesize(g, pos, TimeCursor(1), EMPTY_HIGHLIGHT, nav_detail())
        again = unpack(buf.pack())
        assert np.array_equal(again.node_data, buf.node_data)
        assert np.array_equal(again.edge_data, buf.edge_data)
        assert np.array_equal(again.arrow_data, buf.arrow_data)
        assert np.array_equal(again.indicator, buf.indicator)
        assert again.camera_prop is None

    def test_layout_constants(self):
        assert NODE_STRIDE == 8
        assert EDGE_STRIDE == 13

    def test_header_layout(self):
        buf = InstanceBuffers(
            node_data=np.zeros((2, NODE_STRIDE), dtype="<f4"),
            edge_data=np.zeros((1, EDGE_STRIDE), dtype="<f4"),
            arrow_data=np.zeros((0, EDGE_STRIDE), dtype="<f4"),
        )
        raw = buf.pack()
        assert raw[:4] == b"GDIB"
        header = np.frombuffer(raw, dtype="<u4", count=5, offset=4)
        assert header.tolist() == [1, 2, 1, 0, 0]
        expected = 4 + 20 + (7 + 3) * 4 + (2 * NODE_STRIDE + 1 * EDGE_STRIDE) * 4
        assert len(raw) == expected


class TestLabelPayload:
    def test_node_label_centered(self, mednet):
        payload = label_payload(mednet, (NODE, "D029"))
        assert payload.text == "disease-029"
        assert payload.screen_center

    def test_no_hover_empty(self, triangle):
        assert label_payload(triangle, None) is None

    def test_edge_weight_three_significant_digits(self):
        g = make_graph(
            ["a", "b", "c", "d"],
            [
                {"source": "a", "target": "b", "weight": 0.8},
                {"source": "b", "target": "c", "weight": 0.123456},
                {"source": "c", "target": "d", "weight": 1234.5},
            ],
        )
        assert label_payload(g, (EDGE, 0)).text == "0.8"
        assert label_payload(g, (EDGE, 1)).text == "0.123"
        assert label_payload(g, (EDGE, 2)).text == "1.23e+03"

    def test_opaque_attributes_surface_in_labels(self):
        g = make_graph([{"id": "a", "icd": "C50"}, "b"],
                       [{"source": "a", "target": "b", "year": 2014}])
        assert label_payload(g, (NODE, "a")).extra == {"icd": "C50"}
        assert label_payload(g, (EDGE, 0)).extra == {"year": 2014}

    def test_unknown_entity(self, triangle):
        with pytest.raises(KeyError):
            label_payload(triangle, (NODE, "zz"))
        with pytest.raises(KeyError):
            label_payload(triangle, (EDGE, 9))
