import json

import numpy as np
import pytest

from graphdive.graph import (
    GraphFormatError,
    build_graph,
    edge_girths,
    frame_presence,
    load_graph,
    neighborhood,
    node_colors,
    node_radii,
    out_edges,
    serialize,
)

from conftest import FIXTURE_PATH, make_graph, random_graph


class TestLoadGraph:
    def test_mednet_fixture_size(self, mednet):
        assert mednet.node_count == 199
        assert mednet.edge_count == 593

    def test_empty_graph(self):
        g = load_graph('{"frame_count":1,"nodes":[],"links":[]}')
        assert g.node_count == 0
        assert g.edge_count == 0
        assert g.frame_count == 1

    def test_missing_frames_means_all_frames(self):
        g = load_graph(json.dumps({
            "frame_count": 5,
            "nodes": [{"id": "a"}],
            "links": [],
        }))
        assert g.nodes[0].frames is None
        for f in range(5):
            nodes, _ = frame_presence(g, f)
            assert nodes == {"a"}

    def test_dangling_endpoint_names_offender(self):
        doc = {"nodes": [{"id": "a"}], "links": [{"source": "a", "target": "X"}]}
        with pytest.raises(GraphFormatError, match="'X'"):
            build_graph(doc)

    def test_parse_error(self):
        with pytest.raises(GraphFormatError, match="invalid JSON"):
            load_graph("{nope")

    def test_negative_value_rejected(self):
        with pytest.raises(GraphFormatError, match="'a'"):
            build_graph({"nodes": [{"id": "a", "value": -1}], "links": []})

    def test_negative_weight_rejected(self):
        doc = {
            "nodes": [{"id": "a"}, {"id": "b"}],
            "links": [{"source": "a", "target": "b", "weight": -0.5}],
        }
        with pytest.raises(GraphFormatError, match="'a'.*'b'"):
            build_graph(doc)

    def test_frame_out_of_range_rejected(self):
        doc = {"frame_count": 2, "nodes": [{"id": "a", "frames": [2]}], "links": []}
        with pytest.raises(GraphFormatError, match="out of range"):
            build_graph(doc)

    def test_empty_frames_forbidden(self):
        doc = {"nodes": [{"id": "a", "frames": []}], "links": []}
        with pytest.raises(GraphFormatError, match="empty 'frames'"):
            build_graph(doc)

    def test_duplicate_node_id(self):
        with pytest.raises(GraphFormatError, match="duplicate node"):
            build_graph({"nodes": [{"id": "a"}, {"id": "a"}], "links": []})

    def test_duplicate_edge_same_frame(self):
        doc = {
            "nodes": [{"id": "a"}, {"id": "b"}],
            "links": [{"source": "a", "target": "b"}, {"source": "b", "target": "a"}],
        }
        with pytest.raises(GraphFormatError, match="duplicate edge"):
            build_graph(doc)

    def test_duplicate_edge_disjoint_frames_ok(self):
        doc = {
            "frame_count": 2,
            "nodes": [{"id": "a"}, {"id": "b"}],
            "links": [
                {"source": "a", "target": "b", "frames": [0]},
                {"source": "a", "target": "b", "frames": [1]},
            ],
        }
        assert build_graph(doc).edge_count == 2

    def test_unknown_fields_preserved(self):
        doc = {
            "nodes": [{"id": "a", "icd": "C50"}],
            "links": [],
        }
        g = build_graph(doc)
        assert g.nodes[0].attrs == {"icd": "C50"}

    def test_directed_default_inherited(self):
        doc = {
            "directed": True,
            "nodes": [{"id": "a"}, {"id": "b"}],
            "links": [{"source": "a", "target": "b"}],
        }
        g = build_graph(doc)
        assert g.edges[0].directed


class TestNeighborhood:
    def test_triangle(self, triangle):
        nodes, edges = neighborhood(triangle, "a")
        assert nodes == {"b", "c"}
        assert edges == {0, 2}

    def test_isolated_node(self):
        g = make_graph(["a", "b"], [])
        assert neighborhood(g, "a") == (set(), set())

    def test_unknown_node(self, triangle):
        with pytest.raises(KeyError):
            neighborhood(triangle, "zz")

    def test_matches_linear_scan_oracle(self):
        g = random_graph(50, 120, seed=9)
        for node in g.nodes:
            got_nodes, got_edges = neighborhood(g, node.id)
            want_nodes, want_edges = set(), set()
            for ei, e in enumerate(g.edges):
                if e.source == node.id:
                    want_edges.add(ei)
                    want_nodes.add(e.target)
                elif e.target == node.id:
                    want_edges.add(ei)
                    want_nodes.add(e.source)
            want_nodes.discard(node.id)
            assert got_nodes == want_nodes
            assert got_edges == want_edges

    def test_symmetry_undirected(self):
        g = random_graph(40, 90, seed=4)
        for a in g.nodes:
            for b_id in neighborhood(g, a.id)[0]:
                assert a.id in neighborhood(g, b_id)[0]

    def test_out_edges_subset(self):
        g = make_graph(
            ["a", "b", "c"],
            [
                {"source": "a", "target": "b", "directed": True},
                {"source": "c", "target": "a", "directed": True},
                {"source": "a", "target": "c"},
            ],
        )
        assert out_edges(g, "a") == {0, 2}
        assert neighborhood(g, "a")[1] == {0, 1, 2}


class TestFramePresence:
    def test_all_default_graph(self, triangle):
        nodes, edges = frame_presence(triangle, 0)
        assert nodes == {"a", "b", "c"}
        assert edges == {0, 1, 2}

    def test_edge_needs_both_endpoints(self):
        g = make_graph(
            [{"id": "a", "frames": [0]}, {"id": "b"}],
            [{"source": "a", "target": "b", "frames": [0, 1]}],
            frame_count=2,
        )
        assert frame_presence(g, 0) == ({"a", "b"}, {0})
        assert frame_presence(g, 1) == ({"b"}, set())

    def test_out_of_range(self, triangle):
        with pytest.raises(ValueError):
            frame_presence(triangle, 1)

    def test_matches_membership_oracle(self):
        g = random_graph(20, 40, seed=12, frame_count=3)
        # rebuild with scattered frame subsets
        doc = json.loads(serialize(g))
        rng = np.random.default_rng(5)
        for rec in doc["nodes"] + doc["links"]:
            if rng.random() < 0.6:
                k = int(rng.integers(1, 4))
                rec["frames"] = sorted(
                    int(x) for x in rng.choice(3, size=k, replace=False)
                )
        g = build_graph(doc)
        for f in range(3):
            nodes, edges = frame_presence(g, f)
            for n in g.nodes:
                assert (n.id in nodes) == (n.frames is None or f in n.frames)
            for ei, e in enumerate(g.edges):
                expect = (
                    (e.frames is None or f in e.frames)
                    and (e.source in nodes)
                    and (e.target in nodes)
                )
                assert (ei in edges) == expect

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_presence_implies_endpoints(self, seed):
        g = random_graph(30, 60, seed=seed, frame_count=4)
        for f in range(4):
            nodes, edges = frame_presence(g, f)
            for ei in edges:
                assert g.edges[ei].source in nodes
                assert g.edges[ei].target in nodes


def test_serialize_round_trip_idempotent(mednet):
    once = serialize(mednet)
    again = serialize(load_graph(once))
    assert once == again


class TestVisualMappings:
    def test_node_radius_range(self):
        g = make_graph(
            [{"id": "a", "value": 0.0}, {"id": "b", "value": 4.0}, {"id": "c", "value": 1.0}],
            [],
        )
        r = node_radii(g)
        assert r[0] == pytest.approx(0.5)
        assert r[1] == pytest.approx(2.5)
        assert r[2] == pytest.approx(0.5 + 2.0 * np.sqrt(1.0 / 4.0))

    def test_all_zero_values(self):
        g = make_graph([{"id": "a", "value": 0.0}], [])
        assert node_radii(g)[0] == pytest.approx(0.5)

    def test_girth_range(self):
        g = make_graph(
            ["a", "b", "c"],
            [
                {"source": "a", "target": "b", "weight": 0.0},
                {"source": "b", "target": "c", "weight": 2.0},
            ],
        )
        girths = edge_girths(g)
        assert girths[0] == pytest.approx(0.05)
        assert girths[1] == pytest.approx(0.3)

    def test_palette_cycles_and_is_deterministic(self):
        g = make_graph([{"id": "a", "group": 1}, {"id": "b", "group": 13}], [])
        colors = node_colors(g)
        assert np.array_equal(colors[0], colors[1])
        assert np.array_equal(colors, node_colors(g))


def test_fixture_file_exists():
    assert FIXTURE_PATH.exists(), "committed MedNet-sized fixture is missing"
