from pathlib import Path

import numpy as np
import pytest

from graphdive.graph import build_graph, load_graph

FIXTURE_PATH = Path(__file__).resolve().parent.parent / "data" / "mednet_f4.json"


def make_graph(nodes, links, frame_count=1, directed=False):
    """Compact graph builder: nodes/links as dicts or bare ids/pairs."""
    node_docs = [{"id": n} if isinstance(n, str) else n for n in nodes]
    link_docs = [
        {"source": l[0], "target": l[1]} if isinstance(l, tuple) else l for l in links
    ]
    return build_graph({
        "directed": directed,
        "frame_count": frame_count,
        "nodes": node_docs,
        "links": link_docs,
    })


def random_graph(n, m, seed, frame_count=1):
    """Seeded random simple graph without the ER entry point (test-local)."""
    rng = np.random.default_rng(seed)
    pairs = set()
    while len(pairs) < m:
        a, b = rng.integers(0, n, size=2)
        if a == b:
            continue
        pairs.add((min(int(a), int(b)), max(int(a), int(b))))
    return build_graph({
        "frame_count": frame_count,
        "nodes": [{"id": f"v{i}", "value": float(rng.uniform(0.1, 4.0))} for i in range(n)],
        "links": [
            {"source": f"v{a}", "target": f"v{b}", "weight": float(rng.uniform(0.1, 1.0))}
            for a, b in sorted(pairs)
        ],
    })


@pytest.fixture
def triangle():
    return make_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])


@pytest.fixture
def path3():
    return make_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])


@pytest.fixture(scope="session")
def mednet():
    return load_graph(FIXTURE_PATH.read_text())
