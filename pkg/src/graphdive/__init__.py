"""graphdive: overview-and-detail exploration engine for dynamic networks.

Core pipeline: load a dynamic graph, compute a 3D force layout once over
the union of all frames, then per frame resolve picking, navigation and
temporal fades into flat GPU-instancing buffers.
"""
from .graph import (
    DynamicGraph,
    EdgeRecord,
    GraphFormatError,
    NodeRecord,
    edge_girths,
    frame_presence,
    load_graph,
    neighborhood,
    node_colors,
    node_radii,
    out_edges,
    serialize,
)
from .layout import (
    LayoutDivergenceError,
    LayoutParams,
    LayoutState,
    bounding_sphere,
    compute_forces_bh,
    compute_forces_brute,
    init_layout,
    layout_graph,
    run_to_convergence,
    tick,
)
from .octree import Octree, build_octree
from .picking import (
    HighlightState,
    PickHit,
    Ray,
    SceneSnapshot,
    build_pick_index,
    build_snapshot,
    hover_update,
    make_ray,
    ray_pick,
    ray_pick_linear,
)
from .navigation import (
    AutoFlight,
    NavigationState,
    NavParams,
    Perspective,
    RigPose,
    apply_free_flight,
    apply_overview_rotation,
    indicator_direction,
    initial_nav,
    return_to_overview,
    start_auto_flight,
    swap_rigs,
    teleport_to_node,
    update_auto_flight,
)
from .temporal import (
    CursorMode,
    TimeCursor,
    advance_transition,
    bin_by_attribute,
    element_opacity,
    scrub,
    time_bar_payload,
)
from .scene import InstanceBuffers, LabelPayload, SceneStyle, label_payload, synthesize, unpack
from .session import EngineConfig, Session
from .bench import Scenario, ScenarioKind, TimingReport, generate_er, report, run_scenario

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
