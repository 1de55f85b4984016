"""Arrangement graphs of great circles: geometry, chains, 3-coloring, claims."""

from .arrangement import (
    ArrangementGraph,
    Edge,
    Face,
    Vertex,
    antipodal_involution,
    build_graph,
    enumerate_faces,
    parse_dimacs,
    to_dimacs,
)
from .chains import (
    ChainPair,
    ChainSearch,
    Triangle,
    TriangularChain,
    enumerate_triangles,
    find_chain_pair,
    format_chain_report,
    mirror_pairing,
    validate_chain,
    validate_chain_pair,
)
from .claims import (
    CLAIM_IDS,
    ClaimReport,
    Instance,
    check_claim,
    fixture_instance,
    graph_isomorphic,
    random_instance,
    sweep,
)
from .coloring import (
    Coloring,
    ExactResult,
    HeuristicResult,
    HeuristicTrace,
    SeedSequence,
    color_chain_heuristic,
    color_exact,
    count_colorings,
    kempe_flip,
    verify_proper,
)
from .geometry import (
    FIXTURE_NAMES,
    GreatCircle,
    check_simple,
    circular_order,
    fixture_arrangement,
    generate_random,
    intersect_pair,
    parse_arrangement,
    write_arrangement,
)

__version__ = "0.1.0"
