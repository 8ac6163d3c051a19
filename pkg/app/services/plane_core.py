"""Rotation-system plane graphs: construction, duality, connectivity, subgraphs."""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from app.core.errors import (
    AsymmetricAdjacency,
    DualNotSimple,
    EmptyInduced,
    InvalidInputError,
    NonPlanarEmbedding,
    NonSimple,
)
from app.models.plane_graph import Edge, EdgeCorrespondence, PlaneGraph, edge_key

logger = logging.getLogger(__name__)

RotationInput = Union[Mapping[int, Sequence[int]], Sequence[Sequence[int]]]


@dataclass(frozen=True)
class Block:
    vertices: FrozenSet[int]
    edges: FrozenSet[Edge]

    @property
    def is_bridge(self) -> bool:
        return len(self.edges) == 1

    @property
    def is_cycle(self) -> bool:
        return len(self.vertices) >= 3 and len(self.edges) == len(self.vertices)

    @property
    def is_complex(self) -> bool:
        return len(self.edges) > len(self.vertices)


def _normalise(rotations: RotationInput) -> Dict[int, Tuple[int, ...]]:
    if isinstance(rotations, Mapping):
        items = rotations.items()
    else:
        items = enumerate(rotations)
    result = {}
    for v, nbrs in items:
        if not isinstance(v, int) or v < 0:
            raise InvalidInputError(f"Vertex id {v!r} is not a non-negative integer", {"vertex": v})
        result[int(v)] = tuple(int(u) for u in nbrs)
    return result


def euler_characteristic(g: PlaneGraph) -> int:
    """V - E + F, counting one face per isolated vertex."""
    isolated = sum(1 for v in g.vertices if g.degree(v) == 0)
    return g.vertex_count - g.edge_count + g.face_count + isolated


def build_plane_graph(rotations: RotationInput, name: Optional[str] = None) -> PlaneGraph:
    """Validate a rotation system and return the plane graph it embeds."""
    rot = _normalise(rotations)
    for v, nbrs in rot.items():
        if v in nbrs:
            raise NonSimple(f"Loop at vertex {v}", {"vertex": v})
        if len(set(nbrs)) != len(nbrs):
            raise NonSimple(f"Parallel edge at vertex {v}", {"vertex": v, "rotation": list(nbrs)})
        for u in nbrs:
            if u not in rot:
                raise AsymmetricAdjacency(
                    f"Vertex {v} lists unknown neighbour {u}", {"vertex": v, "neighbour": u}
                )
            if v not in rot[u]:
                raise AsymmetricAdjacency(
                    f"Edge {v}-{u} missing from the rotation of {u}", {"edge": [v, u]}
                )

    graph = PlaneGraph(rotations=rot, name=name)
    if sum(f.length for f in graph.faces) != 2 * graph.edge_count:
        raise NonPlanarEmbedding("Faces do not partition the darts", {"edges": graph.edge_count})

    components = nx.number_connected_components(graph.nx_graph) if rot else 0
    chi = euler_characteristic(graph)
    if chi != 2 * components:
        raise NonPlanarEmbedding(
            f"Euler check failed: V-E+F={chi}, expected {2 * components}",
            {
                "vertices": graph.vertex_count,
                "edges": graph.edge_count,
                "faces": graph.face_count,
                "components": components,
            },
        )
    return graph


def is_connected(g: PlaneGraph) -> bool:
    return g.vertex_count > 0 and nx.is_connected(g.nx_graph)


def dual(g: PlaneGraph) -> Tuple[PlaneGraph, EdgeCorrespondence]:
    """Dual plane graph, one vertex per face of ``g``, with the edge bijection."""
    if not is_connected(g):
        raise InvalidInputError("Dual requires a connected plane graph", {"graph": repr(g)})

    face_of = g.face_of_dart
    primal_to_dual: Dict[Edge, Edge] = {}
    dual_to_primal: Dict[Edge, Edge] = {}
    for u, v in g.edges:
        f, h = face_of[(u, v)], face_of[(v, u)]
        if f == h:
            raise DualNotSimple(f"Edge {u}-{v} is a bridge", {"edge": [u, v]})
        key = edge_key(f, h)
        if key in dual_to_primal:
            raise DualNotSimple(
                f"Faces {f} and {h} share more than one edge",
                {"faces": [f, h], "edges": [list(dual_to_primal[key]), [u, v]]},
            )
        primal_to_dual[(u, v)] = key
        dual_to_primal[key] = (u, v)

    rotations = {f.id: [face_of[(v, u)] for u, v in f.darts] for f in g.faces}
    dual_graph = build_plane_graph(rotations, name=f"dual({g.name})" if g.name else None)
    return dual_graph, EdgeCorrespondence(primal_to_dual, dual_to_primal)


def verify_correspondence(g: PlaneGraph, dual_graph: PlaneGraph, corr: EdgeCorrespondence) -> bool:
    """Each dual edge joins the two faces on either side of its primal edge."""
    if len(corr) != g.edge_count or dual_graph.edge_count != g.edge_count:
        return False
    for (u, v), key in corr.primal_to_dual.items():
        if edge_key(*g.faces_through_edge(u, v)) != key or not dual_graph.has_edge(*key):
            return False
        if corr.dual_to_primal[key] != (u, v):
            return False
    return True


def is_k_connected(g: PlaneGraph, k: int) -> bool:
    """Brute-force vertex connectivity test for k in 1..3."""
    if k not in (1, 2, 3):
        raise InvalidInputError(f"k must be 1, 2 or 3, got {k}", {"k": k})
    if g.vertex_count < k + 1:
        return False
    graph = g.nx_graph
    for removed in combinations(g.vertices, k - 1):
        rest = graph.subgraph(set(g.vertices) - set(removed))
        if not nx.is_connected(rest):
            return False
    return True


def induced_plane_subgraph(g: PlaneGraph, vertices: Iterable[int]) -> PlaneGraph:
    """Embedded subgraph on ``vertices``; rotations keep their cyclic order."""
    keep = frozenset(vertices)
    if not keep:
        raise EmptyInduced("Induced subgraph on an empty vertex set")
    missing = keep - set(g.vertices)
    if missing:
        raise InvalidInputError(f"Vertices {sorted(missing)} are not in the graph", {"missing": sorted(missing)})
    rotations = {v: [u for u in g.rotations[v] if u in keep] for v in keep}
    sub = build_plane_graph(rotations)
    if len(keep) > 1 and (sub.edge_count == 0 or not is_connected(sub)):
        logger.debug("Induced subgraph on %d vertices is disconnected", len(keep))
    return sub


def subgraph_diagnostics(g: PlaneGraph) -> List[str]:
    flags = []
    if g.vertex_count > 1 and g.edge_count == 0:
        flags.append("edgeless")
    if g.vertex_count > 0 and not is_connected(g):
        flags.append("disconnected")
    return flags


def remove_vertices(g: PlaneGraph, vertices: Iterable[int]) -> PlaneGraph:
    return induced_plane_subgraph(g, set(g.vertices) - set(vertices))


def block_decomposition(g: PlaneGraph) -> List[Block]:
    """Blocks of the block-cut tree; bridges are two-vertex blocks."""
    blocks = []
    for component in nx.biconnected_component_edges(g.nx_graph):
        edges = frozenset(edge_key(u, v) for u, v in component)
        verts = frozenset(x for e in edges for x in e)
        blocks.append(Block(vertices=verts, edges=edges))
    blocks.sort(key=lambda b: min(b.edges))
    return blocks


def is_bipartite(g: PlaneGraph) -> Optional[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Bipartition by BFS, the side of each component's smallest vertex first."""
    graph = g.nx_graph
    if not nx.is_bipartite(graph):
        return None
    side: Dict[int, int] = {}
    for component in sorted(nx.connected_components(graph), key=min):
        root = min(component)
        side[root] = 0
        for u, v in nx.bfs_edges(graph, root):
            side[v] = 1 - side[u]
    first = frozenset(v for v, s in side.items() if s == 0)
    return first, frozenset(g.vertices) - first


def relabel(g: PlaneGraph, mapping: Mapping[int, int]) -> PlaneGraph:
    rotations = {mapping[v]: [mapping[u] for u in nbrs] for v, nbrs in g.rotations.items()}
    return build_plane_graph(rotations, name=g.name)


def is_isomorphic(g: PlaneGraph, h: PlaneGraph) -> bool:
    return nx.is_isomorphic(g.nx_graph, h.nx_graph)


def rotations_preserved(g: PlaneGraph, sub: PlaneGraph) -> bool:
    """Every rotation of ``sub`` is a cyclic subsequence of the one in ``g``."""
    for v, nbrs in sub.rotations.items():
        full = [u for u in g.rotations[v] if u in set(nbrs)]
        if len(nbrs) <= 1:
            continue
        start = full.index(nbrs[0])
        if tuple(full[start:] + full[:start]) != tuple(nbrs):
            return False
    return True
