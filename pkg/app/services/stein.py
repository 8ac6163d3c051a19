"""Hamilton cycles of the dual from two-forest vertex partitions, and back."""
import logging
import math
from itertools import product
from typing import Dict, List, Mapping, Optional, Tuple

import networkx as nx

from app.core.config import Settings, settings as default_settings
from app.core.errors import (
    AmbiguousInput,
    ContractBreach,
    DisconnectedCycle,
    HypothesisError,
    HypothesisFailed,
    HypothesisNotMet,
    InvalidHamiltonCycle,
    InvalidInputError,
    InvalidPartition,
    LowerBoundBreach,
    NotTwoTrees,
    PreconditionFailed,
)
from app.models.coloring import EngineTrace, ForestBipartition, Part, TriColoring
from app.models.cycle import HamiltonCycle, HamiltonResult, LowerBound
from app.models.plane_graph import PlaneGraph
from app.models.triangulation import BigSmallSplit, DoubleWheel, GeneralBig3, SmallPathCover
from app.services.goodcolor import forest_partition_theta
from app.services.partition import certify, induces_forest, is_compatible
from app.services.plane_core import dual, induced_plane_subgraph, is_bipartite, is_k_connected
from app.services.synth import lemma33_synthesize
from app.services.triangulation import (
    big_neighbour_bound,
    big_small_split,
    big_subgraph,
    classify_family,
    corollary21_hypothesis,
    ensure_eulerian_triangulation,
    small_path_cover,
    three_coloring,
)

logger = logging.getLogger(__name__)


# Forest partitions and dual cycles

def crossing_edges(g: PlaneGraph, uw: ForestBipartition) -> List[Tuple[int, int]]:
    return [(u, v) for u, v in g.edges if not uw.same_part(u, v)]


def forest_partition_to_hamilton(g: PlaneGraph, uw: ForestBipartition) -> HamiltonCycle:
    """Dual cycle formed by the edges joining the two parts."""
    missing = set(g.vertices) - set(uw.part_of)
    if missing:
        raise InvalidPartition(f"Partition misses vertices {sorted(missing)}", {"missing": sorted(missing)})

    crossing = crossing_edges(g, uw)
    expected = 2 * g.vertex_count - 4
    if len(crossing) != expected:
        witness = certify(g, uw).cycle_witness
        raise NotTwoTrees(
            f"{len(crossing)} crossing edges, two trees give {expected}",
            {"crossing": len(crossing), "expected": expected, "cycles": {p.value: list(c) for p, c in witness.items()}},
        )
    crossing_set = set(crossing)
    for face in g.faces:
        count = len(face.edges & crossing_set)
        if count != 2:
            raise NotTwoTrees(f"Face {face.id} has {count} crossing edges", {"face": list(face.vertices)})

    cycle_graph = nx.Graph()
    cycle_graph.add_nodes_from(f.id for f in g.faces)
    for u, v in crossing:
        cycle_graph.add_edge(*g.faces_through_edge(u, v))
    if not nx.is_connected(cycle_graph):
        parts = sorted((sorted(c) for c in nx.connected_components(cycle_graph)), key=min)
        raise DisconnectedCycle(f"Crossing edges form {len(parts)} dual cycles", {"components": parts})

    sequence = [0]
    prev, cur = None, 0
    while True:
        nxt = min(f for f in cycle_graph.neighbors(cur) if f != prev)
        if nxt == 0:
            break
        sequence.append(nxt)
        prev, cur = cur, nxt
    return HamiltonCycle(dual_vertices=tuple(sequence), crossing_edges=frozenset(crossing))


def verify_hamilton_cycle(g: PlaneGraph, h: HamiltonCycle) -> bool:
    """Permutation of the dual vertices whose consecutive pairs are dual edges of the crossing set."""
    dual_graph, corr = dual(g)
    seq = h.dual_vertices
    if len(seq) < 3 or sorted(seq) != list(dual_graph.vertices):
        return False
    used = set()
    for i, f in enumerate(seq):
        k = seq[(i + 1) % len(seq)]
        if not dual_graph.has_edge(f, k):
            return False
        used.add(corr.primal_of(f, k))
    return used == set(h.crossing_edges)


def ensure_hamilton_cycle(g: PlaneGraph, h: HamiltonCycle) -> None:
    if not verify_hamilton_cycle(g, h):
        raise InvalidHamiltonCycle("Cycle is not a Hamilton cycle of the dual", {"cycle": list(h.dual_vertices)})


def hamilton_to_forest_partition(g: PlaneGraph, h: HamiltonCycle) -> ForestBipartition:
    """The two sides of the dual cycle; each induces a tree."""
    ensure_hamilton_cycle(g, h)
    rest = g.to_networkx()
    rest.remove_edges_from(h.crossing_edges)
    sides = sorted(nx.connected_components(rest), key=min)
    if len(sides) != 2 or not all(nx.is_tree(g.nx_graph.subgraph(s)) for s in sides):
        raise ContractBreach("Sides of a Hamilton cycle are not two trees", {"sides": [sorted(s) for s in sides]})
    return ForestBipartition.from_parts(sides[0], sides[1])


# Restriction to G[B] and extension back to G

def restrict_to_big(
    g: PlaneGraph, types: TriColoring, split: BigSmallSplit, uw: ForestBipartition
) -> ForestBipartition:
    for part in uw.parts:
        check = induces_forest(g, part)
        if not check:
            raise InvalidPartition("A part contains a cycle", {"cycle": list(check.cycle)})
    if not split.big:
        return ForestBipartition({})
    big = uw.restrict(split.big)
    j = induced_plane_subgraph(g, split.big)
    report = is_compatible(j, types.restrict(split.big), big)
    if not report:
        raise ContractBreach("Restriction to G[B] is not compatible", {"faces": report.violating_faces})
    return big


def _connected_within(g: PlaneGraph, part_of: Mapping[int, Part], side: Part, b: int, d: int) -> bool:
    sub = g.nx_graph.subgraph([v for v, p in part_of.items() if p == side])
    return nx.has_path(sub, b, d)


def extend_to_full(
    g: PlaneGraph,
    types: TriColoring,
    split: BigSmallSplit,
    cover: SmallPathCover,
    big: ForestBipartition,
    forced: Optional[Mapping[int, Optional[int]]] = None,
) -> ForestBipartition:
    """Colour the inner vertices of every small path, keeping both parts forests.

    ``forced`` maps a path index to the inner vertex taking the flank colour,
    or to None for all inner vertices opposite; those paths go first.
    """
    missing = split.big - set(big.part_of)
    if missing:
        raise InvalidPartition(f"Partition of B misses {sorted(missing)}", {"missing": sorted(missing)})
    forced = dict(forced or {})
    part_of: Dict[int, Part] = dict(big.part_of)
    order = sorted(forced) + [i for i in range(len(cover.paths)) if i not in forced]

    for index in order:
        path = cover.paths[index]
        b, d = path.flanks
        inner = path.inner
        if index in forced or part_of[b] == part_of[d]:
            side = part_of[b]
            if part_of[d] != side:
                raise ContractBreach(f"Forced path {path.vertices} has flanks in different parts", {"path": list(path.vertices)})
            if index in forced:
                v0 = forced[index]
            elif _connected_within(g, part_of, side, b, d):
                v0 = None
            else:
                v0 = min(inner)
            for v in inner:
                part_of[v] = side if v == v0 else side.other
        else:
            start = part_of[path.vertices[0]]
            for i, v in enumerate(path.vertices[1:], start=1):
                want = start if i % 2 == 0 else start.other
                if v in inner:
                    part_of[v] = want
                elif part_of[v] != want:
                    raise ContractBreach(
                        f"Path {path.vertices} ends disagree with the alternation", {"path": list(path.vertices)}
                    )
        for side in (Part.A, Part.B):
            check = induces_forest(g, [v for v, p in part_of.items() if p == side])
            if not check:
                raise ContractBreach(
                    f"Extending over path {path.vertices} closed a cycle",
                    {"path": list(path.vertices), "cycle": list(check.cycle)},
                )
    return ForestBipartition(part_of)


# Direct constructions

def _rim_order(g: PlaneGraph, hubs: Tuple[int, int]) -> List[int]:
    rim = set(g.vertices) - set(hubs)
    order = [min(rim)]
    prev = None
    while True:
        cur = order[-1]
        nxt = min(u for u in g.neighbours(cur) if u in rim and u != prev)
        if nxt == order[0]:
            return order
        order.append(nxt)
        prev = cur


def double_wheel_partition(g: PlaneGraph, family: Optional[DoubleWheel] = None) -> ForestBipartition:
    """Each hub with every other rim vertex: two stars."""
    family = family or classify_family(g)
    if not isinstance(family, DoubleWheel):
        raise PreconditionFailed(f"{g!r} is not a double wheel", {"family": family.name})
    h, o = family.hubs
    rim = _rim_order(g, family.hubs)
    return ForestBipartition.from_parts([h, *rim[0::2]], [o, *rim[1::2]])


def double_wheel_cycle(g: PlaneGraph, family: Optional[DoubleWheel] = None) -> HamiltonCycle:
    return forest_partition_to_hamilton(g, double_wheel_partition(g, family))


def _bipartite_big_partition(g: PlaneGraph, types: TriColoring, split: BigSmallSplit):
    j, j_types = big_subgraph(g, split, types)
    sides = is_bipartite(j)
    if sides is None or any(f.length != 4 for f in j.faces):
        raise ContractBreach("G[B] is not a bipartite quadrangulation", {"faces": [f.length for f in j.faces]})
    big = ForestBipartition.from_parts(*sides)
    report = is_compatible(j, j_types, big)
    if not report:
        raise ContractBreach("Bipartition of G[B] is not compatible", {"faces": report.violating_faces})
    return j, big


def _require_mixed_faces(g: PlaneGraph, split: BigSmallSplit) -> None:
    if not corollary21_hypothesis(g, split):
        bad = [list(f.vertices) for f in g.faces if set(f.vertices) <= split.small or set(f.vertices) <= split.big]
        raise HypothesisFailed("Some facial triangle is all small or all big", {"faces": bad})


def corollary21_fastpath(
    g: PlaneGraph, types: Optional[TriColoring] = None, split: Optional[BigSmallSplit] = None
) -> HamiltonCycle:
    """Hamilton cycle from the bipartition of G[B] when every face mixes small and big vertices."""
    split = split or big_small_split(g)
    _require_mixed_faces(g, split)
    if not isinstance(classify_family(g, split), GeneralBig3):
        raise PreconditionFailed("Needs at least three big vertices", {"big": len(split.big)})
    types = types or three_coloring(g)
    _, big = _bipartite_big_partition(g, types, split)
    cover = small_path_cover(g, split)
    full = extend_to_full(g, types, split, cover, big)
    return forest_partition_to_hamilton(g, full)


def lower_bound_k(big_count: int, max_degree: int) -> int:
    return math.ceil((big_count - 2) / (4 * max_degree - 7))


def _independent_faces(j: PlaneGraph) -> List[int]:
    """Largest greedy colour class of the graph joining faces that share a vertex."""
    touching = nx.Graph()
    touching.add_nodes_from(f.id for f in j.faces)
    for f, h in nx.non_edges(touching):
        if set(j.faces[f].vertices) & set(j.faces[h].vertices):
            touching.add_edge(f, h)
    colours = nx.greedy_color(touching, strategy="largest_first")
    classes: Dict[int, List[int]] = {}
    for face, colour in colours.items():
        classes.setdefault(colour, []).append(face)
    return sorted(max(classes.values(), key=lambda c: (len(c), -min(c))))


def hamilton_lower_bound(
    g: PlaneGraph,
    types: Optional[TriColoring] = None,
    split: Optional[BigSmallSplit] = None,
    config: Settings = default_settings,
) -> LowerBound:
    """At least 2^k distinct dual Hamilton cycles from independent extension choices."""
    split = split or big_small_split(g)
    _require_mixed_faces(g, split)
    family = classify_family(g, split)
    if isinstance(family, DoubleWheel):
        return LowerBound(k=0, chosen_faces=(), cycles=(double_wheel_cycle(g, family),))

    types = types or three_coloring(g)
    j, big = _bipartite_big_partition(g, types, split)
    cover = small_path_cover(g, split)
    k = lower_bound_k(len(split.big), j.max_degree)

    if j.vertex_count == 4:
        # G[B] is a 4-cycle: both sides carry a small path
        indices = list(range(len(cover.paths)))
        chosen_faces: Tuple[int, ...] = tuple(f.id for f in j.faces)
        options = [[None, *cover.paths[i].inner] for i in indices]
        required = 10
    else:
        chosen = _independent_faces(j)
        if len(chosen) < k:
            raise LowerBoundBreach(
                f"Greedy class has {len(chosen)} faces, bound needs {k}", {"faces": chosen, "k": k}
            )
        indices = []
        for fid in chosen:
            path = cover.path_for_face(frozenset(j.faces[fid].vertices))
            if path is None:
                raise ContractBreach(f"No small path fills face {fid} of G[B]", {"face": list(j.faces[fid].vertices)})
            indices.append(cover.paths.index(path))
        chosen_faces = tuple(chosen)
        options = [[None, min(cover.paths[i].inner)] for i in indices]
        required = 2 ** k

    cycles: Dict[frozenset, HamiltonCycle] = {}
    for combo in product(*options):
        if len(cycles) >= config.hamilton_cycle_cap:
            break
        try:
            full = extend_to_full(g, types, split, cover, big, dict(zip(indices, combo)))
        except ContractBreach:
            continue
        cycle = forest_partition_to_hamilton(g, full)
        cycles.setdefault(cycle.canonical_edges(), cycle)
    if len(cycles) < required:
        raise LowerBoundBreach(
            f"Found {len(cycles)} distinct cycles, expected at least {required}", {"k": k, "faces": list(chosen_faces)}
        )
    return LowerBound(k=k, chosen_faces=chosen_faces, cycles=tuple(cycles.values()))


# Pipeline

def _faces_as_cubic_vertices(p: PlaneGraph, g: PlaneGraph) -> Dict[int, int]:
    """Face id of ``g = dual(p)`` for each vertex of ``p``, inverted."""
    around = {frozenset(p.face_of_dart[(v, u)] for u in p.neighbours(v)): v for v in p.vertices}
    return {f.id: around[frozenset(f.vertices)] for f in g.faces}


def resolve_triangulation(graph: PlaneGraph, as_: str = "auto") -> Tuple[PlaneGraph, Optional[PlaneGraph]]:
    """The triangulation to work on, and the cubic input when one was given."""
    cubic = graph.vertex_count > 0 and all(graph.degree(v) == 3 for v in graph.vertices)
    triangular = graph.face_count > 0 and all(f.length == 3 for f in graph.faces)
    if as_ == "auto":
        if cubic and triangular:
            raise AmbiguousInput(f"{graph!r} is both cubic and triangulated; pass --as", {"vertices": graph.vertex_count})
        as_ = "cubic" if cubic else "triangulation"
    if as_ == "triangulation":
        return graph, None
    if as_ != "cubic":
        raise InvalidInputError(f"Unknown input kind {as_!r}", {"as": as_})
    if not cubic:
        raise InvalidInputError(f"{graph!r} is not cubic", {"max_degree": graph.max_degree})
    if is_bipartite(graph) is None:
        raise InvalidInputError(f"{graph!r} is not bipartite")
    if not is_k_connected(graph, 3):
        raise InvalidInputError(f"{graph!r} is not 3-connected")
    g, _ = dual(graph)
    return g, graph


def hamiltonize(
    graph: PlaneGraph,
    as_: str = "auto",
    config: Settings = default_settings,
    trace: Optional[EngineTrace] = None,
) -> HamiltonResult:
    """Verified Hamilton cycle of G* for an Eulerian triangulation G (or its cubic dual)."""
    g, cubic = resolve_triangulation(graph, as_)
    ensure_eulerian_triangulation(g)
    split = big_small_split(g)
    family = classify_family(g, split)

    if isinstance(family, DoubleWheel):
        partition = double_wheel_partition(g, family)
        method = "double_wheel"
    else:
        bound = big_neighbour_bound(g, split)
        if bound > 4:
            raise HypothesisNotMet(
                f"A vertex has {bound} big neighbours; the construction needs at most 4",
                {"big_neighbour_bound": bound},
            )
        cover = small_path_cover(g, split)
        types = three_coloring(g)
        j, j_types = big_subgraph(g, split, types)
        big = forest_partition_theta(j, j_types, config, trace)
        partition = extend_to_full(g, types, split, cover, big)
        method = "theta"

    cycle = forest_partition_to_hamilton(g, partition)
    ensure_hamilton_cycle(g, cycle)
    cubic_cycle = None
    if cubic is not None:
        names = _faces_as_cubic_vertices(cubic, g)
        cubic_cycle = tuple(names[f] for f in cycle.dual_vertices)
    logger.info("%r: %s cycle through %d faces", g, method, cycle.length)
    return HamiltonResult(triangulation=g, cycle=cycle, method=method, partition=partition, cubic_cycle=cubic_cycle)


def theta_partition_via_triangulation(
    j: PlaneGraph, types: TriColoring, config: Settings = default_settings
) -> ForestBipartition:
    """Compatible forest partition of J read off a Hamilton cycle of a triangulation built around J."""
    g, recipe = lemma33_synthesize(j, types)
    split = big_small_split(g)
    try:
        cycle = hamiltonize(g, "triangulation", config).cycle
    except HypothesisError as exc:
        from app.services.oracle import first_hamilton_cycle

        logger.info("%r: %s, searching for a cycle instead", g, exc.code)
        cycle = first_hamilton_cycle(g, config)
    uw = hamilton_to_forest_partition(g, cycle)
    return restrict_to_big(g, TriColoring(dict(recipe.types)), split, uw)

