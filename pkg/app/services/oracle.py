"""Brute-force ground truth: dual Hamilton cycles and forest bipartitions."""
import logging
from typing import Dict, FrozenSet, List, Optional

from app.core.config import Settings, settings as default_settings
from app.core.errors import BarnetteError, CapExceeded, ContractBreach, HypothesisNotMet
from app.models.coloring import ForestBipartition, Part
from app.models.cycle import ForestEnumeration, HamiltonCycle, HamiltonEnumeration
from app.models.plane_graph import Edge, PlaneGraph, edge_key
from app.schemas.reports import OracleReport
from app.services.plane_core import dual

logger = logging.getLogger(__name__)


def _check_cap(g: PlaneGraph, cap: int, what: str) -> None:
    if g.vertex_count > cap:
        raise CapExceeded(
            f"{what} enumeration is capped at {cap} vertices, got {g.vertex_count}",
            {"cap": cap, "vertices": g.vertex_count},
        )


def enumerate_hamilton_cycles(
    g: PlaneGraph, config: Settings = default_settings, stop_after: Optional[int] = None
) -> HamiltonEnumeration:
    """Every Hamilton cycle of ``g`` once, as an edge set.

    With ``stop_after`` the search ends quietly once that many are found.
    """
    _check_cap(g, config.hamilton_cap, "Hamilton cycle")
    n = g.vertex_count
    if n < 3:
        return HamiltonEnumeration(0)
    limit = config.hamilton_cycle_cap
    start = g.vertices[0]
    path: List[int] = [start]
    visited = {start}
    found: List[FrozenSet[Edge]] = []

    def stranded() -> bool:
        # an unvisited vertex needs two usable neighbours
        ends = {start, path[-1]}
        for v in g.vertices:
            if v in visited:
                continue
            usable = sum(1 for u in g.neighbours(v) if u not in visited or u in ends)
            if usable < 2:
                return True
        return False

    def extend() -> bool:
        cur = path[-1]
        if len(path) == n:
            # each cycle is met in both directions; keep one
            if g.has_edge(cur, start) and path[1] < cur:
                seq = path + [start]
                found.append(frozenset(edge_key(seq[i], seq[i + 1]) for i in range(n)))
                if len(found) == stop_after:
                    return False
                if len(found) > limit:
                    raise CapExceeded(f"More than {limit} Hamilton cycles", {"cap": limit})
            return True
        for u in sorted(g.neighbours(cur)):
            if u in visited:
                continue
            path.append(u)
            visited.add(u)
            if not stranded() and not extend():
                return False
            visited.discard(u)
            path.pop()
        return True

    extend()
    logger.debug("%r: %d Hamilton cycles", g, len(found))
    return HamiltonEnumeration(len(found), tuple(sorted(found, key=sorted)))


def enumerate_forest_bipartitions(
    g: PlaneGraph, config: Settings = default_settings, collect: bool = False
) -> ForestEnumeration:
    """Unordered splits of V(g) into two induced forests; the first vertex stays in part A."""
    _check_cap(g, config.forest_cap, "Forest bipartition")
    order = list(g.vertices)
    if not order:
        return ForestEnumeration(1, 0, (ForestBipartition({}),) if collect else ())
    part_of: Dict[int, Part] = {}
    count = 0
    two_trees = 0
    kept: List[ForestBipartition] = []

    def place(i: int, components: Dict[int, int]) -> None:
        nonlocal count, two_trees
        if i == len(order):
            count += 1
            labels = {p: {components[v] for v in order if part_of[v] == p} for p in (Part.A, Part.B)}
            if all(len(labels[p]) == 1 for p in labels):
                two_trees += 1
            if collect:
                kept.append(ForestBipartition(dict(part_of)))
            return
        v = order[i]
        for side in (Part.A, Part.B) if i else (Part.A,):
            touched = [components[u] for u in g.neighbours(v) if part_of.get(u) == side]
            if len(touched) != len(set(touched)):
                continue
            merged = set(touched)
            nxt = {u: (v if c in merged else c) for u, c in components.items()}
            nxt[v] = v
            part_of[v] = side
            place(i + 1, nxt)
            del part_of[v]

    place(0, {})
    logger.debug("%r: %d forest bipartitions, %d two-tree", g, count, two_trees)
    return ForestEnumeration(count, two_trees, tuple(kept))


def two_tree_splits_count(g: PlaneGraph, config: Settings = default_settings) -> int:
    return enumerate_forest_bipartitions(g, config).two_tree_count


def cycle_from_edges(g: PlaneGraph, edges: FrozenSet[Edge]) -> HamiltonCycle:
    """HamiltonCycle of G* from an edge set of the dual graph."""
    dual_graph, corr = dual(g)
    adjacency: Dict[int, List[int]] = {f: [] for f in dual_graph.vertices}
    for f, h in edges:
        adjacency[f].append(h)
        adjacency[h].append(f)
    seq = [dual_graph.vertices[0]]
    prev = None
    while True:
        nxt = min(f for f in adjacency[seq[-1]] if f != prev)
        if nxt == seq[0]:
            break
        prev = seq[-1]
        seq.append(nxt)
    if len(seq) != dual_graph.vertex_count:
        raise ContractBreach("Edge set is not a single spanning cycle", {"length": len(seq)})
    return HamiltonCycle(tuple(seq), frozenset(corr.primal_of(f, h) for f, h in edges))


def first_hamilton_cycle(g: PlaneGraph, config: Settings = default_settings) -> HamiltonCycle:
    """Some Hamilton cycle of G*, by search."""
    dual_graph, _ = dual(g)
    enumeration = enumerate_hamilton_cycles(dual_graph, config, stop_after=1)
    if not enumeration.cycles:
        raise HypothesisNotMet(f"The dual of {g!r} has no Hamilton cycle", {"vertices": g.vertex_count})
    return cycle_from_edges(g, enumeration.cycles[0])


def cross_check_stein(
    g: PlaneGraph,
    config: Settings = default_settings,
    pipeline_cycle: Optional[HamiltonCycle] = None,
) -> OracleReport:
    """Dual Hamiltonicity against existence of a two-forest split, plus pipeline membership."""
    dual_graph, _ = dual(g)
    cycles = enumerate_hamilton_cycles(dual_graph, config)
    forests = enumerate_forest_bipartitions(g, config)

    if pipeline_cycle is None:
        from app.services.stein import hamiltonize

        try:
            pipeline_cycle = hamiltonize(g, "triangulation", config).cycle
        except BarnetteError as exc:
            logger.info("%r: no pipeline cycle (%s)", g, exc.code)
    member = None if pipeline_cycle is None else pipeline_cycle in cycles

    report = OracleReport(
        name=g.name,
        vertices=g.vertex_count,
        edges=g.edge_count,
        faces=g.face_count,
        hamilton_count=cycles.count,
        hamilton_cycles=[[list(e) for e in sorted(c)] for c in cycles.cycles] if cycles.count <= 64 else [],
        forest_bipartition_count=forests.count,
        two_tree_count=forests.two_tree_count,
        agreement=(cycles.count > 0) == (forests.count > 0),
        counts_equal=cycles.count == forests.two_tree_count,
        pipeline_cycle_in_oracle=member,
    )
    if not report.agreement or member is False:
        raise ContractBreach("Oracle disagrees with the forest correspondence", report.model_dump())
    return report
