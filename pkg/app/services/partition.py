"""Two-part vertex partitions: compatibility with a 3-colouring and induced-forest checks."""
import logging
from typing import Iterable, Optional

import networkx as nx

from app.core.errors import ContractBreach, InvalidPartition, NotIndependent, NotSubset
from app.models.coloring import (
    CompatibilityReport,
    ForestBipartition,
    ForestCheck,
    Part,
    Roles,
    TriColoring,
    assign_roles,
)
from app.models.plane_graph import PlaneGraph

logger = logging.getLogger(__name__)


def is_compatible(j: PlaneGraph, types: TriColoring, k: ForestBipartition) -> CompatibilityReport:
    """Check every facial 4-cycle for a diagonal pair agreeing or disagreeing in both part and type."""
    missing = set(j.vertices) - set(k.part_of)
    if missing:
        raise InvalidPartition(f"Partition misses vertices {sorted(missing)}", {"missing": sorted(missing)})

    witnesses = {}
    for face in j.faces:
        if face.length != 4:
            continue
        a, b, c, d = face.vertices
        witnesses[face.id] = None
        for x, y in ((a, c), (b, d)):
            if k.same_part(x, y) == types.same_type(x, y):
                witnesses[face.id] = (x, y)
                break
    report = CompatibilityReport(witnesses)
    if not report.compatible:
        logger.debug("Incompatible faces: %s", report.violating_faces)
    return report


def induces_forest(g: PlaneGraph, vertices: Iterable[int]) -> ForestCheck:
    """Acyclicity of g[vertices], with a cycle as witness on failure."""
    sub = g.nx_graph.subgraph(vertices)
    if sub.number_of_nodes() == 0 or nx.is_forest(sub):
        return ForestCheck(True)
    edges = nx.find_cycle(sub)
    return ForestCheck(False, tuple(u for u, _ in edges))


def both_parts_forests(g: PlaneGraph, k: ForestBipartition) -> bool:
    return all(induces_forest(g, part) for part in k.parts)


def certify(g: PlaneGraph, k: ForestBipartition) -> ForestBipartition:
    """Copy of ``k`` carrying a cycle witness for each part that is not a forest."""
    witness = {}
    for part in (Part.A, Part.B):
        check = induces_forest(g, k.part(part))
        if not check:
            witness[part] = check.cycle
    return ForestBipartition(dict(k.part_of), witness)


def lemma1_partition(
    j: PlaneGraph,
    types: TriColoring,
    independent: Iterable[int],
    roles: Optional[Roles] = None,
) -> ForestBipartition:
    """Partition {J3 + I, (J1 + J2) - I}; part A is the J3 side."""
    roles = roles or assign_roles(types, j.vertices)
    chosen = frozenset(independent)
    outside = chosen - roles.j12
    if outside:
        raise NotSubset(f"Vertices {sorted(outside)} are not in J1 or J2", {"vertices": sorted(outside)})
    for u, v in j.edges:
        if u in chosen and v in chosen:
            raise NotIndependent(f"Edge {u}-{v} lies inside the chosen set", {"edge": [u, v]})

    k = ForestBipartition.from_parts(roles.j3 | chosen, roles.j12 - chosen)
    report = is_compatible(j, roles.as_coloring(), k)
    if not report:
        raise ContractBreach(
            "Partition built from an independent set is not compatible",
            {"faces": report.violating_faces, "independent": sorted(chosen)},
        )
    return k
