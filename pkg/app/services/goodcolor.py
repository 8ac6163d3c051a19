"""Forest partitions of theta graphs.

The colouring engine labels the vertices of a 3-connected theta graph
alpha, beta or gamma, removes every beta-cycle one recolouring step at a
time, then resolves the gamma vertices. Graphs that are not 3-connected are
reduced by deleting a degree-2 vertex or a short path and the partition of
the smaller graph is extended back.
"""
import logging
from itertools import combinations
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import Settings, settings as default_settings
from app.core.errors import (
    CaseAnalysisUnreachable,
    ConfigurationNotFound,
    ContractBreach,
    IterationCapExceeded,
    NotTheta,
    PreconditionA1,
    PreconditionA2,
    PreconditionFailed,
    RecursionInvariantBroken,
)
from app.core.logging import log_step
from app.models.coloring import (
    EngineStep,
    EngineTrace,
    ForestBipartition,
    Label,
    Part,
    Roles,
    TriColoring,
    WorkColoring,
    assign_roles,
)
from app.models.engine import AssociationReport, BadPathReport, BetaCycleReport, OverlapConfiguration
from app.models.plane_graph import Edge, PlaneGraph, edge_key
from app.services.partition import both_parts_forests, induces_forest, is_compatible, lemma1_partition
from app.services.plane_core import block_decomposition, induced_plane_subgraph, is_k_connected, remove_vertices
from app.services.triangulation import theta_certificate

logger = logging.getLogger(__name__)

__all__ = [
    "assign_roles",
    "is_theta",
    "check_preconditions",
    "preliminary_coloring",
    "validate_associated",
    "beta_cycle_report",
    "bad_path_report",
    "exhaustive_beta_cycles",
    "find_overlap_configuration",
    "classify_overlap",
    "step_eliminate_overlap",
    "step_remove_independent_cycle",
    "eliminate_beta_cycles",
    "resolve_gammas",
    "forest_partition_3connected",
    "find_degree2_reduction",
    "find_lemma31_reduction",
    "reduce_lemma31",
    "reduce_lemma32",
    "forest_partition_theta",
]


def is_theta(j: PlaneGraph, types: Optional[TriColoring] = None) -> bool:
    return all(theta_certificate(j, types).values())


def _j3_positions(j: PlaneGraph, roles: Roles, v: int) -> List[int]:
    return [i for i, u in enumerate(j.rotations[v]) if u in roles.j3]


def _j3_count(j: PlaneGraph, roles: Roles, v: int) -> int:
    return sum(1 for u in j.neighbours(v) if u in roles.j3)


def _in_x3(j: PlaneGraph, roles: Roles, v: int) -> bool:
    """Degree 4 with exactly two non-consecutive J3 neighbours."""
    if v in roles.j3 or j.degree(v) != 4:
        return False
    pos = _j3_positions(j, roles, v)
    return len(pos) == 2 and pos[1] - pos[0] == 2


def check_preconditions(j: PlaneGraph, roles: Roles) -> None:
    """Degree at most 4 on J1 and J2, and a low-degree J3 neighbour around each J1 vertex."""
    for v in sorted(roles.j12):
        if j.degree(v) > 4:
            raise PreconditionA1(f"Vertex {v} of J1/J2 has degree {j.degree(v)}", {"vertex": v})
    for v in sorted(roles.j1):
        rot = j.rotations[v]
        if len(rot) != 4:
            continue
        for i in range(4):
            v1, v2, v3, v4 = (rot[(i + k) % 4] for k in range(4))
            if v1 in roles.j3 and v2 in roles.j3 and v3 in roles.j2 and v4 in roles.j2:
                if j.degree(v1) > 4 and j.degree(v2) > 4:
                    raise PreconditionA2(
                        f"Both J3 neighbours {v1}, {v2} of {v} have degree above 4",
                        {"vertex": v, "j3_neighbours": [v1, v2]},
                    )


def preliminary_coloring(j: PlaneGraph, types: TriColoring, roles: Optional[Roles] = None) -> WorkColoring:
    """Alpha on J3 and the sparse vertices X1, X2; gamma on X3; beta elsewhere."""
    roles = roles or assign_roles(types, j.vertices)
    check_preconditions(j, roles)

    x1 = {v for v in roles.j1 if _j3_count(j, roles, v) <= 1}
    x2 = {
        v for v in roles.j2
        if _j3_count(j, roles, v) <= 1 and not any(u in x1 for u in j.neighbours(v))
    }
    labels: Dict[int, Label] = {}
    for v in j.vertices:
        if v in roles.j3 or v in x1 or v in x2:
            labels[v] = Label.ALPHA
        elif _in_x3(j, roles, v):
            labels[v] = Label.GAMMA
        else:
            labels[v] = Label.BETA
    logger.debug("Preliminary colouring: X1=%s X2=%s", sorted(x1), sorted(x2))
    return WorkColoring(labels)


def beta_cycle_report(j: PlaneGraph, t: WorkColoring) -> BetaCycleReport:
    beta = t.beta
    if len(beta) < 3:
        return BetaCycleReport()
    blocks = block_decomposition(induced_plane_subgraph(j, beta))
    cycle_blocks = [b for b in blocks if b.is_cycle]
    complex_blocks = tuple(b for b in blocks if b.is_complex)

    cyclic_edges = set()
    for block in cycle_blocks + list(complex_blocks):
        cyclic_edges |= block.edges

    independent = []
    for block in cycle_blocks:
        others = [b for b in cycle_blocks + list(complex_blocks) if b is not block]
        independent.append(not any(block.vertices & b.vertices for b in others))
    order = sorted(range(len(cycle_blocks)), key=lambda i: min(cycle_blocks[i].vertices))
    return BetaCycleReport(
        cycles=tuple(cycle_blocks[i].vertices for i in order),
        independent=tuple(independent[i] for i in order),
        complex_blocks=complex_blocks,
        cyclic_edges=frozenset(cyclic_edges),
    )


def exhaustive_beta_cycles(j: PlaneGraph, t: WorkColoring) -> FrozenSet[FrozenSet[Edge]]:
    """Every cycle of the beta-induced subgraph, as edge sets."""
    sub = j.nx_graph.subgraph(t.beta)
    cycles = set()
    for cycle in nx.simple_cycles(sub):
        if len(cycle) < 3:
            continue
        cycles.add(frozenset(edge_key(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))))
    return frozenset(cycles)


def bad_path_report(
    j: PlaneGraph,
    roles: Roles,
    t: WorkColoring,
    report: Optional[BetaCycleReport] = None,
) -> BadPathReport:
    """Alpha paths between J3 vertices that both touch a J1 vertex on a beta-cycle."""
    report = report or beta_cycle_report(j, t)
    on_cycle = report.cyclic_vertices & roles.j1
    if not on_cycle:
        return BadPathReport()
    alpha = t.alpha
    terminals = sorted(
        v for v in roles.j3 if v in alpha and any(u in on_cycle for u in j.neighbours(v))
    )
    forest = j.nx_graph.subgraph(alpha)
    paths = []
    bad = set()
    for x, y in combinations(terminals, 2):
        if not nx.has_path(forest, x, y):
            continue
        path = nx.shortest_path(forest, x, y)
        members = [v for v in path if v in roles.j1]
        if members:
            paths.append(tuple(path))
            bad.update(members)
    return BadPathReport(bad_paths=tuple(paths), bad_vertices=frozenset(bad))


def validate_associated(j: PlaneGraph, roles: Roles, t: WorkColoring, p: WorkColoring) -> AssociationReport:
    """Evaluate the eight conditions tying ``t`` to the preliminary colouring ``p``."""
    failures: Dict[int, List] = {}

    def fail(condition: int, witness) -> None:
        failures.setdefault(condition, []).append(witness)

    report = beta_cycle_report(j, t)
    on_cycle = report.cyclic_vertices
    for v in sorted(on_cycle):
        if p[v] != Label.BETA:
            fail(1, v)

    alpha = t.alpha
    for v in sorted(alpha & roles.j1):
        count = _j3_count(j, roles, v)
        limit = 2 if j.degree(v) >= 4 else 1
        if count > limit:
            fail(2, v)
        if count == 2:
            for u in j.neighbours(v):
                if t[u] == Label.BETA and u in on_cycle:
                    fail(3, [v, u])
    for v in sorted(alpha & roles.j2):
        if _j3_count(j, roles, v) > 1:
            fail(4, v)
    for v in sorted(roles.j3 - alpha):
        fail(5, v)
    for v in j.vertices:
        if (t[v] == Label.GAMMA) != _in_x3(j, roles, v):
            fail(6, v)
    low_alpha = alpha & roles.j12
    for u, v in j.edges:
        if u in low_alpha and v in low_alpha:
            fail(7, [u, v])
    check = induces_forest(j, alpha)
    if not check:
        fail(8, list(check.cycle))
    return AssociationReport(failures)


def _assert_cycle_shape(j: PlaneGraph, report: BetaCycleReport) -> None:
    faces = {frozenset(f.vertices) for f in j.faces if f.length == 4}
    for cycle in report.cycles:
        if len(cycle) < 4 or len(cycle) % 2:
            raise ContractBreach(f"Beta-cycle {sorted(cycle)} has odd or short length", {"cycle": sorted(cycle)})
        if len(cycle) == 4 and cycle not in faces:
            raise ContractBreach(f"Beta 4-cycle {sorted(cycle)} is not a face", {"cycle": sorted(cycle)})


def _non_independent_vertices(report: BetaCycleReport) -> FrozenSet[int]:
    verts = set()
    for block in report.complex_blocks:
        verts |= block.vertices
    for cycle, independent in zip(report.cycles, report.independent):
        if not independent:
            verts |= cycle
    return frozenset(verts)


def _fourth_vertex(j: PlaneGraph, x: int, y: int, z: int) -> Optional[int]:
    """Remaining vertex of a facial 4-cycle through the corner x-y-z in either direction."""
    for face in (j.face_with_corner(x, y, z), j.face_with_corner(z, y, x)):
        if face is not None and face.length == 4:
            return next(v for v in face.vertices if v not in (x, y, z))
    return None


def find_overlap_configuration(
    j: PlaneGraph, roles: Roles, t: WorkColoring, report: Optional[BetaCycleReport] = None
) -> OverlapConfiguration:
    """First facial beta 4-cycle D and J2 vertex c of D whose two other neighbours are a beta b and an alpha q.

    Faces are scanned by id and c in vertex order. The face a-b-c-q must have
    a on the beta-cycles but off D, with b and q in J1.
    """
    report = report or beta_cycle_report(j, t)
    shared = _non_independent_vertices(report)
    for face in j.faces:
        on_d = frozenset(face.vertices)
        if face.length != 4 or not on_d <= t.beta or not on_d <= shared:
            continue
        for c in sorted(on_d & roles.j2):
            if j.degree(c) != 4:
                continue
            rot = j.rotations[c]
            off = [u for u in rot if u not in on_d]
            b = next((u for u in off if t[u] == Label.BETA), None)
            q = next((u for u in off if t[u] == Label.ALPHA), None)
            if b is None or q is None or b not in roles.j1 or q not in roles.j1 or b not in shared:
                continue
            a = _fourth_vertex(j, b, c, q)
            if a is None or a in on_d or a not in shared or t[a] != Label.BETA:
                continue
            i = rot.index(q)
            f = rot[i - 1] if rot[i - 1] in on_d else rot[(i + 1) % 4]
            g = _fourth_vertex(j, q, c, f)
            if g is None:
                raise CaseAnalysisUnreachable(
                    f"Corner {q}-{c}-{f} lies on no facial 4-cycle", {"a": a, "b": b, "c": c, "q": q, "f": f}
                )
            h = far = None
            if j.degree(q) == 4:
                h = next((u for u in j.neighbours(q) if u not in (a, c, g)), None)
                far = _fourth_vertex(j, h, q, a) if h is not None else None
            return OverlapConfiguration(face=face.id, a=a, b=b, c=c, q=q, f=f, g=g, h=h, far=far)
    raise ConfigurationNotFound(
        "No facial beta 4-cycle meets a big beta-cycle at a J2 vertex",
        {"beta": sorted(t.beta), "shared": sorted(shared)},
    )


def classify_overlap(j: PlaneGraph, t: WorkColoring, config: OverlapConfiguration) -> str:
    """L43a when q has degree 3 or h is gamma, L43b when h and far are beta, L43c when far is alpha."""
    h, far = config.h, config.far
    if j.degree(config.q) == 3 or (h is not None and t[h] == Label.GAMMA):
        return "L43a"
    if h is not None and far is not None and t[h] == Label.BETA:
        if t[far] == Label.BETA:
            return "L43b"
        if t[far] == Label.ALPHA:
            return "L43c"
    raise CaseAnalysisUnreachable(
        "Overlap configuration matches no recolouring case",
        {**config.as_dict(), "degree_q": j.degree(config.q), "labels": {v: t[v].value for v in (h, far) if v is not None}},
    )


def _overlap_move(kind: str, config: OverlapConfiguration) -> Dict[int, Label]:
    move = {config.c: Label.ALPHA, config.q: Label.BETA}
    if kind == "L43b":
        move[config.a] = Label.ALPHA
    return move


def step_eliminate_overlap(
    j: PlaneGraph, roles: Roles, t: WorkColoring
) -> Tuple[WorkColoring, str]:
    """Break up overlapping beta-cycles by swapping a shared J2 vertex with an alpha J1 vertex.

    The configuration decides the case: the swap of c and q, widened to a
    in case L43b. The result must stay associated and free of bad vertices
    and must drop at least one beta-cycle.
    """
    report = beta_cycle_report(j, t)
    if report.all_independent:
        raise PreconditionFailed("Every beta-cycle is independent", {"cycles": [sorted(c) for c in report.cycles]})
    bad = bad_path_report(j, roles, t, report)
    if bad.bad_vertices:
        raise PreconditionFailed("Colouring has bad vertices", {"bad": sorted(bad.bad_vertices)})

    config = find_overlap_configuration(j, roles, t, report)
    kind = classify_overlap(j, t, config)
    m = t.with_labels(_overlap_move(kind, config))
    logger.debug("%s at %s", kind, config.as_dict())

    after = beta_cycle_report(j, m)
    if not after.cyclic_edges < report.cyclic_edges:
        raise ContractBreach(
            f"Step {kind} kept every cyclic beta edge",
            {**config.as_dict(), "before": len(report.cyclic_edges), "after": len(after.cyclic_edges)},
        )
    association = validate_associated(j, roles, m, t.preliminary)
    if not association:
        raise ContractBreach(
            f"Step {kind} broke conditions {association.failed_conditions}",
            {**config.as_dict(), "failures": association.as_dict()},
        )
    bad = bad_path_report(j, roles, m, after)
    if bad.bad_vertices:
        raise ContractBreach(f"Step {kind} left bad vertices", {**config.as_dict(), "bad": sorted(bad.bad_vertices)})
    return m, kind


def step_remove_independent_cycle(
    j: PlaneGraph, roles: Roles, t: WorkColoring
) -> Tuple[WorkColoring, str]:
    """Recolour one J1 vertex of an independent beta-cycle to alpha."""
    report = beta_cycle_report(j, t)
    if not report.cycles:
        raise PreconditionFailed("No beta-cycle to remove")
    if not report.all_independent:
        raise PreconditionFailed("Beta-cycles overlap", {"shared": sorted(_non_independent_vertices(report))})
    bad = bad_path_report(j, roles, t, report)
    if not bad.is_good:
        raise PreconditionFailed("Colouring is not good", {"bad": sorted(bad.bad_vertices)})

    if bad.bad_vertices:
        a = min(bad.bad_vertices)
        w = None
        flanks = sorted(u for u in j.neighbours(a) if u in roles.j3 and j.degree(u) <= 4)
        for b in flanks:
            for cycle in report.cycles:
                if not any(u in cycle for u in j.neighbours(b) if u in roles.j1):
                    continue
                choices = sorted(v for v in cycle & roles.j1 if not j.has_edge(v, b))
                if choices:
                    w = choices[0]
                    break
            if w is not None:
                break
        if w is None:
            raise ContractBreach(
                f"No J1 vertex of a beta-cycle avoids the neighbours of bad vertex {a}",
                {"bad": a, "flanks": flanks, "cycles": [sorted(c) for c in report.cycles], "beta": sorted(t.beta)},
            )
    else:
        w = min(report.cycles[0] & roles.j1)
    return t.with_labels({w: Label.ALPHA}), "L46"


def _check_step(
    j: PlaneGraph,
    roles: Roles,
    t: WorkColoring,
    m: WorkColoring,
    kind: str,
    before: BetaCycleReport,
    config: Settings,
) -> BetaCycleReport:
    after = beta_cycle_report(j, m)
    association = validate_associated(j, roles, m, m.preliminary)
    if not association:
        raise ContractBreach(
            f"Step {kind} broke conditions {association.failed_conditions}",
            {"failures": association.as_dict(), "changed": sorted(m.changed_from(t))},
        )
    if after.measure >= before.measure:
        raise ContractBreach(
            f"Step {kind} did not decrease the measure", {"before": list(before.measure), "after": list(after.measure)}
        )
    bad = bad_path_report(j, roles, m, after)
    limit = 1 if kind == "L46" else 0
    if len(bad.bad_vertices) > limit:
        raise ContractBreach(f"Step {kind} left bad vertices", {"bad": sorted(bad.bad_vertices)})
    if j.vertex_count <= config.exhaustive_cycle_limit:
        old, new = exhaustive_beta_cycles(j, t), exhaustive_beta_cycles(j, m)
        if not new < old:
            raise ContractBreach(f"Step {kind} created a beta-cycle", {"new": [sorted(c) for c in new - old]})
    return after


def _require_engine_input(j: PlaneGraph, types: TriColoring) -> None:
    if not is_theta(j, types):
        raise NotTheta(f"{j!r} is not in the theta family", {"certificate": theta_certificate(j, types)})
    if not is_k_connected(j, 3):
        raise PreconditionFailed(f"{j!r} is not 3-connected", {"vertices": j.vertex_count})


def eliminate_beta_cycles(
    j: PlaneGraph,
    types: TriColoring,
    roles: Optional[Roles] = None,
    config: Settings = default_settings,
    trace: Optional[EngineTrace] = None,
) -> WorkColoring:
    """Good colouring without beta-cycles, reached from the preliminary colouring."""
    _require_engine_input(j, types)
    roles = roles or assign_roles(types, j.vertices)
    p = preliminary_coloring(j, types, roles)
    association = validate_associated(j, roles, p, p)
    if not association:
        raise ContractBreach("Preliminary colouring is not associated", {"failures": association.as_dict()})

    t = p
    cap = config.iteration_cap(j.vertex_count)
    report = beta_cycle_report(j, t)
    steps = 0
    while not report.empty:
        _assert_cycle_shape(j, report)
        if steps >= cap:
            raise IterationCapExceeded(
                f"Engine exceeded {cap} steps",
                {"beta": sorted(t.beta), "alpha": sorted(t.alpha), "measure": list(report.measure)},
            )
        if report.all_independent:
            m, kind = step_remove_independent_cycle(j, roles, t)
        else:
            m, kind = step_eliminate_overlap(j, roles, t)
        changed = m.changed_from(t)
        report = _check_step(j, roles, t, m, kind, report, config)
        line = log_step(kind, changed, report.measure)
        logger.debug(line)
        if trace is not None:
            trace.steps.append(EngineStep(kind=kind, changed=changed, measure=report.measure, line=line))
        t = m
        steps += 1
    return t


def resolve_gammas(j: PlaneGraph, roles: Roles, t: WorkColoring) -> ForestBipartition:
    """Label gamma vertices in id order: alpha when two neighbours share a beta component."""
    labels = dict(t.label_of)
    for v in sorted(t.gamma):
        beta = [u for u, lab in labels.items() if lab == Label.BETA]
        component = {}
        for i, comp in enumerate(nx.connected_components(j.nx_graph.subgraph(beta))):
            for u in comp:
                component[u] = i
        seen = [component[u] for u in j.neighbours(v) if u in component]
        labels[v] = Label.ALPHA if len(seen) != len(set(seen)) else Label.BETA
    final = WorkColoring(labels)
    return ForestBipartition.from_parts(final.alpha, final.beta)


def forest_partition_3connected(
    j: PlaneGraph,
    types: TriColoring,
    roles: Optional[Roles] = None,
    config: Settings = default_settings,
    trace: Optional[EngineTrace] = None,
) -> Tuple[FrozenSet[int], ForestBipartition]:
    """Independent set I of J1+J2 with both parts of {J3+I, (J1+J2)-I} forests."""
    roles = roles or assign_roles(types, j.vertices)
    t = eliminate_beta_cycles(j, types, roles, config, trace)
    k = resolve_gammas(j, roles, t)
    independent = k.part(Part.A) & roles.j12
    for u, v in j.edges:
        if u in independent and v in independent:
            raise ContractBreach(f"Resolved set is not independent at {u}-{v}", {"edge": [u, v]})
    if not both_parts_forests(j, k):
        raise ContractBreach("A resolved part contains a cycle", {"parts": k.to_lines()})
    expected = lemma1_partition(j, types, independent, roles)
    if expected.part_of != k.part_of:
        raise ContractBreach("Resolved partition differs from the independent-set partition")
    return independent, k


# Reductions for graphs that are not 3-connected

def _is_cycle_graph(j: PlaneGraph) -> bool:
    return all(j.degree(v) == 2 for v in j.vertices)


def _reduced_is_theta(j: PlaneGraph, types: TriColoring, removed: Sequence[int]) -> bool:
    rest = set(j.vertices) - set(removed)
    if len(rest) < 3:
        return False
    sub = induced_plane_subgraph(j, rest)
    return is_theta(sub, types.restrict(sub.vertices))


def find_degree2_reduction(j: PlaneGraph, types: TriColoring) -> Optional[int]:
    """Lowest-id degree-2 vertex whose removal stays in the theta family."""
    if _is_cycle_graph(j):
        return None
    for v in j.vertices:
        if j.degree(v) == 2 and _reduced_is_theta(j, types, [v]):
            return v
    return None


def find_lemma31_reduction(
    j: PlaneGraph, types: TriColoring
) -> Optional[Tuple[Tuple[int, ...], Tuple[int, int]]]:
    """Shortest path with degree-3 ends and degree-4 inner vertices, all seeing the same two flanks.

    Returns the path (from its lower-id end) and the flank pair; ties go to
    the lowest vertex id.
    """
    found = []
    for b, d in combinations(j.vertices, 2):
        if j.has_edge(b, d):
            continue
        common = set(j.neighbours(b)) & set(j.neighbours(d))
        eligible = [v for v in common if j.degree(v) in (3, 4)]
        sub = j.nx_graph.subgraph(eligible)
        for comp in nx.connected_components(sub):
            if len(comp) < 2:
                continue
            piece = sub.subgraph(comp)
            if not nx.is_tree(piece) or max(deg for _, deg in piece.degree()) > 2:
                continue
            ends = sorted(v for v, deg in piece.degree() if deg == 1)
            inner = comp - set(ends)
            if any(j.degree(v) != 3 for v in ends) or any(j.degree(v) != 4 for v in inner):
                continue
            shared = set(j.vertices)
            for v in comp:
                shared &= set(j.neighbours(v))
            if shared != {b, d}:
                continue
            path = tuple(nx.shortest_path(piece, ends[0], ends[1]))
            if _reduced_is_theta(j, types, path):
                found.append((len(path), min(path), path, (b, d)))
    if not found:
        return None
    _, _, path, flanks = min(found)
    return path, flanks


def _valid_extension(j: PlaneGraph, types: TriColoring, k: ForestBipartition) -> bool:
    return bool(is_compatible(j, types, k)) and both_parts_forests(j, k)


def _require_sub_partition(
    j: PlaneGraph, types: TriColoring, sub_k: ForestBipartition, added: Sequence[int]
) -> None:
    missing = set(j.vertices) - set(added) - set(sub_k.part_of)
    if missing:
        raise ContractBreach("Sub-partition misses vertices", {"missing": sorted(missing)})
    if not _valid_extension(induced_plane_subgraph(j, sub_k.vertices), types.restrict(sub_k.vertices), sub_k):
        raise ContractBreach("Sub-partition is not a compatible forest partition", {"parts": sub_k.to_lines()})


def _follow(types: TriColoring, k: ForestBipartition, x: int, v: int) -> Part:
    """Part for v that makes the pair x, v compatible."""
    return k.part_of[x] if types.same_type(x, v) else k.part_of[x].other


def _extended(
    j: PlaneGraph,
    types: TriColoring,
    sub_k: ForestBipartition,
    sides: Mapping[int, Part],
    case: str,
) -> ForestBipartition:
    k = ForestBipartition({**sub_k.part_of, **sides})
    if not _valid_extension(j, types, k):
        raise ContractBreach(
            f"Case {case} over {sorted(sides)} is not a compatible forest partition",
            {"case": case, "added": {v: p.value for v, p in sides.items()}, "parts": sub_k.to_lines()},
        )
    logger.debug("Case %s over %s", case, sorted(sides))
    return k


def reduce_lemma32(j: PlaneGraph, types: TriColoring, u: int, sub_k: ForestBipartition) -> ForestBipartition:
    """Extend a partition of J - u to the degree-2 vertex u with neighbours b < d.

    j1: b, d of one type in different parts; u follows the vertex opposite it
    on a facial 4-cycle. j2: b, d in one part; u takes the other part.
    Otherwise b, d differ in type and part, and u joins the part of b.
    """
    _require_sub_partition(j, types, sub_k, [u])
    b, d = sorted(j.neighbours(u))
    if sub_k.same_part(b, d):
        return _extended(j, types, sub_k, {u: sub_k.part_of[b].other}, "j2")
    if not types.same_type(b, d):
        return _extended(j, types, sub_k, {u: sub_k.part_of[b]}, "split")
    a = _fourth_vertex(j, b, u, d)
    if a is None:
        raise CaseAnalysisUnreachable(
            f"Degree-2 vertex {u} lies on no facial 4-cycle", {"vertex": u, "neighbours": [b, d]}
        )
    return _extended(j, types, sub_k, {u: _follow(types, sub_k, a, u)}, "j1")


def reduce_lemma31(
    j: PlaneGraph,
    types: TriColoring,
    path: Sequence[int],
    flanks: Tuple[int, int],
    sub_k: ForestBipartition,
) -> ForestBipartition:
    """Extend a partition of J - P over the path P = u..w seen by both flanks b, d.

    With b, d in different parts, u follows the vertex a opposite it on the
    face b-a-d-u and the path alternates from there; the cases i1..i4 record
    whether a, u and u, w share a type. With b, d in one part the whole path
    takes the other part.
    """
    _require_sub_partition(j, types, sub_k, path)
    b, d = flanks
    if not types.same_type(b, d):
        raise CaseAnalysisUnreachable(f"Flanks {b}, {d} differ in type", {"path": list(path), "flanks": [b, d]})
    if sub_k.same_part(b, d):
        side = sub_k.part_of[b].other
        return _extended(j, types, sub_k, {v: side for v in path}, "joined")

    u, w = path[0], path[-1]
    a = _fourth_vertex(j, b, u, d)
    if a is None:
        raise CaseAnalysisUnreachable(
            f"Path end {u} lies on no facial 4-cycle with {b}, {d}", {"path": list(path), "flanks": [b, d]}
        )
    case = f"i{1 + (not types.same_type(a, u)) + 2 * (not types.same_type(u, w))}"
    first = _follow(types, sub_k, a, u)
    sides = {v: first if i % 2 == 0 else first.other for i, v in enumerate(path)}
    return _extended(j, types, sub_k, sides, case)


def _cycle_base(j: PlaneGraph, types: TriColoring) -> ForestBipartition:
    cycle = j.faces[0].vertices
    if len(cycle) == 3:
        return ForestBipartition.from_parts([cycle[0]], cycle[1:])
    if len(cycle) != 4:
        raise RecursionInvariantBroken(f"Cycle of length {len(cycle)} is not a theta graph", {"cycle": list(cycle)})
    a, b, c, d = cycle
    if types.same_type(a, c):
        return ForestBipartition.from_parts([a, c], [b, d])
    return ForestBipartition.from_parts([a], [b, c, d])


def _theta_recursive(
    j: PlaneGraph, types: TriColoring, config: Settings, trace: Optional[EngineTrace], depth: int
) -> ForestBipartition:
    if not is_theta(j, types):
        raise RecursionInvariantBroken(f"Reduced graph {j!r} left the theta family", {"depth": depth})
    if _is_cycle_graph(j):
        return _cycle_base(j, types)
    if is_k_connected(j, 3):
        return forest_partition_3connected(j, types, config=config, trace=trace)[1]

    u = find_degree2_reduction(j, types)
    if u is not None:
        sub = remove_vertices(j, [u])
        sub_k = _theta_recursive(sub, types.restrict(sub.vertices), config, trace, depth + 1)
        return reduce_lemma32(j, types, u, sub_k)

    reduction = find_lemma31_reduction(j, types)
    if reduction is not None:
        path, flanks = reduction
        sub = remove_vertices(j, path)
        sub_k = _theta_recursive(sub, types.restrict(sub.vertices), config, trace, depth + 1)
        return reduce_lemma31(j, types, path, flanks, sub_k)

    raise RecursionInvariantBroken(f"No reduction applies to {j!r}", {"depth": depth, "vertices": j.vertex_count})


def forest_partition_theta(
    j: PlaneGraph,
    types: TriColoring,
    config: Settings = default_settings,
    trace: Optional[EngineTrace] = None,
) -> ForestBipartition:
    """Compatible partition of V(J) into two induced forests, for theta graphs with maximum degree 4."""
    if not is_theta(j, types):
        raise NotTheta(f"{j!r} is not in the theta family", {"certificate": theta_certificate(j, types)})
    if j.max_degree > 4:
        high = [v for v in j.vertices if j.degree(v) > 4]
        raise PreconditionFailed(f"Maximum degree {j.max_degree} exceeds 4", {"vertices": high})
    k = _theta_recursive(j, types, config, trace, 0)
    if not _valid_extension(j, types, k):
        raise ContractBreach("Theta partition is not a compatible forest partition", {"parts": k.to_lines()})
    return k
