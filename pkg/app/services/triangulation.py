"""Eulerian triangulations: validation, 3-colouring, big/small split, families, path cover."""
import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

import networkx as nx

from app.core.errors import (
    AllSmallTriangle,
    BarnetteError,
    ColoringConflict,
    IsThreeCycle,
    NotTriangulation,
    OddDegree,
    PreconditionFailed,
    ThetaViolation,
    UnclassifiedFamily,
)
from app.models.coloring import TriColoring
from app.models.plane_graph import PlaneGraph
from app.models.triangulation import (
    BigSmallSplit,
    DoubleWheel,
    FamilyTag,
    GeneralBig3,
    SmallPath,
    SmallPathCover,
    ThreeCycle,
)
from app.services.plane_core import induced_plane_subgraph, is_connected, is_k_connected

logger = logging.getLogger(__name__)


def validate_eulerian_triangulation(g: PlaneGraph) -> List[BarnetteError]:
    """Every violation found; an empty list means a valid triangulation.

    The single triangle is reported as ``IsThreeCycle`` so callers can dispatch on it.
    """
    problems: List[BarnetteError] = []
    if g.vertex_count < 3 or not is_connected(g):
        problems.append(NotTriangulation("A triangulation needs at least 3 connected vertices",
                                         {"vertices": g.vertex_count}))
        return problems

    long_faces = [f.id for f in g.faces if f.length != 3]
    if long_faces:
        problems.append(NotTriangulation(f"{len(long_faces)} faces are not triangles", {"faces": long_faces}))
    if g.edge_count != 3 * g.vertex_count - 6:
        problems.append(NotTriangulation(
            f"|E|={g.edge_count} but 3|V|-6={3 * g.vertex_count - 6}",
            {"edges": g.edge_count, "vertices": g.vertex_count},
        ))
    for v in g.vertices:
        if g.degree(v) % 2:
            problems.append(OddDegree(f"Vertex {v} has odd degree {g.degree(v)}", {"vertex": v, "degree": g.degree(v)}))

    if not problems and g.vertex_count == 3:
        problems.append(IsThreeCycle("The graph is a single triangle", {"vertices": list(g.vertices)}))
    return problems


def ensure_eulerian_triangulation(g: PlaneGraph, allow_three_cycle: bool = False) -> None:
    """Raise the first violation reported by ``validate_eulerian_triangulation``."""
    for problem in validate_eulerian_triangulation(g):
        if allow_three_cycle and isinstance(problem, IsThreeCycle):
            continue
        raise problem


def diagnostic_lines(problems: List[BarnetteError]) -> List[str]:
    """``OK`` or one ``ERR <code> <details>`` line per violation."""
    if not problems:
        return ["OK"]
    lines = []
    for problem in problems:
        details = " ".join(f"{k}={v}" for k, v in sorted(problem.details.items()))
        lines.append(f"ERR {problem.code} {details}".rstrip())
    return lines


def three_coloring(g: PlaneGraph, seed_face: int = 0) -> TriColoring:
    """Propagate (1, 2, 3) from one face across every shared edge."""
    if g.vertex_count == 0:
        return TriColoring({})
    face = g.faces[seed_face]
    if face.length != 3:
        raise ColoringConflict(f"Seed face {seed_face} is not a triangle", {"face": list(face.vertices)})

    colour: Dict[int, int] = {v: i + 1 for i, v in enumerate(face.vertices)}
    done = {seed_face}
    queue = deque(face.darts)
    while queue:
        u, v = queue.popleft()
        for fid in g.faces_through_edge(u, v):
            if fid in done:
                continue
            done.add(fid)
            third = [w for w in g.faces[fid].vertices if w not in (u, v)]
            if len(third) != 1:
                raise ColoringConflict(f"Face {fid} is not a triangle", {"face": list(g.faces[fid].vertices)})
            w = third[0]
            want = 6 - colour[u] - colour[v]
            if w in colour:
                if colour[w] != want:
                    raise ColoringConflict(
                        f"Vertex {w} forced to colours {colour[w]} and {want}",
                        {"vertex": w, "colours": [colour[w], want], "face": fid},
                    )
            else:
                colour[w] = want
            queue.extend(g.faces[fid].darts)

    if len(colour) != g.vertex_count:
        missing = sorted(set(g.vertices) - set(colour))
        raise ColoringConflict("Propagation did not reach every vertex", {"missing": missing})
    for u, v in g.edges:
        if colour[u] == colour[v]:
            raise ColoringConflict(f"Edge {u}-{v} is monochromatic", {"edge": [u, v]})
    return TriColoring(colour)


def colorings_equivalent(a: TriColoring, b: TriColoring) -> bool:
    """Equal up to renaming of the three colours."""
    return a.partition() == b.partition()


def big_small_split(g: PlaneGraph) -> BigSmallSplit:
    """Big: degree at least 6. Small: the rest (degree 4, or 2 on the triangle)."""
    big = frozenset(v for v in g.vertices if g.degree(v) >= 6)
    return BigSmallSplit(big=big, small=frozenset(g.vertices) - big)


def _double_wheel_hubs(g: PlaneGraph, hubs: Tuple[int, int]) -> Optional[int]:
    """Half the rim length when ``g`` minus ``hubs`` is an induced rim cycle seen by both hubs."""
    h, o = hubs
    if g.has_edge(h, o):
        return None
    rim = [v for v in g.vertices if v not in hubs]
    if len(rim) < 4 or len(rim) % 2:
        return None
    rim_graph = g.nx_graph.subgraph(rim)
    if any(d != 2 for _, d in rim_graph.degree()) or not nx.is_connected(rim_graph):
        return None
    if not all(g.has_edge(v, h) and g.has_edge(v, o) for v in rim):
        return None
    return len(rim) // 2


def classify_family(g: PlaneGraph, split: Optional[BigSmallSplit] = None) -> FamilyTag:
    """Triangle, double wheel (octahedron included) or at least three big vertices."""
    split = split or big_small_split(g)
    if g.vertex_count == 3:
        return ThreeCycle()
    if len(split.big) >= 3:
        return GeneralBig3(big_count=len(split.big))

    if not split.big and g.vertex_count == 6:
        low = g.vertices[0]
        opposite = [v for v in g.vertices if v != low and not g.has_edge(low, v)]
        if len(opposite) == 1:
            hubs = (low, opposite[0])
            if _double_wheel_hubs(g, hubs) == 2:
                return DoubleWheel(l=2, hubs=hubs)
    if len(split.big) == 2:
        hubs = tuple(sorted(split.big))
        half = _double_wheel_hubs(g, hubs)
        if half is not None:
            return DoubleWheel(l=half, hubs=hubs)

    raise UnclassifiedFamily(
        f"{len(split.big)} big vertices on {g.vertex_count} vertices fit no family",
        {"big": sorted(split.big), "vertices": g.vertex_count},
    )


def theta_certificate(j: PlaneGraph, types: Optional[TriColoring] = None) -> Dict[str, bool]:
    """Checks behind membership in the family of 2-connected 3/4-faced 3-colourable plane graphs."""
    proper = True
    if types is not None:
        proper = all(v in types.class_of for v in j.vertices) and all(
            types[u] != types[v] for u, v in j.edges
        )
    return {
        "two_connected": is_k_connected(j, 2),
        "faces_3_or_4": all(f.length in (3, 4) for f in j.faces),
        "three_coloured": proper,
    }


def big_subgraph(
    g: PlaneGraph,
    split: Optional[BigSmallSplit] = None,
    coloring: Optional[TriColoring] = None,
) -> Tuple[PlaneGraph, TriColoring]:
    """G[B] with the restricted colouring, certified 2-connected with faces of length 3 or 4."""
    split = split or big_small_split(g)
    family = classify_family(g, split)
    if not isinstance(family, GeneralBig3):
        raise PreconditionFailed(
            f"G[B] needs at least three big vertices, family is {family.name}", {"big": len(split.big)}
        )
    coloring = coloring or three_coloring(g)
    j = induced_plane_subgraph(g, split.big)
    types = coloring.restrict(j.vertices)
    certificate = theta_certificate(j, types)
    if not all(certificate.values()):
        raise ThetaViolation("G[B] fails the theta certificate", {"certificate": certificate})
    logger.debug("G[B] has %d vertices and %d faces", j.vertex_count, j.face_count)
    return j, types


def corollary21_hypothesis(g: PlaneGraph, split: Optional[BigSmallSplit] = None) -> bool:
    """Every facial triangle has both a small and a big vertex."""
    split = split or big_small_split(g)
    for face in g.faces:
        verts = set(face.vertices)
        if not (verts & split.small) or not (verts & split.big):
            return False
    return True


def big_neighbour_bound(g: PlaneGraph, split: Optional[BigSmallSplit] = None) -> int:
    """Largest number of big neighbours of any vertex."""
    split = split or big_small_split(g)
    return max((sum(1 for u in g.neighbours(v) if u in split.big) for v in g.vertices), default=0)


def _single_small_path(g: PlaneGraph, v: int) -> SmallPath:
    n0, n1, n2, n3 = g.rotations[v]
    options = [
        SmallPath(vertices=(min(n0, n2), v, max(n0, n2)), flanks=tuple(sorted((n1, n3)))),
        SmallPath(vertices=(min(n1, n3), v, max(n1, n3)), flanks=tuple(sorted((n0, n2)))),
    ]
    # end pair holding the smallest id wins
    return min(options, key=lambda p: min(p.ends))


def _long_small_path(g: PlaneGraph, split: BigSmallSplit, inner: List[int]) -> SmallPath:
    common = set(split.big)
    for v in inner:
        common &= set(g.neighbours(v))
    if len(common) != 2:
        raise ThetaViolation(
            f"Small path {inner} has {len(common)} common big neighbours", {"inner": inner, "common": sorted(common)}
        )
    flanks = tuple(sorted(common))
    ends = []
    for v in (inner[0], inner[-1]):
        others = [u for u in g.neighbours(v) if u in split.big and u not in common]
        if len(others) != 1:
            raise ThetaViolation(f"Small path end {v} has no unique big end", {"vertex": v, "ends": others})
        ends.append(others[0])
    return SmallPath(vertices=(ends[0], *inner, ends[1]), flanks=flanks)


def small_path_cover(
    g: PlaneGraph,
    split: Optional[BigSmallSplit] = None,
) -> SmallPathCover:
    """Paths with big ends and small inner vertices covering every small vertex once."""
    split = split or big_small_split(g)
    family = classify_family(g, split)
    if not isinstance(family, GeneralBig3):
        raise PreconditionFailed(
            f"Small path cover needs at least three big vertices, family is {family.name}", {"big": len(split.big)}
        )
    for face in g.faces:
        if all(v in split.small for v in face.vertices):
            raise AllSmallTriangle(
                f"Face {face.id} has only small vertices", {"face": list(face.vertices)}
            )

    small_graph = g.nx_graph.subgraph(split.small)
    paths = []
    for component in sorted(nx.connected_components(small_graph), key=min):
        sub = small_graph.subgraph(component)
        if len(component) == 1:
            paths.append(_single_small_path(g, next(iter(component))))
            continue
        if not nx.is_tree(sub) or max(d for _, d in sub.degree()) > 2:
            raise UnclassifiedFamily(
                f"Small component {sorted(component)} is not a path", {"component": sorted(component)}
            )
        start = min(v for v, d in sub.degree() if d == 1)
        inner = list(nx.dfs_preorder_nodes(sub, start))
        paths.append(_long_small_path(g, split, inner))

    cover = SmallPathCover(paths=tuple(paths))
    for path in cover.paths:
        for flank in path.flanks:
            if not all(g.has_edge(flank, v) for v in path.vertices):
                raise ThetaViolation(
                    f"Flank {flank} misses a vertex of path {path.vertices}",
                    {"path": list(path.vertices), "flank": flank},
                )
    if cover.inner_vertices != split.small:
        raise ThetaViolation("Small path cover is not exact", {"uncovered": sorted(split.small - cover.inner_vertices)})
    return cover
