"""Instance construction: fixed families, face-filling synthesis and the corpus."""
import logging
from importlib import resources
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import yaml

from app.core.errors import (
    ContractBreach,
    InvalidInputError,
    MinDegreeViolation,
    NotTheta,
)
from app.models.coloring import Label, Roles, TriColoring, WorkColoring
from app.models.plane_graph import PlaneGraph
from app.models.recipe import CorpusInstance, Gadget, StressFixture, SynthesisRecipe, ThetaSeed
from app.services.plane_core import build_plane_graph, is_bipartite
from app.services.triangulation import (
    big_small_split,
    ensure_eulerian_triangulation,
    theta_certificate,
)

logger = logging.getLogger(__name__)

Rotations = Dict[int, List[int]]


# Fixed families

def double_wheel(l: int) -> PlaneGraph:
    """Rim cycle of length 2l joined to two hubs, one inside and one outside."""
    if l < 2:
        raise InvalidInputError(f"double_wheel needs l >= 2, got {l}", {"l": l})
    n = 2 * l
    h, o = n, n + 1
    rot: Rotations = {i: [(i + 1) % n, h, (i - 1) % n, o] for i in range(n)}
    rot[h] = list(range(n))
    rot[o] = list(reversed(range(n)))
    name = "octahedron" if l == 2 else f"double_wheel_{l}"
    return build_plane_graph(rot, name=name)


def octahedron() -> PlaneGraph:
    return double_wheel(2)


def prism(k: int) -> PlaneGraph:
    """Outer k-cycle 0..k-1 and inner k-cycle k..2k-1 joined by spokes."""
    if k < 3:
        raise InvalidInputError(f"prism needs k >= 3, got {k}", {"k": k})
    rot: Rotations = {}
    for i in range(k):
        rot[i] = [(i + 1) % k, k + i, (i - 1) % k]
        rot[k + i] = [i, k + (i + 1) % k, k + (i - 1) % k]
    return build_plane_graph(rot, name=f"prism_{k}")


def cube() -> PlaneGraph:
    return build_plane_graph(prism(4).rotations, name="cube")


def k4() -> PlaneGraph:
    return build_plane_graph({0: [1, 3, 2], 1: [2, 3, 0], 2: [0, 3, 1], 3: [0, 1, 2]}, name="k4")


def triangle() -> PlaneGraph:
    return build_plane_graph({0: [1, 2], 1: [2, 0], 2: [0, 1]}, name="triangle")


def cycle_graph(n: int) -> PlaneGraph:
    if n < 3:
        raise InvalidInputError(f"cycle_graph needs n >= 3, got {n}", {"n": n})
    return build_plane_graph({i: [(i + 1) % n, (i - 1) % n] for i in range(n)}, name=f"cycle_{n}")


def bowtie() -> PlaneGraph:
    """Two triangles sharing vertex 0."""
    return build_plane_graph({0: [1, 2, 3, 4], 1: [2, 0], 2: [0, 1], 3: [4, 0], 4: [0, 3]}, name="bowtie")


def theta_k23() -> PlaneGraph:
    """K_{2,3}: the 4-cycle 0-1-2-3 with apex 4 joined to 1 and 3."""
    rot = {0: [1, 3], 1: [0, 4, 2], 2: [1, 3], 3: [2, 4, 0], 4: [1, 3]}
    return build_plane_graph(rot, name="theta_k23")


def twin_lens() -> PlaneGraph:
    """Poles 0 and 1 joined through the edges 2-3 and 4-5; {0, 1} is a 2-cut."""
    rot = {
        0: [2, 3, 4, 5],
        1: [5, 4, 3, 2],
        2: [3, 0, 1],
        3: [0, 2, 1],
        4: [5, 0, 1],
        5: [0, 4, 1],
    }
    return build_plane_graph(rot, name="twin_lens")


def cube_with_diagonal() -> PlaneGraph:
    """The cube with face 0-1-2-3 split by the chord 0-2."""
    rot = {v: list(nbrs) for v, nbrs in prism(4).rotations.items()}
    _insert_after(rot, 0, 3, [2])
    _insert_after(rot, 2, 1, [0])
    return build_plane_graph(rot, name="cube_with_diagonal")


def capped_square() -> PlaneGraph:
    """Square 0-1-2-3, a cap vertex 4..7 on each side, and apex 8 over the caps."""
    rot = {
        0: [1, 3, 7, 4],
        1: [5, 2, 0, 4],
        2: [6, 3, 1, 5],
        3: [2, 6, 7, 0],
        4: [1, 0, 8],
        5: [8, 2, 1],
        6: [8, 3, 2],
        7: [3, 8, 0],
        8: [4, 7, 6, 5],
    }
    return build_plane_graph(rot, name="capped_square")


def medial_graph(g: PlaneGraph, name: Optional[str] = None) -> PlaneGraph:
    """One vertex per edge; edges consecutive on a face become adjacent."""
    index = {e: i for i, e in enumerate(g.edges)}

    def e(u: int, v: int) -> int:
        return index[(u, v) if u < v else (v, u)]

    rot: Rotations = {}
    for u, v in g.edges:
        rot[e(u, v)] = [
            e(v, g.predecessor(v, u)),
            e(u, g.successor(u, v)),
            e(u, g.predecessor(u, v)),
            e(v, g.successor(v, u)),
        ]
    return build_plane_graph(rot, name=name or f"medial({g.name})")


def cuboctahedron() -> PlaneGraph:
    return medial_graph(cube(), name="cuboctahedron")


def four_cycle_core(k: int = 3) -> PlaneGraph:
    """Eulerian triangulation whose big vertices 0-1-2-3 span a 4-cycle.

    A path of ``k`` small vertices runs 0 to 2 inside and 1 to 3 outside.
    """
    if k < 3 or k % 2 == 0:
        raise InvalidInputError(f"four_cycle_core needs an odd k >= 3, got {k}", {"k": k})
    rot = {v: list(nbrs) for v, nbrs in cycle_graph(4).rotations.items()}
    _insert_path(rot, (0, 1, 2, 3), list(range(4, 4 + k)))
    _insert_path(rot, (1, 0, 3, 2), list(range(4 + k, 4 + 2 * k)))
    return build_plane_graph(rot, name=f"four_cycle_core_{k}")


def from_drawing(
    points: Mapping[int, Tuple[float, float]], edges: Iterable[Tuple[int, int]], name: Optional[str] = None
) -> PlaneGraph:
    """Plane graph of a straight-line drawing; neighbours are ordered clockwise by angle."""
    nbrs: Dict[int, List[int]] = {v: [] for v in points}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot: Rotations = {}
    for v, around in nbrs.items():
        offsets = np.array([points[u] for u in around], dtype=float) - np.array(points[v], dtype=float)
        angles = np.arctan2(offsets[:, 1], offsets[:, 0])
        rot[v] = [around[i] for i in np.argsort(-angles, kind="stable")]
    return build_plane_graph(rot, name=name)


def box(x: int, y: int, z: int) -> PlaneGraph:
    """Grid quadrangulation of the surface of an x by y by z box."""
    if min(x, y, z) < 1:
        raise InvalidInputError(f"box needs positive sides, got {(x, y, z)}", {"sides": [x, y, z]})
    sides = (x, y, z)

    def on_boundary(p: Tuple[int, ...], axis: int) -> bool:
        return p[axis] in (0, sides[axis])

    points = [p for p in product(range(x + 1), range(y + 1), range(z + 1)) if any(on_boundary(p, k) for k in range(3))]
    index = {p: i for i, p in enumerate(points)}
    surface = nx.Graph()
    surface.add_nodes_from(range(len(points)))
    for p in points:
        for axis in range(3):
            q = tuple(c + 1 if k == axis else c for k, c in enumerate(p))
            if q not in index:
                continue
            if any(on_boundary(p, k) for k in range(3) if k != axis):
                surface.add_edge(index[p], index[q])
    is_planar, embedding = nx.check_planarity(surface)
    if not is_planar:
        raise ContractBreach(f"Surface grid of box {sides} is not planar", {"sides": list(sides)})
    rot: Rotations = {v: list(embedding.neighbors_cw_order(v)) for v in surface.nodes}
    return build_plane_graph(rot, name=f"box_{x}_{y}_{z}")


BUILDERS = {
    "double_wheel": double_wheel,
    "octahedron": octahedron,
    "prism": prism,
    "cube": cube,
    "k4": k4,
    "triangle": triangle,
    "cycle_graph": cycle_graph,
    "bowtie": bowtie,
    "theta_k23": theta_k23,
    "twin_lens": twin_lens,
    "cube_with_diagonal": cube_with_diagonal,
    "capped_square": capped_square,
    "cuboctahedron": cuboctahedron,
    "four_cycle_core": four_cycle_core,
    "box": box,
}


def find_three_coloring(j: PlaneGraph) -> Optional[TriColoring]:
    """Proper colouring with classes 1..3 by backtracking in vertex order, or None."""
    order = list(j.vertices)
    colour: Dict[int, int] = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {colour[u] for u in j.neighbours(v) if u in colour}
        for c in (1, 2, 3):
            if c not in used:
                colour[v] = c
                if place(i + 1):
                    return True
                del colour[v]
        return False

    return TriColoring(dict(colour)) if place(0) else None


def bipartition_types(j: PlaneGraph) -> TriColoring:
    """Classes 1 and 2 from the bipartition; the side of the smallest vertex is 1."""
    sides = is_bipartite(j)
    if sides is None:
        raise InvalidInputError(f"{j!r} is not bipartite")
    first, second = sides
    return TriColoring({**{v: 1 for v in first}, **{v: 2 for v in second}})


# Face-filling synthesis

def _insert_after(rot: Rotations, x: int, anchor: int, new: Sequence[int]) -> None:
    nbrs = rot[x]
    i = nbrs.index(anchor)
    rot[x] = nbrs[: i + 1] + list(new) + nbrs[i + 1 :]


def _insert_path(rot: Rotations, face: Tuple[int, int, int, int], inner: Sequence[int]) -> None:
    """Path a-x1-..-xm-c inside face (a, b, c, d), every xi joined to b and d."""
    a, b, c, d = face
    for i, x in enumerate(inner):
        prev = inner[i - 1] if i > 0 else a
        nxt = inner[i + 1] if i < len(inner) - 1 else c
        rot[x] = [prev, d, nxt, b]
    _insert_after(rot, a, d, [inner[0]])
    _insert_after(rot, b, a, list(inner))
    _insert_after(rot, c, b, [inner[-1]])
    _insert_after(rot, d, c, list(reversed(inner)))


def _insert_triangle(rot: Rotations, face: Tuple[int, int, int], new: Sequence[int]) -> None:
    """Triangle x'y'z' inside face (x, y, z) with the 6-cycle x x' y y' z z'."""
    x, y, z = face
    x1, y1, z1 = new
    rot[x1] = [y, x, z1, y1]
    rot[y1] = [z, y, x1, z1]
    rot[z1] = [x, z, y1, x1]
    _insert_after(rot, x, z, [z1, x1])
    _insert_after(rot, y, x, [x1, y1])
    _insert_after(rot, z, y, [y1, z1])


def _apply_gadget(rot: Rotations, types: Dict[int, int], gadget: Gadget) -> None:
    if gadget.kind == "triangle":
        _insert_triangle(rot, gadget.face, gadget.new_vertices)
        x, y, z = gadget.face
        x1, y1, z1 = gadget.new_vertices
        types.update({x1: types[z], y1: types[x], z1: types[y]})
        return
    a, b = gadget.face[0], gadget.face[1]
    _insert_path(rot, gadget.face, gadget.new_vertices)
    if gadget.kind == "path2":
        types[gadget.new_vertices[0]] = 6 - types[a] - types[b]
    else:
        v, w = gadget.new_vertices
        c = gadget.face[2]
        types[v] = types[c]
        types[w] = types[a]


def _plan_quad(face: Tuple[int, ...], types: TriColoring) -> Tuple[str, Tuple[int, int, int, int]]:
    """Gadget kind and the face rotated so the path runs from position 0 to 2."""
    f0, f1, f2, f3 = face
    even_same = types.same_type(f0, f2)
    odd_same = types.same_type(f1, f3)
    if even_same and odd_same:
        # path joins the diagonal holding the smallest id
        if min(f0, f2) < min(f1, f3):
            return "path2", (f0, f1, f2, f3)
        return "path2", (f1, f2, f3, f0)
    if odd_same:
        return "path3", (f0, f1, f2, f3)
    if even_same:
        return "path3", (f1, f2, f3, f0)
    raise NotTheta(f"Face {face} has no same-type diagonal", {"face": list(face)})


def lemma33_synthesize(j: PlaneGraph, types: TriColoring) -> Tuple[PlaneGraph, SynthesisRecipe]:
    """Eulerian triangulation whose big vertices induce ``j`` with the given colour classes."""
    certificate = theta_certificate(j, types)
    if not all(certificate.values()):
        raise NotTheta(f"{j!r} is not in the theta family", {"certificate": certificate})
    if j.min_degree < 3:
        low = [v for v in j.vertices if j.degree(v) < 3]
        raise MinDegreeViolation(f"Minimum degree {j.min_degree} < 3", {"vertices": low})

    next_id = max(j.vertices) + 1
    gadgets = []
    for face in j.faces:
        if face.length == 4:
            kind, oriented = _plan_quad(face.vertices, types)
            size = 1 if kind == "path2" else 2
            gadgets.append(Gadget(
                kind=kind,
                face=oriented,
                ends=(oriented[0], oriented[2]),
                flanks=(oriented[1], oriented[3]),
                new_vertices=tuple(range(next_id, next_id + size)),
            ))
            next_id += size
        else:
            gadgets.append(Gadget(
                kind="triangle",
                face=face.vertices,
                ends=(),
                flanks=(),
                new_vertices=(next_id, next_id + 1, next_id + 2),
            ))
            next_id += 3

    recipe_seed = SynthesisRecipe(seed=j, seed_types=types, gadgets=tuple(gadgets), types={})
    g, all_types = _replay(recipe_seed)
    recipe = SynthesisRecipe(seed=j, seed_types=types, gadgets=tuple(gadgets), types=all_types)
    _check_synthesis(j, g, TriColoring(all_types))
    logger.debug("Synthesised %r from %r with %d gadgets", g, j, len(gadgets))
    return g, recipe


def _replay(recipe: SynthesisRecipe) -> Tuple[PlaneGraph, Dict[int, int]]:
    rot = {v: list(nbrs) for v, nbrs in recipe.seed.rotations.items()}
    types = dict(recipe.seed_types.class_of)
    for gadget in recipe.gadgets:
        _apply_gadget(rot, types, gadget)
    name = f"synth({recipe.seed.name})" if recipe.seed.name else None
    return build_plane_graph(rot, name=name), types


def replay_recipe(recipe: SynthesisRecipe) -> PlaneGraph:
    """Rebuild the synthesised triangulation from its seed and gadget log."""
    return _replay(recipe)[0]


def _check_synthesis(j: PlaneGraph, g: PlaneGraph, types: TriColoring) -> None:
    ensure_eulerian_triangulation(g)
    split = big_small_split(g)
    if split.big != frozenset(j.vertices):
        raise ContractBreach(
            "Seed vertices and big vertices differ",
            {"big": sorted(split.big), "seed": list(j.vertices)},
        )
    for u, v in g.edges:
        if types[u] == types[v]:
            raise ContractBreach(f"Extended colouring is improper on {u}-{v}", {"edge": [u, v]})


# Seed library and corpus

def _load_seed_entries() -> List[dict]:
    text = resources.files("app.data").joinpath("theta_seeds.yaml").read_text()
    return yaml.safe_load(text)["seeds"]


def build_seed(entry: Mapping) -> ThetaSeed:
    builder = BUILDERS[entry["builder"]]
    graph = builder(*entry.get("args", []))
    types = find_three_coloring(graph)
    if types is None:
        raise NotTheta(f"Seed {entry['name']} is not 3-colourable", {"seed": entry["name"]})
    retype = {int(v): int(c) for v, c in (entry.get("retype") or {}).items()}
    if retype:
        types = TriColoring({**types.class_of, **retype})
    return ThetaSeed(name=entry["name"], graph=graph, types=types)


def theta_library() -> List[ThetaSeed]:
    """The curated seeds of ``app/data/theta_seeds.yaml``."""
    return [build_seed(entry) for entry in _load_seed_entries()]


def cube14() -> Tuple[PlaneGraph, SynthesisRecipe]:
    """The synthesis of the cube with its bipartition as colour classes."""
    q3 = cube()
    return lemma33_synthesize(q3, bipartition_types(q3))


def _retyped_cube_variants(seed: int, count: int) -> List[ThetaSeed]:
    rng = np.random.default_rng(seed)
    q3 = cube()
    base = bipartition_types(q3)
    variants = []
    for v in rng.choice(q3.vertex_count, size=count, replace=False):
        v = int(v)
        variants.append(ThetaSeed(
            name=f"cube_random_retype_{v}",
            graph=q3,
            types=TriColoring({**base.class_of, v: 3}),
        ))
    return variants


def corpus(seed: int = 0, max_vertices: Optional[int] = None, extra: int = 2) -> List[CorpusInstance]:
    """Deterministic catalogue: double wheels, CUBE14, syntheses of the seed library."""
    instances = [CorpusInstance(f"double_wheel_{l}", double_wheel(l), "double_wheel") for l in range(2, 7)]
    g14, recipe14 = cube14()
    instances.append(CorpusInstance("cube14", g14, "synthesis", recipe14))
    instances.append(CorpusInstance("four_cycle_core_3", four_cycle_core(3), "four_cycle_core"))

    for theta_seed in theta_library() + _retyped_cube_variants(seed, extra):
        g, recipe = lemma33_synthesize(theta_seed.graph, theta_seed.types)
        instances.append(CorpusInstance(f"synth_{theta_seed.name}", g, "synthesis", recipe))

    if max_vertices is not None:
        instances = [i for i in instances if i.graph.vertex_count <= max_vertices]
    return instances


def relabelled_copies(g: PlaneGraph, seed: int, count: int) -> Iterable[Dict[int, int]]:
    """Random vertex permutations of ``g``."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        perm = rng.permutation(g.vertex_count)
        yield {v: int(perm[i]) for i, v in enumerate(g.vertices)}


# Engine stress fixtures

_OVERLAP_POINTS = {
    0: (0, 0), 1: (-2, 0), 2: (0, 2), 3: (2, 0), 4: (0, -2), 5: (-2, -2), 6: (2, 2), 7: (2, -2),
}
_OVERLAP_EDGES = [(5, 1), (1, 0), (0, 2), (2, 6), (0, 3), (3, 6), (0, 4), (4, 5), (3, 7), (7, 4)]


def _stress_fixture(
    name: str,
    points: Mapping[int, Tuple[float, float]],
    edges: Sequence[Tuple[int, int]],
    roles: Tuple[Sequence[int], Sequence[int], Sequence[int]],
    alpha: Sequence[int],
    kind: str,
) -> StressFixture:
    graph = from_drawing(points, edges, name=name)
    labels = {v: Label.ALPHA if v in alpha else Label.BETA for v in graph.vertices}
    return StressFixture(
        name=name,
        graph=graph,
        roles=Roles(*(frozenset(r) for r in roles)),
        coloring=WorkColoring(labels),
        kind=kind,
    )


def engine_stress_fixtures() -> Dict[str, StressFixture]:
    """Small drawn graphs whose colourings trigger each engine step once.

    The three overlap fixtures share the faces 0-1-5-4, 0-4-7-3 and the beta
    face 0-3-6-2; they differ around q = 4. The last one has an independent
    beta 4-cycle and a single bad vertex 0.
    """
    fixtures = [
        _stress_fixture(
            "overlap_case_a",
            {**_OVERLAP_POINTS, 8: (-3, 3)},
            _OVERLAP_EDGES + [(6, 8), (8, 5)],
            ((1, 2, 3, 4, 8), (0, 5, 6), (7,)),
            alpha=(4, 7),
            kind="L43a",
        ),
        _stress_fixture(
            "overlap_case_b",
            {**_OVERLAP_POINTS, 8: (0, -4), 9: (-2, -4), 10: (4, -1)},
            _OVERLAP_EDGES + [(4, 8), (8, 9), (9, 5), (6, 10), (10, 8)],
            ((1, 2, 3, 4, 9, 10), (0, 5, 6, 8), (7,)),
            alpha=(4, 7),
            kind="L43b",
        ),
        _stress_fixture(
            "overlap_case_c",
            {**_OVERLAP_POINTS, 8: (-3, 3), 9: (0, -4), 10: (-2, -4)},
            _OVERLAP_EDGES + [(6, 8), (8, 5), (4, 9), (9, 10), (10, 5)],
            ((1, 2, 3, 4, 8, 10), (0, 5, 6, 9), (7,)),
            alpha=(4, 7, 10),
            kind="L43c",
        ),
        _stress_fixture(
            "bad_vertex_cycle",
            {
                0: (0, 0), 1: (-2, 2), 2: (2, 2), 3: (-2, -2), 4: (2, -2),
                5: (0, -4), 6: (-1, 4), 7: (0, 5), 8: (1, 4), 9: (0, 3),
            },
            [(0, 1), (0, 2), (0, 3), (0, 4), (3, 5), (5, 4), (1, 6), (2, 8), (6, 7), (7, 8), (8, 9), (9, 6)],
            ((0, 5, 6, 8), (3, 4, 7, 9), (1, 2)),
            alpha=(0, 1, 2),
            kind="L46",
        ),
    ]
    return {fixture.name: fixture for fixture in fixtures}
