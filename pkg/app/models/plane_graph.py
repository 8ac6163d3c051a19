from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Mapping, Optional, Tuple

import networkx as nx

Dart = Tuple[int, int]
Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Undirected edge as a sorted pair."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """A face of a plane graph, identified by its minimal dart."""

    id: int
    darts: Tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(u for u, _ in self.darts)

    @property
    def edges(self) -> FrozenSet[Edge]:
        return frozenset(edge_key(u, v) for u, v in self.darts)


@dataclass(frozen=True)
class EdgeCorrespondence:
    """Bijection between primal edges and dual edges."""

    primal_to_dual: Mapping[Edge, Edge]
    dual_to_primal: Mapping[Edge, Edge]

    def dual_of(self, u: int, v: int) -> Edge:
        return self.primal_to_dual[edge_key(u, v)]

    def primal_of(self, f: int, g: int) -> Edge:
        return self.dual_to_primal[edge_key(f, g)]

    def __len__(self) -> int:
        return len(self.primal_to_dual)


@dataclass(frozen=True)
class PlaneGraph:
    """Plane graph given by a rotation system.

    ``rotations`` maps each vertex to the cyclic (clockwise) sequence of its
    neighbours. Instances are immutable; derived structure is cached. Build
    validated instances with ``app.services.plane_core.build_plane_graph``.
    """

    rotations: Mapping[int, Tuple[int, ...]]
    name: Optional[str] = field(default=None, compare=False)

    @property
    def vertex_count(self) -> int:
        return len(self.rotations)

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.rotations))

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        found = set()
        for u, nbrs in self.rotations.items():
            for v in nbrs:
                found.add(edge_key(u, v))
        return tuple(sorted(found))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbours(self, v: int) -> Tuple[int, ...]:
        return self.rotations[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.rotations and v in self._neighbour_sets[u]

    @cached_property
    def _neighbour_sets(self) -> Dict[int, FrozenSet[int]]:
        return {v: frozenset(nbrs) for v, nbrs in self.rotations.items()}

    @cached_property
    def _position(self) -> Dict[Dart, int]:
        return {(v, u): i for v, nbrs in self.rotations.items() for i, u in enumerate(nbrs)}

    def successor(self, v: int, u: int) -> int:
        """Neighbour following ``u`` in the rotation at ``v``."""
        nbrs = self.rotations[v]
        return nbrs[(self._position[(v, u)] + 1) % len(nbrs)]

    def predecessor(self, v: int, u: int) -> int:
        nbrs = self.rotations[v]
        return nbrs[(self._position[(v, u)] - 1) % len(nbrs)]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return (v, self.successor(v, u))

    def darts(self) -> Iterator[Dart]:
        for u in self.vertices:
            for v in self.rotations[u]:
                yield (u, v)

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        seen = set()
        cycles: List[Tuple[Dart, ...]] = []
        for start in sorted(self.darts()):
            if start in seen:
                continue
            cycle = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                cycle.append(dart)
                dart = self.next_dart(dart)
            # rotate so the minimal dart leads
            low = cycle.index(min(cycle))
            cycles.append(tuple(cycle[low:] + cycle[:low]))
        cycles.sort(key=lambda c: c[0])
        return tuple(Face(id=i, darts=c) for i, c in enumerate(cycles))

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @cached_property
    def face_of_dart(self) -> Dict[Dart, int]:
        return {d: f.id for f in self.faces for d in f.darts}

    def faces_through_edge(self, u: int, v: int) -> Tuple[int, int]:
        """Ids of the faces on the two sides of edge uv (equal for a bridge)."""
        return self.face_of_dart[(u, v)], self.face_of_dart[(v, u)]

    def face_with_corner(self, prev: int, v: int, nxt: int) -> Optional[Face]:
        """Face traversing prev -> v -> nxt, if the corner exists."""
        fid = self.face_of_dart.get((prev, v))
        if fid is None or self.successor(v, prev) != nxt:
            return None
        return self.faces[fid]

    @cached_property
    def nx_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.edges)
        return graph

    def to_networkx(self) -> nx.Graph:
        return self.nx_graph.copy()

    @property
    def max_degree(self) -> int:
        return max((len(n) for n in self.rotations.values()), default=0)

    @property
    def min_degree(self) -> int:
        return min((len(n) for n in self.rotations.values()), default=0)

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<PlaneGraph {label}V={self.vertex_count} E={self.edge_count}>"

    def __hash__(self) -> int:
        return hash(tuple((v, self.rotations[v]) for v in self.vertices))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return dict(self.rotations) == dict(other.rotations)
