from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from app.models.coloring import ForestBipartition
from app.models.plane_graph import Edge, PlaneGraph, edge_key


@dataclass(frozen=True)
class HamiltonCycle:
    """Hamilton cycle of G* given as a cyclic sequence of face ids of G.

    ``crossing_edges`` are the primal edges whose duals form the cycle.
    """

    dual_vertices: Tuple[int, ...]
    crossing_edges: FrozenSet[Edge]

    @property
    def length(self) -> int:
        return len(self.dual_vertices)

    def dual_edges(self) -> FrozenSet[Edge]:
        seq = self.dual_vertices
        return frozenset(edge_key(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))

    def canonical_edges(self) -> FrozenSet[Edge]:
        """Edge set of the cycle in G*; equal for rotations and reflections."""
        return self.dual_edges()

    def to_line(self) -> str:
        return " ".join(str(f) for f in self.dual_vertices)


@dataclass(frozen=True)
class LowerBound:
    """Distinct Hamilton cycles obtained from independent choices on disjoint faces."""

    k: int
    chosen_faces: Tuple[int, ...]
    cycles: Tuple[HamiltonCycle, ...]

    @property
    def guaranteed(self) -> int:
        return 2 ** self.k


@dataclass(frozen=True)
class HamiltonResult:
    """Outcome of the constructive pipeline on one triangulation.

    ``cubic_cycle`` is the cycle as vertices of the cubic input graph, when
    the input was the cubic dual rather than the triangulation.
    """

    triangulation: PlaneGraph
    cycle: HamiltonCycle
    method: str
    partition: ForestBipartition
    cubic_cycle: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class HamiltonEnumeration:
    """Brute-force Hamilton cycles, each as its edge set."""

    count: int
    cycles: Tuple[FrozenSet[Edge], ...] = ()

    def __contains__(self, cycle: HamiltonCycle) -> bool:
        return cycle.canonical_edges() in self.cycles


@dataclass(frozen=True)
class ForestEnumeration:
    """Unordered vertex 2-partitions whose parts both induce forests."""

    count: int
    two_tree_count: int
    partitions: Tuple[ForestBipartition, ...] = ()
