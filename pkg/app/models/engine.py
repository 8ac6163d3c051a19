from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from app.models.plane_graph import Edge
from app.services.plane_core import Block


@dataclass(frozen=True)
class BetaCycleReport:
    """Cycle structure of the subgraph induced by the beta-labelled vertices.

    ``cycles`` holds the blocks that are single cycles; ``complex_blocks``
    the blocks with more edges than vertices. ``independent`` runs parallel
    to ``cycles``.
    """

    cycles: Tuple[FrozenSet[int], ...] = ()
    independent: Tuple[bool, ...] = ()
    complex_blocks: Tuple[Block, ...] = ()
    cyclic_edges: FrozenSet[Edge] = frozenset()

    @property
    def cyclic_vertices(self) -> FrozenSet[int]:
        """Vertices lying on at least one beta-cycle."""
        verts = set()
        for cycle in self.cycles:
            verts |= cycle
        for block in self.complex_blocks:
            verts |= block.vertices
        return frozenset(verts)

    @property
    def measure(self) -> Tuple[int, int]:
        return len(self.cyclic_edges), len(self.cycles)

    @property
    def all_independent(self) -> bool:
        return not self.complex_blocks and all(self.independent)

    @property
    def empty(self) -> bool:
        return not self.cycles and not self.complex_blocks


@dataclass(frozen=True)
class BadPathReport:
    bad_paths: Tuple[Tuple[int, ...], ...] = ()
    bad_vertices: FrozenSet[int] = frozenset()

    @property
    def is_good(self) -> bool:
        return len(self.bad_vertices) <= 1


@dataclass(frozen=True)
class AssociationReport:
    """Witnesses per failed condition, keyed 1..8; an empty mapping means associated."""

    failures: Mapping[int, List] = field(default_factory=dict)

    @property
    def associated(self) -> bool:
        return not self.failures

    @property
    def failed_conditions(self) -> List[int]:
        return sorted(self.failures)

    def __bool__(self) -> bool:
        return self.associated

    def as_dict(self) -> Dict[str, List]:
        return {str(k): v for k, v in sorted(self.failures.items())}


@dataclass(frozen=True)
class OverlapConfiguration:
    """Vertices around a J2 vertex shared by a big beta-cycle and a facial beta 4-cycle.

    ``a-b-c-q`` and ``q-c-f-g`` are facial 4-cycles; ``h`` is the fourth
    neighbour of ``q`` and ``far`` the vertex opposite ``q`` on the face
    ``q-h-far-a``. Both are None when ``q`` has degree 3.
    """

    face: int
    a: int
    b: int
    c: int
    q: int
    f: int
    g: int
    h: Optional[int] = None
    far: Optional[int] = None

    def as_dict(self) -> Dict[str, Optional[int]]:
        return {k: getattr(self, k) for k in ("face", "a", "b", "c", "q", "f", "g", "h", "far")}
