from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple, Union


@dataclass(frozen=True)
class BigSmallSplit:
    big: FrozenSet[int]
    small: FrozenSet[int]


@dataclass(frozen=True)
class ThreeCycle:
    name: str = "ThreeCycle"


@dataclass(frozen=True)
class DoubleWheel:
    """C^{2l} joined with two hubs; the octahedron is DoubleWheel(2)."""

    l: int
    hubs: Tuple[int, int] = (-1, -1)
    name: str = "DoubleWheel"

    @property
    def is_octahedron(self) -> bool:
        return self.l == 2


@dataclass(frozen=True)
class GeneralBig3:
    big_count: int
    name: str = "GeneralBig3"


FamilyTag = Union[ThreeCycle, DoubleWheel, GeneralBig3]


@dataclass(frozen=True)
class SmallPath:
    """Path with big ends and small inner vertices, flanked by two big vertices."""

    vertices: Tuple[int, ...]
    flanks: Tuple[int, int]

    @property
    def ends(self) -> Tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def inner(self) -> Tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def face_vertices(self) -> FrozenSet[int]:
        """Vertices of the facial 4-cycle of G[B] the path sits in."""
        return frozenset(self.ends) | frozenset(self.flanks)


@dataclass(frozen=True)
class SmallPathCover:
    paths: Tuple[SmallPath, ...]

    @property
    def inner_vertices(self) -> FrozenSet[int]:
        return frozenset(v for p in self.paths for v in p.inner)

    def path_for_face(self, face_vertices: FrozenSet[int]) -> Optional[SmallPath]:
        for path in self.paths:
            if path.face_vertices == face_vertices:
                return path
        return None

    def __len__(self) -> int:
        return len(self.paths)
