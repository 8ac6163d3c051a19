from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple


@dataclass(frozen=True)
class TriColoring:
    """Proper 3-colouring; ``class_of`` maps each vertex to 1, 2 or 3."""

    class_of: Mapping[int, int]

    @property
    def classes(self) -> Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]:
        buckets: Dict[int, set] = {1: set(), 2: set(), 3: set()}
        for v, c in self.class_of.items():
            buckets[c].add(v)
        return frozenset(buckets[1]), frozenset(buckets[2]), frozenset(buckets[3])

    @property
    def class_sizes(self) -> Tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.classes))

    def restrict(self, vertices: Iterable[int]) -> "TriColoring":
        return TriColoring({v: self.class_of[v] for v in vertices})

    def same_type(self, u: int, v: int) -> bool:
        return self.class_of[u] == self.class_of[v]

    def partition(self) -> FrozenSet[FrozenSet[int]]:
        """Colour classes as an unlabelled partition (empty classes dropped)."""
        return frozenset(c for c in self.classes if c)

    def __getitem__(self, v: int) -> int:
        return self.class_of[v]


class Label(str, Enum):
    ALPHA = "alpha"
    BETA = "beta"
    GAMMA = "gamma"


@dataclass(frozen=True)
class WorkColoring:
    """An alpha/beta/gamma labelling of V(J) tracked by the colouring engine."""

    label_of: Mapping[int, Label]
    provenance: Optional["WorkColoring"] = field(default=None, compare=False, repr=False)

    def with_labels(self, changes: Mapping[int, Label]) -> "WorkColoring":
        labels = dict(self.label_of)
        labels.update(changes)
        return WorkColoring(labels, provenance=self.provenance or self)

    def vertices_labelled(self, label: Label) -> FrozenSet[int]:
        return frozenset(v for v, lab in self.label_of.items() if lab == label)

    @property
    def alpha(self) -> FrozenSet[int]:
        return self.vertices_labelled(Label.ALPHA)

    @property
    def beta(self) -> FrozenSet[int]:
        return self.vertices_labelled(Label.BETA)

    @property
    def gamma(self) -> FrozenSet[int]:
        return self.vertices_labelled(Label.GAMMA)

    @property
    def preliminary(self) -> "WorkColoring":
        return self.provenance or self

    def changed_from(self, other: "WorkColoring") -> Dict[int, Label]:
        return {v: lab for v, lab in self.label_of.items() if other.label_of.get(v) != lab}

    def __getitem__(self, v: int) -> Label:
        return self.label_of[v]


class Part(str, Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Part":
        return Part.B if self is Part.A else Part.A


@dataclass(frozen=True)
class ForestBipartition:
    """Two-part vertex partition with optional per-part cycle witnesses."""

    part_of: Mapping[int, Part]
    cycle_witness: Mapping[Part, Tuple[int, ...]] = field(default_factory=dict, compare=False)

    @classmethod
    def from_parts(cls, a: Iterable[int], b: Iterable[int]) -> "ForestBipartition":
        part_of = {v: Part.A for v in a}
        for v in b:
            part_of[v] = Part.B
        return cls(part_of)

    def part(self, which: Part) -> FrozenSet[int]:
        return frozenset(v for v, p in self.part_of.items() if p == which)

    @property
    def parts(self) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        return self.part(Part.A), self.part(Part.B)

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.part_of)

    @property
    def certified(self) -> bool:
        return not self.cycle_witness

    def same_part(self, u: int, v: int) -> bool:
        return self.part_of[u] == self.part_of[v]

    def restrict(self, vertices: Iterable[int]) -> "ForestBipartition":
        return ForestBipartition({v: self.part_of[v] for v in vertices})

    def swapped(self) -> "ForestBipartition":
        return ForestBipartition({v: p.other for v, p in self.part_of.items()})

    def unordered(self) -> FrozenSet[FrozenSet[int]]:
        """Part names forgotten; equal for a partition and its swap."""
        return frozenset(self.parts)

    def to_lines(self) -> List[str]:
        return [f"{v}:{self.part_of[v].value}" for v in sorted(self.part_of)]


@dataclass(frozen=True)
class EngineStep:
    """One recolouring step of the colouring engine."""

    kind: str
    changed: Mapping[int, Label]
    measure: Tuple[int, int]
    line: str = ""


@dataclass
class EngineTrace:
    steps: List[EngineStep] = field(default_factory=list)

    def lines(self) -> List[str]:
        return [s.line for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class Roles:
    """Colour classes in the roles J1, J2, J3 used by the colouring engine."""

    j1: FrozenSet[int]
    j2: FrozenSet[int]
    j3: FrozenSet[int]

    @property
    def j12(self) -> FrozenSet[int]:
        return self.j1 | self.j2

    def role(self, v: int) -> int:
        if v in self.j1:
            return 1
        if v in self.j2:
            return 2
        if v in self.j3:
            return 3
        raise KeyError(v)

    def restrict(self, vertices: Iterable[int]) -> "Roles":
        keep = frozenset(vertices)
        return Roles(self.j1 & keep, self.j2 & keep, self.j3 & keep)

    def as_coloring(self) -> TriColoring:
        return TriColoring({v: self.role(v) for v in self.j1 | self.j2 | self.j3})


def assign_roles(types: TriColoring, vertices: Optional[Iterable[int]] = None) -> Roles:
    """J3 is the largest class (ties: smallest member), J1 holds the smallest remaining id."""
    classes = [c for c in types.classes]
    if vertices is not None:
        keep = frozenset(vertices)
        classes = [c & keep for c in classes]

    def low(c: FrozenSet[int]) -> float:
        return min(c) if c else float("inf")

    classes.sort(key=lambda c: (-len(c), low(c)))
    j3, rest = classes[0], sorted(classes[1:], key=low)
    return Roles(j1=rest[0], j2=rest[1], j3=j3)


@dataclass(frozen=True)
class CompatibilityReport:
    """Per facial 4-cycle: the witnessing diagonal pair, or None for a violating face."""

    witnesses: Mapping[int, Optional[Tuple[int, int]]]

    @property
    def compatible(self) -> bool:
        return all(w is not None for w in self.witnesses.values())

    @property
    def violating_faces(self) -> List[int]:
        return sorted(f for f, w in self.witnesses.items() if w is None)

    def __bool__(self) -> bool:
        return self.compatible


@dataclass(frozen=True)
class ForestCheck:
    is_forest: bool
    cycle: Tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.is_forest
