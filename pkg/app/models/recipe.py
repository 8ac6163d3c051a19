from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

from app.models.coloring import Roles, TriColoring, WorkColoring
from app.models.plane_graph import PlaneGraph


@dataclass(frozen=True)
class Gadget:
    """Vertices inserted into one face of the seed.

    ``kind`` is ``path2`` (one inner vertex), ``path3`` (two inner vertices)
    or ``triangle`` (inner triangle plus 6-cycle).
    """

    kind: str
    face: Tuple[int, ...]
    ends: Tuple[int, ...]
    flanks: Tuple[int, ...]
    new_vertices: Tuple[int, ...]


@dataclass(frozen=True)
class SynthesisRecipe:
    seed: PlaneGraph
    seed_types: TriColoring
    gadgets: Tuple[Gadget, ...]
    types: Mapping[int, int]

    @property
    def added_vertex_count(self) -> int:
        return sum(len(g.new_vertices) for g in self.gadgets)


@dataclass(frozen=True)
class ThetaSeed:
    """A named graph of the seed library with the colouring used for synthesis."""

    name: str
    graph: PlaneGraph
    types: TriColoring


@dataclass(frozen=True)
class CorpusInstance:
    name: str
    graph: PlaneGraph
    source: str
    recipe: Optional[SynthesisRecipe] = None


@dataclass(frozen=True)
class StressFixture:
    """A drawn graph with roles and a working colouring that sends the engine into one named step."""

    name: str
    graph: PlaneGraph
    roles: Roles
    coloring: WorkColoring
    kind: str
