import pytest

from app.core.config import Settings
from app.services import synth
from app.services.triangulation import big_small_split, three_coloring


@pytest.fixture
def config() -> Settings:
    """Settings with default caps, isolated from the environment."""
    return Settings(_env_file=None, trace=False, log_level="WARNING")


@pytest.fixture
def octahedron():
    """Smallest Eulerian triangulation; its dual is the cube."""
    return synth.octahedron()


@pytest.fixture
def cube():
    """The cube Q3 as a plane graph."""
    return synth.cube()


@pytest.fixture
def cube_types(cube):
    """Cube colouring by bipartition: {0, 2, 5, 7} in class 1, the rest in class 2."""
    return synth.bipartition_types(cube)


@pytest.fixture
def k4():
    """Tetrahedron: triangulated and cubic at once."""
    return synth.k4()


@pytest.fixture
def triangle():
    """The single triangle."""
    return synth.triangle()


@pytest.fixture
def bowtie():
    """Two triangles sharing a cut vertex."""
    return synth.bowtie()


@pytest.fixture
def cube14():
    """Synthesis of the cube: 14 vertices, big vertices 0..7."""
    return synth.cube14()[0]


@pytest.fixture
def cube14_recipe():
    """Gadget log behind the CUBE14 synthesis."""
    return synth.cube14()[1]


@pytest.fixture
def core3():
    """Triangulation whose big vertices span a 4-cycle, with 3-vertex small paths."""
    return synth.four_cycle_core(3)


@pytest.fixture
def capped_square():
    """3-connected theta graph with one beta 4-cycle after the preliminary colouring."""
    return synth.capped_square()


@pytest.fixture
def capped_square_types(capped_square):
    """Backtracking colouring: {0, 2, 8}, {1, 3}, {4, 5, 6, 7}."""
    return synth.find_three_coloring(capped_square)


@pytest.fixture
def twin_lens():
    """Theta graph with the 2-cut {0, 1}."""
    return synth.twin_lens()


@pytest.fixture
def theta_k23():
    """K_{2,3}: theta graph with degree-2 vertices."""
    return synth.theta_k23()


@pytest.fixture
def split_of():
    """Big/small split and 3-colouring of a triangulation."""
    def _split(g):
        return big_small_split(g), three_coloring(g)
    return _split


@pytest.fixture
def face_with():
    """Id of the face of ``g`` on exactly the given vertices."""
    def _find(g, vertices):
        return next(f.id for f in g.faces if set(f.vertices) == set(vertices))
    return _find
