import pytest

from app.core.errors import InvalidInputError, MinDegreeViolation, NotTheta
from app.models.coloring import TriColoring
from app.services import synth
from app.services.plane_core import is_isomorphic, relabel
from app.services.triangulation import big_small_split, validate_eulerian_triangulation


@pytest.mark.unit
class TestFamilies:
    """Test the fixed graph families."""

    @pytest.mark.parametrize("l", [2, 3, 5])
    def test_double_wheel(self, l):
        """Test order, degrees and validity of double wheels."""
        g = synth.double_wheel(l)
        assert g.vertex_count == 2 * l + 2
        assert g.degree(2 * l) == g.degree(2 * l + 1) == 2 * l
        assert all(g.degree(v) == 4 for v in range(2 * l))
        assert validate_eulerian_triangulation(g) == []

    def test_double_wheel_too_small(self):
        """Test that l below 2 is rejected."""
        with pytest.raises(InvalidInputError):
            synth.double_wheel(1)

    def test_prism(self):
        """Test that prisms are cubic with two k-gons."""
        g = synth.prism(5)
        assert g.vertex_count == 10
        assert all(g.degree(v) == 3 for v in g.vertices)
        assert sorted(f.length for f in g.faces) == [4, 4, 4, 4, 4, 5, 5]

    def test_cuboctahedron(self):
        """Test that the medial graph of the cube is the cuboctahedron."""
        g = synth.cuboctahedron()
        assert g.vertex_count == 12
        assert g.edge_count == 24
        assert all(g.degree(v) == 4 for v in g.vertices)
        assert sorted(f.length for f in g.faces) == [3] * 8 + [4] * 6

    def test_medial_of_tetrahedron_is_octahedron(self, k4, octahedron):
        """Test the medial graph of K4."""
        assert is_isomorphic(synth.medial_graph(k4), octahedron)

    def test_four_cycle_core(self, core3):
        """Test the order and big vertices of the four-cycle core."""
        assert core3.vertex_count == 10
        assert big_small_split(core3).big == frozenset({0, 1, 2, 3})
        assert validate_eulerian_triangulation(core3) == []

    def test_four_cycle_core_needs_odd_k(self):
        """Test that even path lengths are refused."""
        with pytest.raises(InvalidInputError):
            synth.four_cycle_core(4)

    @pytest.mark.parametrize("sides, vertices, faces", [((2, 1, 1), 12, 10), ((2, 2, 1), 18, 16), ((2, 2, 2), 26, 24)])
    def test_box(self, sides, vertices, faces):
        """Test that box surfaces are quadrangulations with degrees 3 and 4."""
        g = synth.box(*sides)
        assert g.vertex_count == vertices
        assert g.face_count == faces
        assert all(f.length == 4 for f in g.faces)
        assert {g.degree(v) for v in g.vertices} == {3, 4}

    def test_box_needs_positive_sides(self):
        """Test that a flat box is refused."""
        with pytest.raises(InvalidInputError):
            synth.box(2, 0, 1)

    def test_box_default_colouring_is_bipartition(self):
        """Test that the backtracking colouring of a box uses two classes."""
        types = synth.find_three_coloring(synth.box(3, 1, 1))
        assert types.classes[2] == frozenset()
        assert 0 in types.classes[0]

    def test_from_drawing(self):
        """Test that a drawn square with one chord has two triangles and the outer 4-face."""
        g = synth.from_drawing({0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)}, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        assert sorted(f.length for f in g.faces) == [3, 3, 4]
        assert g.has_edge(0, 2)

    def test_capped_square_is_three_connected_theta(self, capped_square):
        """Test the face lengths of the capped square."""
        assert sorted(f.length for f in capped_square.faces) == [3] * 4 + [4] * 5


@pytest.mark.unit
class TestColourings:
    """Test colourings used as synthesis input."""

    def test_backtracking_colouring(self, capped_square):
        """Test the classes of the backtracking colouring."""
        types = synth.find_three_coloring(capped_square)
        assert types.classes == (frozenset({0, 2, 8}), frozenset({1, 3}), frozenset({4, 5, 6, 7}))

    def test_k4_has_no_colouring(self, k4):
        """Test that K4 is not 3-colourable."""
        assert synth.find_three_coloring(k4) is None

    def test_bipartition_types(self, cube):
        """Test that the smallest vertex lands in class 1."""
        types = synth.bipartition_types(cube)
        assert types.classes[0] == frozenset({0, 2, 5, 7})
        assert types.classes[2] == frozenset()

    def test_bipartition_types_need_bipartite(self, octahedron):
        """Test that a non-bipartite graph is refused."""
        with pytest.raises(InvalidInputError):
            synth.bipartition_types(octahedron)


@pytest.mark.unit
class TestSynthesis:
    """Test the face-filling synthesis."""

    def test_cube14(self, cube14, cube14_recipe):
        """Test the order and shape of CUBE14."""
        assert cube14.vertex_count == 14
        assert cube14.edge_count == 36
        assert cube14.face_count == 24
        assert cube14_recipe.added_vertex_count == 6
        assert {g.kind for g in cube14_recipe.gadgets} == {"path2"}

    def test_replay_recipe(self, cube14, cube14_recipe):
        """Test that replaying the gadget log rebuilds the triangulation."""
        assert synth.replay_recipe(cube14_recipe) == cube14

    def test_extended_types_proper(self, cube14, cube14_recipe):
        """Test that the recorded colouring is proper on every edge."""
        types = cube14_recipe.types
        assert all(types[u] != types[v] for u, v in cube14.edges)

    def test_retyped_vertex_gets_longer_paths(self):
        """Test that a class-3 vertex turns its three faces into 2-vertex paths."""
        q3 = synth.cube()
        types = TriColoring({**synth.bipartition_types(q3).class_of, 0: 3})
        g, recipe = synth.lemma33_synthesize(q3, types)
        assert g.vertex_count == 17
        kinds = sorted(gadget.kind for gadget in recipe.gadgets)
        assert kinds == ["path2"] * 3 + ["path3"] * 3

    def test_triangle_faces_get_triangle_gadgets(self, octahedron):
        """Test that each triangular face receives three new vertices."""
        g, recipe = synth.lemma33_synthesize(octahedron, synth.find_three_coloring(octahedron))
        assert g.vertex_count == 6 + 8 * 3
        assert all(gadget.kind == "triangle" for gadget in recipe.gadgets)
        assert big_small_split(g).big == frozenset(octahedron.vertices)

    def test_min_degree_violation(self):
        """Test that a bare 4-cycle is refused."""
        c4 = synth.cycle_graph(4)
        with pytest.raises(MinDegreeViolation):
            synth.lemma33_synthesize(c4, synth.find_three_coloring(c4))

    def test_not_theta(self, cube):
        """Test that an improper colouring is refused."""
        with pytest.raises(NotTheta):
            synth.lemma33_synthesize(cube, TriColoring({v: 1 for v in cube.vertices}))


@pytest.mark.unit
class TestLibraryAndCorpus:
    """Test the seed library and the corpus."""

    def test_library_names(self):
        """Test that the seed file loads in order."""
        names = [seed.name for seed in synth.theta_library()]
        assert names[:2] == ["cube", "cube_retyped_0"]
        assert "twin_lens" in names
        assert len(names) == len(set(names))

    def test_every_seed_synthesises(self):
        """Test that each seed yields a triangulation with the seed as big set."""
        for seed in synth.theta_library():
            g, _ = synth.lemma33_synthesize(seed.graph, seed.types)
            assert big_small_split(g).big == frozenset(seed.graph.vertices), seed.name

    def test_corpus_deterministic(self):
        """Test that the same seed gives the same corpus."""
        first = synth.corpus(seed=3, extra=2)
        second = synth.corpus(seed=3, extra=2)
        assert [i.name for i in first] == [i.name for i in second]
        assert [i.graph for i in first] == [i.graph for i in second]

    def test_corpus_contents(self):
        """Test the fixed members of the corpus."""
        names = [i.name for i in synth.corpus(seed=0)]
        assert names[:5] == [f"double_wheel_{l}" for l in range(2, 7)]
        assert "cube14" in names
        assert "four_cycle_core_3" in names
        assert "synth_cube" in names

    def test_corpus_size_filter(self):
        """Test that max_vertices drops larger instances."""
        instances = synth.corpus(seed=0, max_vertices=14)
        assert instances
        assert all(i.graph.vertex_count <= 14 for i in instances)

    def test_relabelled_copies(self, octahedron):
        """Test that random relabellings are permutations preserving the graph."""
        mappings = list(synth.relabelled_copies(octahedron, seed=1, count=3))
        assert len(mappings) == 3
        for mapping in mappings:
            assert sorted(mapping.values()) == list(octahedron.vertices)
            assert is_isomorphic(relabel(octahedron, mapping), octahedron)


@pytest.mark.unit
class TestStressFixtures:
    """Test the drawn engine fixtures."""

    @pytest.fixture
    def fixtures(self):
        """All stress fixtures by name."""
        return synth.engine_stress_fixtures()

    def test_names_and_kinds(self, fixtures):
        """Test that each fixture names the step it triggers."""
        assert {name: f.kind for name, f in fixtures.items()} == {
            "overlap_case_a": "L43a",
            "overlap_case_b": "L43b",
            "overlap_case_c": "L43c",
            "bad_vertex_cycle": "L46",
        }

    def test_overlap_faces(self, fixtures):
        """Test the face lengths of the overlap drawings."""
        assert sorted(f.length for f in fixtures["overlap_case_a"].graph.faces) == [4, 4, 4, 6, 6]
        assert sorted(f.length for f in fixtures["overlap_case_b"].graph.faces) == [4, 4, 4, 4, 6, 8]

    def test_roles_colour_properly(self, fixtures):
        """Test that roles cover every vertex and no edge joins two vertices of one role."""
        for fixture in fixtures.values():
            roles = fixture.roles
            assert roles.j12 | roles.j3 == frozenset(fixture.graph.vertices), fixture.name
            assert all(roles.role(u) != roles.role(v) for u, v in fixture.graph.edges), fixture.name
