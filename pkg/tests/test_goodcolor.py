import pytest

from app.core.errors import (
    CaseAnalysisUnreachable,
    ConfigurationNotFound,
    NotTheta,
    PreconditionA1,
    PreconditionFailed,
)
from app.models.coloring import (
    EngineTrace,
    ForestBipartition,
    Label,
    Part,
    TriColoring,
    WorkColoring,
    assign_roles,
)
from app.services import synth
from app.services.goodcolor import (
    bad_path_report,
    beta_cycle_report,
    check_preconditions,
    classify_overlap,
    eliminate_beta_cycles,
    exhaustive_beta_cycles,
    find_degree2_reduction,
    find_lemma31_reduction,
    find_overlap_configuration,
    forest_partition_3connected,
    forest_partition_theta,
    is_theta,
    preliminary_coloring,
    reduce_lemma31,
    reduce_lemma32,
    resolve_gammas,
    step_eliminate_overlap,
    step_remove_independent_cycle,
    validate_associated,
)
from app.services.partition import both_parts_forests, is_compatible
from app.services.plane_core import remove_vertices


def assert_good_partition(j, types, k):
    assert k.vertices == frozenset(j.vertices)
    assert is_compatible(j, types, k)
    assert both_parts_forests(j, k)


@pytest.mark.unit
class TestThetaFamily:
    """Test membership in the theta family."""

    def test_members(self, cube, octahedron, twin_lens, theta_k23):
        """Test 2-connected graphs with 3- and 4-faces."""
        for j in (cube, octahedron, twin_lens, theta_k23, synth.cycle_graph(4)):
            assert is_theta(j), j

    def test_non_members(self, bowtie):
        """Test a cut vertex and a pentagonal face."""
        assert not is_theta(bowtie)
        assert not is_theta(synth.cycle_graph(5))

    def test_improper_types(self, cube):
        """Test that a colouring with a monochromatic edge fails."""
        assert not is_theta(cube, TriColoring({v: 1 for v in cube.vertices}))


@pytest.mark.engine
class TestPreliminaryColoring:
    """Test the starting alpha/beta/gamma labelling."""

    def test_capped_square_labels(self, capped_square, capped_square_types):
        """Test alpha on J3 and beta elsewhere."""
        p = preliminary_coloring(capped_square, capped_square_types)
        assert p.alpha == frozenset({4, 5, 6, 7})
        assert p.beta == frozenset({0, 1, 2, 3, 8})
        assert p.gamma == frozenset()

    def test_preliminary_is_associated(self, capped_square, capped_square_types):
        """Test that the preliminary colouring is associated with itself."""
        roles = assign_roles(capped_square_types)
        p = preliminary_coloring(capped_square, capped_square_types, roles)
        assert validate_associated(capped_square, roles, p, p)

    def test_beta_cycle_report(self, capped_square, capped_square_types):
        """Test the single independent beta 4-cycle around the square."""
        p = preliminary_coloring(capped_square, capped_square_types)
        report = beta_cycle_report(capped_square, p)
        assert report.cycles == (frozenset({0, 1, 2, 3}),)
        assert report.independent == (True,)
        assert report.measure == (4, 1)
        assert report.all_independent
        assert len(exhaustive_beta_cycles(capped_square, p)) == 1

    def test_no_bad_vertices(self, capped_square, capped_square_types):
        """Test that J3 has no alpha paths through J1 at the start."""
        roles = assign_roles(capped_square_types)
        p = preliminary_coloring(capped_square, capped_square_types, roles)
        bad = bad_path_report(capped_square, roles, p)
        assert bad.is_good
        assert not bad.bad_vertices

    def test_high_degree_j2_rejected(self):
        """Test that hubs of degree 6 cannot play J2."""
        j = synth.double_wheel(3)
        types = synth.find_three_coloring(j)
        roles = assign_roles(types, j.vertices)
        assert roles.j2 == frozenset({6, 7})
        with pytest.raises(PreconditionA1):
            check_preconditions(j, roles)


@pytest.mark.engine
class TestEngine:
    """Test beta-cycle elimination and gamma resolution."""

    def test_single_step_on_capped_square(self, capped_square, capped_square_types):
        """Test that one step recolours vertex 0 and empties the beta-cycles."""
        roles = assign_roles(capped_square_types)
        p = preliminary_coloring(capped_square, capped_square_types, roles)
        m, kind = step_remove_independent_cycle(capped_square, roles, p)
        assert kind == "L46"
        assert m.changed_from(p) == {0: Label.ALPHA}
        assert beta_cycle_report(capped_square, m).empty

    def test_overlap_step_needs_overlap(self, capped_square, capped_square_types):
        """Test that the overlap step refuses a colouring whose beta-cycles are independent."""
        roles = assign_roles(capped_square_types)
        p = preliminary_coloring(capped_square, capped_square_types, roles)
        with pytest.raises(PreconditionFailed):
            step_eliminate_overlap(capped_square, roles, p)

    def test_trace_lines(self, capped_square, capped_square_types, config):
        """Test the trace of the full engine run."""
        trace = EngineTrace()
        t = eliminate_beta_cycles(capped_square, capped_square_types, config=config, trace=trace)
        assert trace.lines() == ["L46 v=0->alpha measure=0/0"]
        assert len(trace) == 1
        assert t.alpha == frozenset({0, 4, 5, 6, 7})

    def test_three_connected_partition(self, capped_square, capped_square_types, config):
        """Test the independent set and partition of the capped square."""
        independent, k = forest_partition_3connected(capped_square, capped_square_types, config=config)
        assert independent == frozenset({0})
        assert k.parts == (frozenset({0, 4, 5, 6, 7}), frozenset({1, 2, 3, 8}))
        assert_good_partition(capped_square, capped_square_types, k)

    def test_cube_needs_no_steps(self, cube, cube_types, config):
        """Test that the cube bipartition is already beta-cycle free."""
        trace = EngineTrace()
        k = forest_partition_theta(cube, cube_types, config, trace)
        assert len(trace) == 0
        assert k.unordered() == frozenset({frozenset({0, 2, 5, 7}), frozenset({1, 3, 4, 6})})

    def test_resolve_gammas(self, octahedron):
        """Test that a gamma vertex closing a beta path goes to alpha."""
        roles = assign_roles(synth.find_three_coloring(octahedron))
        t = WorkColoring({0: Label.ALPHA, 2: Label.ALPHA, 1: Label.BETA, 4: Label.BETA, 3: Label.BETA, 5: Label.GAMMA})
        k = resolve_gammas(octahedron, roles, t)
        assert k.part_of[5] == Part.A

    def test_octahedron_partition(self, octahedron, config):
        """Test a compatible forest partition of the octahedron."""
        types = synth.find_three_coloring(octahedron)
        assert_good_partition(octahedron, types, forest_partition_theta(octahedron, types, config))


@pytest.mark.engine
class TestReductions:
    """Test reductions for theta graphs that are not 3-connected."""

    def test_degree2_reduction(self, theta_k23):
        """Test that the lowest degree-2 vertex is removed first."""
        types = synth.find_three_coloring(theta_k23)
        assert find_degree2_reduction(theta_k23, types) == 0

    def test_cycle_has_no_degree2_reduction(self):
        """Test that a bare cycle is a base case."""
        c4 = synth.cycle_graph(4)
        assert find_degree2_reduction(c4, synth.find_three_coloring(c4)) is None

    def test_reduce_degree2(self, theta_k23):
        """Test extending a partition of the 4-cycle back over vertex 0."""
        types = synth.find_three_coloring(theta_k23)
        sub_k = ForestBipartition.from_parts([1, 3], [2, 4])
        k = reduce_lemma32(theta_k23, types, 0, sub_k)
        assert k.restrict([1, 2, 3, 4]) == sub_k
        assert_good_partition(theta_k23, types, k)

    def test_path_reduction_found(self, twin_lens):
        """Test that the edge 2-3 between the poles is found first."""
        types = synth.find_three_coloring(twin_lens)
        assert find_lemma31_reduction(twin_lens, types) == ((2, 3), (0, 1))

    def test_reduce_path(self, twin_lens, config):
        """Test extending a partition of the twin lens minus the path 2-3."""
        types = synth.find_three_coloring(twin_lens)
        sub = remove_vertices(twin_lens, [2, 3])
        sub_k = forest_partition_theta(sub, types.restrict(sub.vertices), config)
        k = reduce_lemma31(twin_lens, types, (2, 3), (0, 1), sub_k)
        assert k.restrict(sub.vertices) == sub_k
        assert_good_partition(twin_lens, types, k)

    def test_reduce_degree2_follows_opposite_vertex(self, theta_k23):
        """Test that vertex 0 follows its opposite vertex when its neighbours split."""
        types = synth.find_three_coloring(theta_k23)
        sub_k = ForestBipartition.from_parts([1, 2, 4], [3])
        k = reduce_lemma32(theta_k23, types, 0, sub_k)
        assert k.part_of[0] == Part.A
        assert_good_partition(theta_k23, types, k)

    def test_reduce_path_alternates_from_opposite_vertex(self, twin_lens):
        """Test the path 2-3 between poles in different parts."""
        types = synth.find_three_coloring(twin_lens)
        sub_k = ForestBipartition.from_parts([0, 4], [1, 5])
        k = reduce_lemma31(twin_lens, types, (2, 3), (0, 1), sub_k)
        assert k.parts == (frozenset({0, 2, 4}), frozenset({1, 3, 5}))
        assert_good_partition(twin_lens, types, k)

    def test_recursive_partitions(self, twin_lens, theta_k23, config):
        """Test the full recursion on graphs with 2-cuts and degree-2 vertices."""
        for j in (twin_lens, theta_k23, synth.cycle_graph(4), synth.triangle()):
            types = synth.find_three_coloring(j)
            assert_good_partition(j, types, forest_partition_theta(j, types, config))


@pytest.mark.engine
class TestEngineErrors:
    """Test rejected engine inputs."""

    def test_degree_above_four(self, config):
        """Test that maximum degree above 4 is refused."""
        j = synth.double_wheel(3)
        with pytest.raises(PreconditionFailed):
            forest_partition_theta(j, synth.find_three_coloring(j), config)

    def test_not_theta(self, config):
        """Test that a pentagon is refused."""
        j = synth.cycle_graph(5)
        with pytest.raises(NotTheta):
            forest_partition_theta(j, synth.find_three_coloring(j), config)

    def test_engine_needs_three_connected(self, theta_k23, config):
        """Test that the colouring engine itself refuses a 2-cut."""
        with pytest.raises(PreconditionFailed):
            eliminate_beta_cycles(theta_k23, synth.find_three_coloring(theta_k23), config=config)


@pytest.fixture
def stress():
    """Drawn fixtures that trigger each engine step."""
    return synth.engine_stress_fixtures()


@pytest.mark.engine
class TestOverlapSteps:
    """Test the three recolourings of overlapping beta-cycles."""

    @pytest.mark.parametrize("name, h, far", [
        ("overlap_case_a", None, None),
        ("overlap_case_b", 8, 9),
        ("overlap_case_c", 9, 10),
    ])
    def test_configuration(self, stress, name, h, far):
        """Test the vertices found around the shared J2 vertex 0."""
        fixture = stress[name]
        config = find_overlap_configuration(fixture.graph, fixture.roles, fixture.coloring)
        assert (config.a, config.b, config.c, config.q, config.f, config.g) == (5, 1, 0, 4, 3, 7)
        assert (config.h, config.far) == (h, far)
        assert set(fixture.graph.faces[config.face].vertices) == {0, 2, 3, 6}

    @pytest.mark.parametrize("name", ["overlap_case_a", "overlap_case_b", "overlap_case_c"])
    def test_classification(self, stress, name):
        """Test that each drawing falls into exactly its own case."""
        fixture = stress[name]
        config = find_overlap_configuration(fixture.graph, fixture.roles, fixture.coloring)
        assert classify_overlap(fixture.graph, fixture.coloring, config) == fixture.kind

    @pytest.mark.parametrize("name, changed", [
        ("overlap_case_a", {0: Label.ALPHA, 4: Label.BETA}),
        ("overlap_case_b", {0: Label.ALPHA, 4: Label.BETA, 5: Label.ALPHA}),
        ("overlap_case_c", {0: Label.ALPHA, 4: Label.BETA}),
    ])
    def test_step(self, stress, name, changed):
        """Test the recolouring, the strict loss of cyclic edges and the kept association."""
        fixture = stress[name]
        j, roles, t = fixture.graph, fixture.roles, fixture.coloring
        assert validate_associated(j, roles, t, t)
        m, kind = step_eliminate_overlap(j, roles, t)
        assert kind == fixture.kind
        assert m.changed_from(t) == changed
        assert beta_cycle_report(j, m).cyclic_edges < beta_cycle_report(j, t).cyclic_edges
        assert exhaustive_beta_cycles(j, m) < exhaustive_beta_cycles(j, t)
        assert exhaustive_beta_cycles(j, m) == frozenset()
        assert validate_associated(j, roles, m, m.preliminary)
        assert m.preliminary == t
        assert not bad_path_report(j, roles, m).bad_vertices

    def test_no_configuration(self, stress):
        """Test that a colouring without an alpha neighbour next to the beta face is refused."""
        fixture = stress["overlap_case_a"]
        t = fixture.coloring.with_labels({4: Label.BETA})
        with pytest.raises(ConfigurationNotFound):
            find_overlap_configuration(fixture.graph, fixture.roles, t)

    def test_unclassified_configuration(self, stress):
        """Test that a gamma vertex opposite q matches none of the cases."""
        fixture = stress["overlap_case_b"]
        config = find_overlap_configuration(fixture.graph, fixture.roles, fixture.coloring)
        t = fixture.coloring.with_labels({9: Label.GAMMA})
        with pytest.raises(CaseAnalysisUnreachable):
            classify_overlap(fixture.graph, t, config)


@pytest.mark.engine
class TestIndependentCycleStep:
    """Test the removal of an independent beta-cycle next to a bad vertex."""

    def test_bad_vertex_before(self, stress):
        """Test that the alpha path 1-0-2 makes vertex 0 bad."""
        fixture = stress["bad_vertex_cycle"]
        report = bad_path_report(fixture.graph, fixture.roles, fixture.coloring)
        assert report.bad_vertices == frozenset({0})
        assert report.bad_paths == ((1, 0, 2),)
        assert beta_cycle_report(fixture.graph, fixture.coloring).independent == (True,)

    def test_step_avoids_bad_vertex_neighbours(self, stress):
        """Test that the recoloured vertex is the cycle's J1 vertex away from the J3 flank 1."""
        fixture = stress["bad_vertex_cycle"]
        j, roles, t = fixture.graph, fixture.roles, fixture.coloring
        assert validate_associated(j, roles, t, t)
        m, kind = step_remove_independent_cycle(j, roles, t)
        assert kind == "L46"
        assert m.changed_from(t) == {8: Label.ALPHA}
        assert len(exhaustive_beta_cycles(j, t)) == 1
        assert exhaustive_beta_cycles(j, m) < exhaustive_beta_cycles(j, t)
        assert beta_cycle_report(j, m).cyclic_edges < beta_cycle_report(j, t).cyclic_edges
        assert validate_associated(j, roles, m, t)
        assert not bad_path_report(j, roles, m).bad_vertices

    def test_overlap_step_refuses_independent_cycle(self, stress):
        """Test that the overlap step needs overlapping cycles."""
        fixture = stress["bad_vertex_cycle"]
        with pytest.raises(PreconditionFailed):
            step_eliminate_overlap(fixture.graph, fixture.roles, fixture.coloring)
