import pytest

from app.core.errors import InvalidPartition, NotIndependent, NotSubset
from app.models.coloring import ForestBipartition, Part, assign_roles
from app.services.partition import (
    both_parts_forests,
    certify,
    induces_forest,
    is_compatible,
    lemma1_partition,
)
from app.services.triangulation import three_coloring


@pytest.mark.unit
class TestCompatibility:
    """Test compatibility of a partition with a 3-colouring."""

    def test_bipartition_is_compatible(self, cube, cube_types):
        """Test that the colour classes of the cube form a compatible partition."""
        k = ForestBipartition.from_parts([0, 2, 5, 7], [1, 3, 4, 6])
        report = is_compatible(cube, cube_types, k)
        assert report.compatible
        assert len(report.witnesses) == 6

    def test_split_diagonals_violate(self, cube, cube_types, face_with):
        """Test that a face whose both diagonals are split is reported."""
        k = ForestBipartition.from_parts([0, 1, 4, 5, 6, 7], [2, 3])
        report = is_compatible(cube, cube_types, k)
        assert not report
        assert face_with(cube, [0, 1, 2, 3]) in report.violating_faces

    def test_triangles_ignored(self, octahedron):
        """Test that graphs without quadrilaterals are always compatible."""
        k = ForestBipartition.from_parts(octahedron.vertices, [])
        assert is_compatible(octahedron, three_coloring(octahedron), k).compatible

    def test_missing_vertex(self, cube, cube_types):
        """Test that a partition missing vertices is rejected."""
        with pytest.raises(InvalidPartition):
            is_compatible(cube, cube_types, ForestBipartition.from_parts([0], [1]))


@pytest.mark.unit
class TestForests:
    """Test induced-forest checks."""

    def test_star_is_forest(self, octahedron):
        """Test that a hub with alternate rim vertices induces a star."""
        assert induces_forest(octahedron, [0, 1, 3])

    def test_rim_cycle_witness(self, octahedron):
        """Test that the rim of the octahedron is reported with its cycle."""
        check = induces_forest(octahedron, [0, 1, 2, 3])
        assert not check
        assert sorted(check.cycle) == [0, 1, 2, 3]

    def test_empty_set_is_forest(self, octahedron):
        """Test that the empty set induces a forest."""
        assert induces_forest(octahedron, [])

    def test_certify_attaches_witness(self, octahedron):
        """Test that certify records a cycle for the failing part only."""
        k = certify(octahedron, ForestBipartition.from_parts([0, 1, 2, 3], [4, 5]))
        assert not k.certified
        assert set(k.cycle_witness) == {Part.A}
        assert not both_parts_forests(octahedron, k)

    def test_certified_partition(self, octahedron):
        """Test that two stars certify cleanly."""
        k = certify(octahedron, ForestBipartition.from_parts([0, 1, 3], [2, 4, 5]))
        assert k.certified
        assert both_parts_forests(octahedron, k)


@pytest.mark.unit
class TestLemma1Partition:
    """Test partitions built from an independent set of J1 and J2."""

    def test_empty_independent_set(self, cube, cube_types):
        """Test that I empty gives the J3 class against the rest."""
        k = lemma1_partition(cube, cube_types, [])
        assert k.parts == (frozenset({0, 2, 5, 7}), frozenset({1, 3, 4, 6}))

    def test_independent_vertices_join_j3(self, cube, cube_types):
        """Test that the chosen vertices move to the J3 side."""
        k = lemma1_partition(cube, cube_types, [1, 3])
        assert k.part(Part.A) == frozenset({0, 1, 2, 3, 5, 7})

    def test_j3_vertex_rejected(self, cube, cube_types):
        """Test that I must lie in J1 or J2."""
        with pytest.raises(NotSubset):
            lemma1_partition(cube, cube_types, [0])

    def test_adjacent_pair_rejected(self, capped_square, capped_square_types):
        """Test that I must be independent."""
        with pytest.raises(NotIndependent) as exc:
            lemma1_partition(capped_square, capped_square_types, [0, 1])
        assert exc.value.details == {"edge": [0, 1]}

    def test_roles_of_capped_square(self, capped_square_types):
        """Test role assignment: largest class is J3, smallest remaining id is J1."""
        roles = assign_roles(capped_square_types)
        assert roles.j3 == frozenset({4, 5, 6, 7})
        assert roles.j1 == frozenset({0, 2, 8})
        assert roles.j2 == frozenset({1, 3})
