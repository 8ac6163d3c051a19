import pytest

from app.core.errors import FormatError
from app.crud import read_graphs, sniff_format
from app.crud.dot import write_dot
from app.crud.planar_code import HEADER, encode_graph, read_planar_code, write_planar_code
from app.crud.rotation_text import format_graph, read_rotation_text, write_rotation_text
from app.models.coloring import ForestBipartition
from app.services.plane_core import build_plane_graph


OCTAHEDRON_TEXT = """\
# octahedron, hubs 4 and 5
6
0: 1 4 3 5
1: 2 4 0 5
2: 3 4 1 5
3: 0 4 2 5
4: 0 1 2 3
5: 3 2 1 0
"""


@pytest.mark.unit
class TestRotationText:
    """Test the rotation text format."""

    def test_read_with_comments(self, octahedron):
        """Test parsing a commented block into the octahedron."""
        graphs = read_rotation_text(OCTAHEDRON_TEXT)
        assert len(graphs) == 1
        assert graphs[0] == octahedron

    def test_blank_lines_separate_graphs(self, octahedron, k4):
        """Test that several blocks give several graphs in order."""
        text = write_rotation_text([octahedron, k4])
        graphs = read_rotation_text(text)
        assert [g.vertex_count for g in graphs] == [6, 4]
        assert graphs[1] == k4

    def test_format_graph_lines(self, triangle):
        """Test the vertex count line followed by one rotation per vertex."""
        assert format_graph(triangle) == "3\n0: 1 2\n1: 2 0\n2: 0 1\n"

    def test_wrong_line_count(self):
        """Test that a short block raises FormatError."""
        with pytest.raises(FormatError) as exc:
            read_rotation_text("3\n0: 1 2\n1: 2 0\n")
        assert exc.value.details["expected"] == 3

    def test_malformed_line(self):
        """Test that a line without a colon raises FormatError."""
        with pytest.raises(FormatError):
            read_rotation_text("1\n0 1 2\n")

    def test_non_integer_token(self):
        """Test that non-integer neighbours raise FormatError."""
        with pytest.raises(FormatError):
            read_rotation_text("2\n0: x\n1: 0\n")

    def test_duplicate_vertex_line(self):
        """Test that a vertex listed twice raises FormatError instead of replacing its rotation."""
        with pytest.raises(FormatError) as exc:
            read_rotation_text("3\n0: 1 2\n1: 2 0\n1: 0 2\n")
        assert exc.value.details["vertex"] == 1
        assert exc.value.details["graph"] == 0

    def test_empty_text(self):
        """Test that text without a graph raises FormatError."""
        with pytest.raises(FormatError):
            read_rotation_text("# nothing here\n\n")


@pytest.mark.unit
class TestPlanarCode:
    """Test the binary planar_code format."""

    def test_header_and_body(self, triangle):
        """Test the encoded bytes of the triangle."""
        data = write_planar_code([triangle])
        assert data.startswith(HEADER)
        assert encode_graph(triangle) == bytes([3, 2, 3, 0, 3, 1, 0, 1, 2, 0])

    def test_read_back(self, octahedron, cube):
        """Test that a written stream reads back graph by graph."""
        graphs = read_planar_code(write_planar_code([octahedron, cube]))
        assert graphs == [octahedron, cube]

    def test_missing_header(self):
        """Test that a stream without header raises FormatError."""
        with pytest.raises(FormatError):
            read_planar_code(b"\x03\x02\x03\x00")

    def test_truncated_stream(self):
        """Test that a cut-off graph raises FormatError."""
        with pytest.raises(FormatError):
            read_planar_code(HEADER + bytes([3, 2, 3, 0, 3]))

    def test_neighbour_out_of_range(self):
        """Test that a neighbour index above n raises FormatError."""
        with pytest.raises(FormatError):
            read_planar_code(HEADER + bytes([2, 5, 0, 1, 0]))

    def test_extended_code_rejected(self):
        """Test that the n = 0 escape for large graphs is refused."""
        with pytest.raises(FormatError):
            read_planar_code(HEADER + bytes([0, 1, 0]))

    def test_renumbers_sparse_ids(self):
        """Test that vertex ids are compacted in increasing order."""
        g = build_plane_graph({3: [5, 9], 5: [9, 3], 9: [3, 5]})
        (back,) = read_planar_code(write_planar_code([g]))
        assert back.vertices == (0, 1, 2)
        assert back.rotations[0] == (1, 2)


@pytest.mark.unit
class TestReadGraphs:
    """Test format detection."""

    def test_sniff(self, triangle):
        """Test detection by the planar_code header."""
        assert sniff_format(write_planar_code([triangle])) == "planar_code"
        assert sniff_format(OCTAHEDRON_TEXT.encode()) == "rotation"

    def test_auto(self, octahedron):
        """Test that auto reads both formats."""
        assert read_graphs(write_planar_code([octahedron])) == [octahedron]
        assert read_graphs(OCTAHEDRON_TEXT.encode()) == [octahedron]

    def test_forced_format_mismatch(self):
        """Test that forcing planar_code on text fails."""
        with pytest.raises(FormatError):
            read_graphs(OCTAHEDRON_TEXT.encode(), "planar_code")

    def test_unknown_format(self):
        """Test that an unknown format name is rejected."""
        with pytest.raises(FormatError):
            read_graphs(b"", "graphml")

    def test_non_ascii_text(self):
        """Test that rotation text must be ASCII."""
        with pytest.raises(FormatError):
            read_graphs("3\n0: 1 2 é\n".encode("utf-8"), "rotation")


@pytest.mark.unit
class TestDot:
    """Test the DOT export."""

    def test_plain(self, triangle):
        """Test vertices and edges without a partition."""
        text = write_dot(triangle, name="T")
        assert text.startswith("graph T {")
        assert "  0 -- 1;" in text
        assert text.rstrip().endswith("}")

    def test_partition_colours_and_crossing_edges(self, triangle):
        """Test filled vertices and dashed edges between parts."""
        text = write_dot(triangle, ForestBipartition.from_parts([0, 1], [2]))
        assert '0 [style=filled, fillcolor="steelblue"];' in text
        assert '2 [style=filled, fillcolor="darkorange"];' in text
        assert "  0 -- 1;" in text
        assert "  0 -- 2 [style=dashed];" in text
