from typing import Iterable, List

from app.core.errors import FormatError
from app.models.plane_graph import PlaneGraph
from app.services.plane_core import build_plane_graph


def _parse_block(lines: List[str], index: int) -> PlaneGraph:
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"Graph {index}: first line must be the vertex count", {"line": lines[0]})
    if len(lines) - 1 != n:
        raise FormatError(
            f"Graph {index}: expected {n} rotation lines, got {len(lines) - 1}",
            {"graph": index, "expected": n, "found": len(lines) - 1},
        )
    rotations = {}
    for line in lines[1:]:
        head, sep, tail = line.partition(":")
        if not sep:
            raise FormatError(f"Graph {index}: malformed line {line!r}", {"graph": index, "line": line})
        try:
            v = int(head)
            nbrs = [int(tok) for tok in tail.split()]
        except ValueError:
            raise FormatError(f"Graph {index}: non-integer token in {line!r}", {"graph": index, "line": line})
        if v in rotations:
            raise FormatError(f"Graph {index}: vertex {v} listed twice", {"graph": index, "vertex": v, "line": line})
        rotations[v] = nbrs
    return build_plane_graph(rotations)


def read_rotation_text(text: str) -> List[PlaneGraph]:
    """Parse one or more rotation-text graphs separated by blank lines."""
    graphs = []
    block: List[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            block.append(line)
        elif block:
            graphs.append(_parse_block(block, len(graphs)))
            block = []
    if block:
        graphs.append(_parse_block(block, len(graphs)))
    if not graphs:
        raise FormatError("No graph found in rotation text")
    return graphs


def format_graph(g: PlaneGraph) -> str:
    """Render one graph: vertex count, then ``v: a b c`` per vertex."""
    lines = [str(g.vertex_count)]
    lines.extend(f"{v}: {' '.join(str(u) for u in g.rotations[v])}" for v in g.vertices)
    return "\n".join(lines) + "\n"


def write_rotation_text(graphs: Iterable[PlaneGraph]) -> str:
    return "\n".join(format_graph(g) for g in graphs)
