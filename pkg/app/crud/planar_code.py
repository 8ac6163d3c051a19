import struct
from typing import Iterable, List

from app.core.errors import FormatError
from app.models.plane_graph import PlaneGraph
from app.services.plane_core import build_plane_graph

HEADER = b">>planar_code<<"


def has_header(data: bytes) -> bool:
    """Check whether a byte stream starts with the planar_code header."""
    return data.startswith(HEADER)


def read_planar_code(data: bytes) -> List[PlaneGraph]:
    """Parse every graph of a planar_code stream (n <= 255)."""
    if not has_header(data):
        raise FormatError("Missing >>planar_code<< header", {"prefix": data[:16].hex()})
    graphs = []
    pos = len(HEADER)
    index = 0
    while pos < len(data):
        (n,) = struct.unpack_from("B", data, pos)
        pos += 1
        if n == 0:
            raise FormatError("Extended (n > 255) planar_code is not supported", {"graph": index})
        rotations = {}
        for v in range(n):
            nbrs = []
            while True:
                if pos >= len(data):
                    raise FormatError(f"Truncated stream in graph {index}", {"graph": index, "vertex": v})
                (b,) = struct.unpack_from("B", data, pos)
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise FormatError(
                        f"Neighbour {b} out of range in graph {index}", {"graph": index, "vertex": v}
                    )
                nbrs.append(b - 1)
            rotations[v] = nbrs
        graphs.append(build_plane_graph(rotations))
        index += 1
    return graphs


def encode_graph(g: PlaneGraph) -> bytes:
    """Encode one graph body; vertices are renumbered in increasing id order."""
    if g.vertex_count > 255:
        raise FormatError("planar_code supports at most 255 vertices", {"vertices": g.vertex_count})
    index = {v: i + 1 for i, v in enumerate(g.vertices)}
    out = bytearray(struct.pack("B", g.vertex_count))
    for v in g.vertices:
        out.extend(struct.pack(f"{g.degree(v)}B", *(index[u] for u in g.rotations[v])))
        out.append(0)
    return bytes(out)


def write_planar_code(graphs: Iterable[PlaneGraph]) -> bytes:
    """Serialize graphs as a planar_code stream with header."""
    return HEADER + b"".join(encode_graph(g) for g in graphs)
