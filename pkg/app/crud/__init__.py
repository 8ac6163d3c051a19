# Graph file formats: planar_code, rotation text, DOT
from typing import List

from app.crud.planar_code import has_header, read_planar_code
from app.crud.rotation_text import read_rotation_text
from app.core.errors import FormatError
from app.models.plane_graph import PlaneGraph

FORMATS = ("auto", "planar_code", "rotation")


def sniff_format(data: bytes) -> str:
    """planar_code when the header is present, rotation text otherwise."""
    return "planar_code" if has_header(data) else "rotation"


def read_graphs(data: bytes, fmt: str = "auto") -> List[PlaneGraph]:
    """Read every graph in ``data`` using the given or detected format."""
    if fmt == "auto":
        fmt = sniff_format(data)
    if fmt == "planar_code":
        return read_planar_code(data)
    if fmt == "rotation":
        try:
            text = data.decode("ascii")
        except UnicodeDecodeError:
            raise FormatError("Rotation text must be ASCII")
        return read_rotation_text(text)
    raise FormatError(f"Unknown format {fmt!r}", {"format": fmt})
