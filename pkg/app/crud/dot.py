from typing import Optional

from app.models.coloring import ForestBipartition, Part
from app.models.plane_graph import PlaneGraph

PART_COLOURS = {Part.A: "steelblue", Part.B: "darkorange"}


def write_dot(g: PlaneGraph, partition: Optional[ForestBipartition] = None, name: str = "G") -> str:
    """Undirected DOT export, vertices filled by part when a partition is given."""
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        if partition is not None and v in partition.part_of:
            colour = PART_COLOURS[partition.part_of[v]]
            lines.append(f'  {v} [style=filled, fillcolor="{colour}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges:
        style = ""
        if partition is not None and not partition.same_part(u, v):
            style = " [style=dashed]"
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
