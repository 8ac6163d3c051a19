"""SVG pictures of a triangulation, its forest partition and the dual cycle."""
import logging
from pathlib import Path
from typing import Dict, Optional, Tuple

import networkx as nx
import numpy as np
from matplotlib.figure import Figure

from app.crud.dot import PART_COLOURS
from app.models.coloring import ForestBipartition
from app.models.cycle import HamiltonCycle
from app.models.plane_graph import PlaneGraph

logger = logging.getLogger(__name__)


def tutte_layout(g: PlaneGraph, outer: Optional[int] = None) -> Dict[int, Tuple[float, float]]:
    """Barycentric embedding with the outer face pinned to a regular polygon."""
    if outer is None:
        outer = max(g.faces, key=lambda f: (f.length, -f.id)).id
    boundary = list(dict.fromkeys(g.faces[outer].vertices))
    angles = np.linspace(0.0, 2 * np.pi, len(boundary), endpoint=False)
    pos = {v: (float(np.cos(a)), float(np.sin(a))) for v, a in zip(boundary, angles)}

    inner = [v for v in g.vertices if v not in pos]
    if inner:
        index = {v: i for i, v in enumerate(inner)}
        lap = np.zeros((len(inner), len(inner)))
        rhs = np.zeros((len(inner), 2))
        for v in inner:
            i = index[v]
            lap[i, i] = g.degree(v)
            for u in g.neighbours(v):
                if u in index:
                    lap[i, index[u]] -= 1.0
                else:
                    rhs[i] += pos[u]
        solved = np.linalg.solve(lap, rhs)
        pos.update({v: (float(solved[index[v], 0]), float(solved[index[v], 1])) for v in inner})
    return pos


def render_svg(
    g: PlaneGraph,
    path: Path,
    partition: Optional[ForestBipartition] = None,
    cycle: Optional[HamiltonCycle] = None,
) -> Path:
    """Triangulation coloured by part, crossing edges dashed, dual cycle overlaid."""
    pos = tutte_layout(g)
    graph = g.nx_graph
    crossing = set(cycle.crossing_edges) if cycle is not None else set()
    if partition is not None:
        colours = [PART_COLOURS[partition.part_of[v]] for v in g.vertices]
    else:
        colours = ["lightgrey"] * g.vertex_count

    # pyplot-free; called from worker threads
    fig = Figure(figsize=(8, 8))
    ax = fig.subplots()
    solid = [e for e in g.edges if e not in crossing]
    nx.draw_networkx_edges(graph, pos, edgelist=solid, ax=ax, width=1.5, edge_color="black")
    nx.draw_networkx_edges(graph, pos, edgelist=sorted(crossing), ax=ax, width=0.8, style="dashed", edge_color="grey")
    nx.draw_networkx_nodes(graph, pos, nodelist=list(g.vertices), node_color=colours, node_size=180, ax=ax)
    nx.draw_networkx_labels(graph, pos, font_size=7, ax=ax)

    if cycle is not None:
        centres = {f.id: np.array([pos[v] for v in f.vertices]).mean(axis=0) for f in g.faces}
        seq = list(cycle.dual_vertices) + [cycle.dual_vertices[0]]
        ax.plot([centres[f][0] for f in seq], [centres[f][1] for f in seq], color="crimson", linewidth=1.2, alpha=0.8)
    ax.set_aspect("equal")
    ax.axis("off")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg")
    logger.info("Wrote %s", path)
    return path
