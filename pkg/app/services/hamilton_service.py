import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, List, Optional, TypeVar, Union

from pydantic import BaseModel

from app.core.config import Settings, settings as default_settings
from app.core.errors import BarnetteError, HypothesisError
from app.models.coloring import EngineTrace
from app.models.plane_graph import PlaneGraph
from app.models.recipe import CorpusInstance
from app.schemas.reports import (
    CorpusTag,
    CountReport,
    CycleReport,
    DiagnosticsReport,
    ErrorReport,
    OracleReport,
)
from app.services.oracle import cross_check_stein
from app.services.render import render_svg
from app.services.stein import hamilton_lower_bound, hamiltonize
from app.services.triangulation import (
    big_neighbour_bound,
    big_small_split,
    classify_family,
    corollary21_hypothesis,
    diagnostic_lines,
    validate_eulerian_triangulation,
)

logger = logging.getLogger(__name__)

R = TypeVar("R", bound=BaseModel)


def _summary(g: PlaneGraph) -> dict:
    return {"name": g.name, "vertices": g.vertex_count, "edges": g.edge_count, "faces": g.face_count}


class HamiltonService:
    """Runs the pipeline commands on parsed graphs and shapes their reports."""

    def __init__(self, config: Settings = default_settings):
        self.config = config

    def validate(self, g: PlaneGraph) -> DiagnosticsReport:
        """Diagnostics plus family tags for a valid triangulation."""
        problems = validate_eulerian_triangulation(g)
        report = DiagnosticsReport(valid=not problems, problems=diagnostic_lines(problems), **_summary(g))
        if problems:
            return report
        split = big_small_split(g)
        return report.model_copy(update={
            "family": classify_family(g, split).name,
            "big_count": len(split.big),
            "big_neighbour_bound": big_neighbour_bound(g, split),
            "corollary21": corollary21_hypothesis(g, split),
        })

    def hamiltonize(self, g: PlaneGraph, as_: str = "auto") -> CycleReport:
        """Verified dual Hamilton cycle, with the engine trace when tracing."""
        trace = EngineTrace() if self.config.is_tracing else None
        result = hamiltonize(g, as_, self.config, trace)
        if self.config.svg_dir:
            name = g.name or f"graph_{abs(hash(g)) % 10**8}"
            render_svg(result.triangulation, Path(self.config.svg_dir) / f"{name}.svg", result.partition, result.cycle)
        t = result.triangulation
        return CycleReport(
            method=result.method,
            length=result.cycle.length,
            cycle=list(result.cycle.dual_vertices),
            cubic_cycle=list(result.cubic_cycle) if result.cubic_cycle is not None else None,
            crossing_edges=[list(e) for e in sorted(result.cycle.crossing_edges)],
            parts=[sorted(p) for p in result.partition.parts],
            trace=trace.lines() if trace is not None else [],
            **_summary(t),
        )

    def count(self, g: PlaneGraph) -> CountReport:
        """Distinct dual Hamilton cycles from the multiplicity construction."""
        bound = hamilton_lower_bound(g, config=self.config)
        return CountReport(
            k=bound.k,
            guaranteed=bound.guaranteed,
            found=len(bound.cycles),
            chosen_faces=list(bound.chosen_faces),
            cycles=[list(c.dual_vertices) for c in bound.cycles],
            **_summary(g),
        )

    def check(self, g: PlaneGraph) -> OracleReport:
        return cross_check_stein(g, self.config)

    def tag(self, instance: CorpusInstance) -> CorpusTag:
        g = instance.graph
        split = big_small_split(g)
        return CorpusTag(
            name=instance.name,
            source=instance.source,
            vertices=g.vertex_count,
            family=classify_family(g, split).name,
            big_count=len(split.big),
            big_neighbour_bound=big_neighbour_bound(g, split),
            corollary21=corollary21_hypothesis(g, split),
        )

    def run_many(
        self, graphs: Iterable[PlaneGraph], action: Callable[[PlaneGraph], R], workers: Optional[int] = None
    ) -> List[Union[R, ErrorReport]]:
        """Apply ``action`` on a bounded pool; results keep input order."""

        def guarded(g: PlaneGraph) -> Union[R, ErrorReport]:
            try:
                return action(g)
            except HypothesisError as exc:
                logger.info("%r outside the hypothesis: %s", g, exc.message)
                return ErrorReport.from_error(exc, g.name)
            except BarnetteError as exc:
                logger.warning("%r failed: %s", g, exc.message)
                return ErrorReport.from_error(exc, g.name)

        with ThreadPoolExecutor(max_workers=workers or self.config.workers) as pool:
            return list(pool.map(guarded, graphs))
