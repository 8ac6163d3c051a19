import logging
import sys
from dataclasses import dataclass
from typing import Callable, List, Optional

import click
from pydantic import ValidationError

from app.core.config import Settings, settings
from app.core.errors import BarnetteError, FormatError
from app.core.logging import setup_logging
from app.crud import FORMATS, read_graphs
from app.crud.dot import write_dot
from app.crud.planar_code import write_planar_code
from app.crud.rotation_text import write_rotation_text
from app.models.plane_graph import PlaneGraph
from app.schemas.reports import (
    CountReport,
    CycleReport,
    DiagnosticsReport,
    ErrorReport,
    OracleReport,
    RunConfig,
)
from app.services.hamilton_service import HamiltonService
from app.services.synth import corpus

logger = logging.getLogger(__name__)


@dataclass
class CliState:
    run: RunConfig
    config: Settings
    service: HamiltonService


def get_hamilton_service(config: Settings) -> HamiltonService:
    """Service bound to the per-run settings."""
    return HamiltonService(config)


def _run_settings(run: RunConfig, log_level: Optional[str]) -> Settings:
    update = {"trace": run.trace, "seed": run.seed, "workers": run.workers}
    if run.cap_oracle:
        update["cap_override"] = run.cap_oracle
    if run.emit_svg:
        update["svg_dir"] = run.emit_svg
    if log_level:
        update["log_level"] = log_level
    return settings.model_copy(update=update)


def _fail(state: CliState, exc: BarnetteError) -> None:
    """Report a failure that stops the whole command."""
    if state.run.json_output:
        click.echo(ErrorReport.from_error(exc).model_dump_json())
    else:
        click.echo(f"error: {exc.code}: {exc.message}", err=True)
    sys.exit(exc.exit_code)


def _load(state: CliState, stream) -> List[PlaneGraph]:
    try:
        graphs = read_graphs(stream.read(), state.run.format)
    except BarnetteError as exc:
        _fail(state, exc)
    if not graphs:
        _fail(state, FormatError("Input holds no graphs"))
    return graphs


def _emit(state: CliState, results: list, text: Callable) -> int:
    """Print each result in input order; the highest exit code wins."""
    code = 0
    for result in results:
        if isinstance(result, ErrorReport):
            code = max(code, result.exit_code)
            if state.run.json_output:
                click.echo(result.model_dump_json())
            else:
                label = f"{result.name}: " if result.name else ""
                click.echo(f"{label}error: {result.code}: {result.message}", err=True)
            continue
        if isinstance(result, DiagnosticsReport) and not result.valid:
            code = max(code, 1)
        if state.run.json_output:
            click.echo(result.model_dump_json())
        else:
            for line in text(result):
                click.echo(line)
    return code


@click.group()
@click.option("--format", "fmt", type=click.Choice(FORMATS), default="auto", help="Input format.")
@click.option("--json", "json_output", is_flag=True, help="One JSON report per graph.")
@click.option("--trace", is_flag=True, help="Log colouring engine steps.")
@click.option("--emit-svg", type=click.Path(file_okay=False), default=None, help="Directory for SVG pictures.")
@click.option("--cap-oracle", type=int, default=None, help="Vertex cap for brute-force enumeration.")
@click.option("--seed", type=int, default=None, help="Seed for corpus generation.")
@click.option("--workers", type=int, default=None, help="Worker threads for multi-graph input.")
@click.option("--log-level", default=None, help="Logging level.")
@click.pass_context
def cli(ctx, fmt, json_output, trace, emit_svg, cap_oracle, seed, workers, log_level):
    """Hamilton cycles in duals of Eulerian plane triangulations."""
    try:
        run = RunConfig(
            format=fmt,
            json_output=json_output,
            trace=trace,
            emit_svg=emit_svg,
            cap_oracle=cap_oracle,
            seed=seed if seed is not None else settings.seed,
            workers=workers or settings.workers,
        )
    except ValidationError as exc:
        raise click.BadParameter(str(exc))
    config = _run_settings(run, log_level)
    setup_logging(config.log_level, config.trace)
    ctx.obj = CliState(run=run, config=config, service=get_hamilton_service(config))


def _diagnostics_lines(r: DiagnosticsReport) -> List[str]:
    lines = list(r.problems)
    if r.valid:
        lines.append(
            f"family={r.family} big={r.big_count} big_neighbour_bound={r.big_neighbour_bound} "
            f"mixed_faces={'yes' if r.corollary21 else 'no'}"
        )
    return lines


@cli.command()
@click.argument("source", type=click.File("rb"), default="-")
@click.pass_obj
def validate(state: CliState, source):
    """Check that every input graph is an Eulerian plane triangulation."""
    graphs = _load(state, source)
    results = state.service.run_many(graphs, state.service.validate)
    sys.exit(_emit(state, results, _diagnostics_lines))


def _cycle_lines(r: CycleReport) -> List[str]:
    cycle = r.cubic_cycle if r.cubic_cycle is not None else r.cycle
    return [" ".join(str(v) for v in cycle)]


@cli.command()
@click.argument("source", type=click.File("rb"), default="-")
@click.option("--as", "as_", type=click.Choice(["auto", "triangulation", "cubic"]), default="auto",
              help="Read the input as a triangulation or as its cubic dual.")
@click.pass_obj
def hamiltonize(state: CliState, source, as_):
    """Construct and verify a Hamilton cycle of the dual of each input."""
    graphs = _load(state, source)
    results = state.service.run_many(graphs, lambda g: state.service.hamiltonize(g, as_))
    code = _emit(state, results, _cycle_lines)
    if code == 2 and not state.run.json_output:
        click.echo("hint: outside the construction's hypothesis; `barnette check` runs the brute-force oracle", err=True)
    sys.exit(code)


def _count_lines(r: CountReport) -> List[str]:
    lines = [f"k={r.k} guaranteed={r.guaranteed} found={r.found}"]
    lines.extend(" ".join(str(f) for f in c) for c in r.cycles)
    return lines


@cli.command()
@click.argument("source", type=click.File("rb"), default="-")
@click.pass_obj
def count(state: CliState, source):
    """At least 2^k distinct dual Hamilton cycles."""
    graphs = _load(state, source)
    results = state.service.run_many(graphs, state.service.count)
    sys.exit(_emit(state, results, _count_lines))


def _oracle_lines(r: OracleReport) -> List[str]:
    member = {None: "n/a", True: "yes", False: "no"}[r.pipeline_cycle_in_oracle]
    return [
        f"hamilton={r.hamilton_count} forests={r.forest_bipartition_count} two_trees={r.two_tree_count} "
        f"agreement={'yes' if r.agreement else 'no'} pipeline={member}"
    ]


@cli.command()
@click.argument("source", type=click.File("rb"), default="-")
@click.pass_obj
def check(state: CliState, source):
    """Brute-force cross-check of dual Hamiltonicity against forest bipartitions."""
    graphs = _load(state, source)
    results = state.service.run_many(graphs, state.service.check)
    sys.exit(_emit(state, results, _oracle_lines))


@cli.command()
@click.option("--max-vertices", type=int, default=None, help="Skip instances above this order.")
@click.option("--extra", type=int, default=2, help="Randomly retyped cube seeds to add.")
@click.option("-o", "--output", type=click.File("wb"), default="-", help="planar_code stream.")
@click.option("--tags", type=click.File("w"), default=None, help="JSON lines sidecar of instance tags.")
@click.pass_obj
def generate(state: CliState, max_vertices, extra, output, tags):
    """Write the deterministic test corpus as planar_code."""
    try:
        instances = corpus(seed=state.run.seed, max_vertices=max_vertices, extra=extra)
        tag_reports = [state.service.tag(i) for i in instances]
    except BarnetteError as exc:
        _fail(state, exc)
    output.write(write_planar_code(i.graph for i in instances))
    if tags is not None:
        for tag in tag_reports:
            tags.write(tag.model_dump_json() + "\n")
    elif state.run.json_output:
        for tag in tag_reports:
            click.echo(tag.model_dump_json(), err=True)
    logger.info("Generated %d instances", len(instances))


@cli.command()
@click.argument("source", type=click.File("rb"), default="-")
@click.option("--to", "target", type=click.Choice(["planar_code", "rotation", "dot"]), required=True)
@click.option("-o", "--output", type=click.File("wb"), default="-")
@click.pass_obj
def convert(state: CliState, source, target, output):
    """Convert between planar_code, rotation text and DOT."""
    graphs = _load(state, source)
    if target == "planar_code":
        output.write(write_planar_code(graphs))
    elif target == "rotation":
        output.write(write_rotation_text(graphs).encode("ascii"))
    else:
        text = "".join(write_dot(g, name=f"G{i}") for i, g in enumerate(graphs))
        output.write(text.encode("ascii"))


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
