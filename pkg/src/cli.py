"""
    Command Line Interface for the connected partition sampler.
    This module wires graph construction, gadgets, exact counting, exact and
    tree-based sampling, the flip-walk chain, experiments and the
    verification battery into one click group.

    Exit codes: 0 on success, 1 on a library error or a failed verification,
    2 on a usage error.
"""
import json
import logging
from pathlib import Path
from typing import List, Optional

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from src.errors import PartitionSamplerError
from src.experiments.presets import PRESETS, preset
from src.experiments.runner import ExperimentRunner, load_plan
from src.experiments.verify import LEVELS, verify_suite, write_report
from src.gadgets.bigons import chain_of_bigons, chain_of_dipoles, doubled_star
from src.gadgets.marginal import marginal_graph, w_marginal_graph
from src.gadgets.rd import build_rd, build_td, vertex_replace_rd
from src.generators.io import GraphDocument, build_graph, export, export_document, export_gadget, ingest
from src.generators.visualizer import GraphVisualizer
from src.mcmc.flip import FlipChain, initial_partition
from src.mcmc.heatmap import heatmap_export
from src.models.chain_models import ChainConfig
from src.models.experiment_models import ExperimentConfig
from src.models.graph_models import Layout
from src.models.sampler_models import SampleRecord
from src.oracle.enumeration import enum_connected_partitions, enum_simple_cycles
from src.samplers.inductive import sample_balanced_uniform, sample_sc_uniform
from src.samplers.rng import SeededRng
from src.samplers.trees import draw_tree_partition
from src.spdp.cycles import count_simple_cycles
from src.spdp.remainder import balanced_count_remainder, sc_count_remainder
from src.spdp.tables import count_balanced
from src.utils.config_manager import ConfigManager, LogManager

# Initialize rich console for terminal output
console = Console()
logger = logging.getLogger(__name__)

LIBRARY_ERRORS = (PartitionSamplerError, ValueError, KeyError, OSError)


def setup_logging(debug: bool = False) -> None:
    """Rich console logging; ``--debug`` lowers the level to DEBUG."""
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO,
        format="%(message)s",
        handlers=[RichHandler(console=console, rich_tracebacks=True)],
        force=True,
    )


def parse_ids(ctx, param, value: Optional[str]) -> List[int]:
    """
        Parse a comma-separated edge id list.

        Raises:
            click.BadParameter: If an id is not an integer
    """
    if not value:
        return []
    try:
        return [int(item) for item in value.split(',') if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got '{value}'")


def load_document(path: Path) -> GraphDocument:
    try:
        return ingest(path)
    except PartitionSamplerError as e:
        raise click.ClickException(str(e))


graph_option = click.option(
    '--graph', 'graph_path',
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help='Graph JSON file'
)


@click.group()
@click.option(
    '--config',
    type=click.Path(exists=True, file_okay=True, dir_okay=False, path_type=Path),
    help='Path to configuration file'
)
@click.option('--seed', type=int, default=None, help='Root seed (fresh entropy when omitted)')
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker processes')
@click.option(
    '--out',
    type=click.Path(file_okay=False, dir_okay=True, path_type=Path),
    default=None,
    help='Output directory'
)
@click.option('--debug/--no-debug', default=False, help='Enable debug logging')
@click.pass_context
def cli(ctx, config: Optional[Path], seed: Optional[int], threads: Optional[int], out: Optional[Path], debug: bool):
    """
        Exact counting, exact sampling and flip-walk MCMC for connected graph partitions.
    """
    setup_logging(debug)
    try:
        config_manager = ConfigManager(config)
        LogManager(config_manager.config)
    except (FileNotFoundError, ValueError) as e:
        console.print(f"[red]Error loading configuration: {str(e)}[/red]")
        raise click.Abort()
    settings = config_manager.config
    ctx.ensure_object(dict)
    ctx.obj['config'] = settings
    ctx.obj['seed'] = seed
    ctx.obj['threads'] = threads or int(settings['experiments'].get('threads', 1))
    ctx.obj['out'] = out or Path(settings['experiments'].get('output_dir', 'runs'))


def root_rng(ctx) -> SeededRng:
    rng = SeededRng(ctx.obj['seed'])
    if ctx.obj['seed'] is None:
        console.print(f"[yellow]No --seed given; using entropy {rng.sequence.entropy}[/yellow]")
    return rng


@cli.command('build-graph')
@click.argument('family', type=click.Choice(['grid', 'shaved_grid', 'gate', 'franken', 'triangular', 'cycle', 'k4', 'theta']))
@click.option('--n', type=int, default=4, help='Size parameter')
@click.option('--m', type=int, default=None, help='Second grid dimension (defaults to --n)')
@click.option('--w', type=float, default=2.0, help='Gate width in [0, 3]')
@click.option('--strict-zero/--literal-zero', default=False, help='Width 0 gate without any diagonal')
@click.option('--lengths', default='1,2,2', help='Theta path lengths')
@click.option('--output', type=click.Path(dir_okay=False, path_type=Path), required=True, help='Graph JSON to write')
@click.option('--dot/--no-dot', default=False, help='Also write a DOT drawing next to the JSON')
@click.pass_context
def build_graph_command(ctx, family: str, n: int, m: Optional[int], w: float, strict_zero: bool,
                        lengths: str, output: Path, dot: bool):
    """
        Generate a graph family and write it as JSON.
    """
    spec = {'family': family, 'n': n, 'm': m or n, 'w': w, 'strict_zero': strict_zero,
            'lengths': [int(x) for x in lengths.split(',')]}
    try:
        document = build_graph(spec)
    except LIBRARY_ERRORS as e:
        raise click.ClickException(str(e))
    path = export_document(document, output)
    if dot:
        visualizer = GraphVisualizer(ctx.obj['config'])
        visualizer.save_diagram(visualizer.generate_dot(document.graph, document.layout), output.with_suffix('.dot'))
    console.print(
        f"[green]✓[/green] {family}: {document.graph.node_count} nodes, "
        f"{document.graph.number_of_edges} edges -> {path}"
    )


@cli.command()
@click.argument('kind', type=click.Choice(['bigons', 'dipoles', 'star', 'rd', 'rd-replace', 'td', 'marginal', 'w-marginal']))
@click.option('--graph', 'graph_path', type=click.Path(exists=True, dir_okay=False, path_type=Path),
              help='Base graph JSON (not needed for rd)')
@click.option('--d', type=click.IntRange(min=0), default=1, help='Gadget depth')
@click.option('--r', type=click.IntRange(min=2), default=2, help='Parallel edges per dipole')
@click.option('--j', callback=parse_ids, help='Forced edge ids (marginal graphs)')
@click.option('--j2', callback=parse_ids, help='Forbidden edge ids (marginal graphs)')
@click.option('--output', type=click.Path(dir_okay=False, path_type=Path), required=True, help='Derived graph JSON to write')
def gadget(kind: str, graph_path: Optional[Path], d: int, r: int, j: List[int], j2: List[int], output: Path):
    """
        Build a gadget graph and write it with its provenance sidecar.
    """
    try:
        if kind == 'rd':
            rd = build_rd(d)
            export(rd.graph, output, Layout(rd.coords) if rd.coords else None, rd.plane)
            console.print(f"[green]✓[/green] R_{d}: {rd.graph.node_count} nodes -> {output}")
            return
        if graph_path is None:
            raise click.UsageError(f"gadget '{kind}' needs --graph")
        document = load_document(graph_path)
        g = document.graph
        if kind == 'bigons':
            m = chain_of_bigons(g, d)
        elif kind == 'dipoles':
            m = chain_of_dipoles(g, r, d)
        elif kind == 'star':
            m = doubled_star(g, d)
        elif kind == 'rd-replace':
            m = vertex_replace_rd(document.require_plane(), d)
        elif kind == 'td':
            m = build_td(document.require_plane(), d)
        elif kind == 'marginal':
            m = marginal_graph(g, j, j2, d)
        else:
            m = w_marginal_graph(g, None, j, j2, d)
        graph_file, sidecar = export_gadget(m, output)
    except LIBRARY_ERRORS as e:
        raise click.ClickException(str(e))
    console.print(
        f"[green]✓[/green] {kind}: {m.derived_graph.node_count} nodes, "
        f"{m.derived_graph.number_of_edges} edges -> {graph_file} (+ {sidecar.name})"
    )


@cli.command()
@click.argument('what', type=click.Choice(['sc', 'balanced', 'marginal', 'balanced-marginal', 'partitions']))
@graph_option
@click.option('--j', callback=parse_ids, help='Forced edge ids')
@click.option('--j2', callback=parse_ids, help='Forbidden edge ids')
@click.option('--d', type=int, default=None, help='Remainder modulus exponent override')
@click.option('--k', type=click.IntRange(min=1), default=2, help='Blocks, for partitions')
@click.option('--brute/--dp', default=False, help='Count by enumeration instead of the dynamic program')
@click.pass_context
def count(ctx, what: str, graph_path: Path, j: List[int], j2: List[int], d: Optional[int], k: int, brute: bool):
    """
        Exact counts: simple cycles, balanced 2-partitions, and their constrained versions.
    """
    g = load_document(graph_path).graph
    spdp = ctx.obj['config'].get('spdp', {})
    guards = ctx.obj['config'].get('enumeration', {})
    try:
        if what == 'sc':
            value = len(enum_simple_cycles(g, guards.get('max_edges'))) if brute else count_simple_cycles(g)
        elif what == 'balanced':
            if brute:
                value = len(enum_connected_partitions(g, 2, eps=0, max_states=guards.get('max_states')))
            else:
                value = count_balanced(g)
        elif what == 'marginal':
            value = sc_count_remainder(g, j, j2, d if d is not None else spdp.get('cycle_d'))
        elif what == 'balanced-marginal':
            value = balanced_count_remainder(g, None, j, j2, d if d is not None else spdp.get('balanced_d'))
        else:
            value = len(enum_connected_partitions(g, k, max_states=guards.get('max_states')))
    except LIBRARY_ERRORS as e:
        raise click.ClickException(str(e))
    console.print(f"{what}: {value}")


@cli.command()
@click.argument('what', type=click.Choice(['sc', 'balanced', 'tree-partition']))
@graph_option
@click.option('--count', 'draws', type=click.IntRange(min=1), default=1, help='Number of samples')
@click.option('--eps', type=str, default=None, help='Balance tolerance for tree partitions')
@click.option('--tree-kind', type=click.Choice(['ust', 'mst']), default=None, help='Spanning tree source')
@click.option('--mode', type=click.Choice(['redraw', 'reject']), default=None, help='Tree partition retry mode')
@click.option('--method', type=click.Choice(['direct', 'remainder']), default='direct', help='Cycle marginal method')
@click.option('--output', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='JSON-lines file for the samples (default: print)')
@click.pass_context
def sample(ctx, what: str, graph_path: Path, draws: int, eps: Optional[str], tree_kind: Optional[str],
           mode: Optional[str], method: str, output: Optional[Path]):
    """
        Draw exact samples (cycles, balanced partitions) or tree partitions.
    """
    g = load_document(graph_path).graph
    settings = ctx.obj['config']['samplers']
    spdp = ctx.obj['config'].get('spdp', {})
    records = []
    try:
        for index, rng in enumerate(root_rng(ctx).spawn(draws)):
            if what == 'sc':
                d = spdp.get('cycle_d') if method == 'remainder' else None
                records.append(SampleRecord.from_edges(index, 'sc', sample_sc_uniform(g, rng, method, d)))
            elif what == 'balanced':
                p = sample_balanced_uniform(g, None, rng, spdp.get('balanced_d'))
                records.append(SampleRecord(index, 'balanced', (), assign=p.assign))
            else:
                draw = draw_tree_partition(
                    g, None,
                    eps if eps is not None else settings.get('eps', 0.05),
                    tree_kind or settings.get('tree_kind', 'ust'),
                    rng,
                    max_retries=int(settings.get('max_retries', 1000)),
                    mode=mode or settings.get('tree_partition_mode', 'redraw'),
                )
                records.append(SampleRecord(
                    index, 'tree-partition', (draw.edge,), assign=draw.partition.assign, attempts=draw.attempts
                ))
    except LIBRARY_ERRORS as e:
        raise click.ClickException(str(e))
    lines = [record.to_json() for record in records]
    if output is None:
        for line in lines:
            console.print(line, markup=False, highlight=False)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text('\n'.join(lines) + '\n')
    console.print(f"[green]✓[/green] {len(records)} samples -> {output}")


@cli.command('mcmc-run')
@graph_option
@click.option('--lambda', 'lam', type=str, default=None, help='Fugacity')
@click.option('--apd', type=str, default=None, help='Allowed population deviation in percent')
@click.option('--steps', type=click.IntRange(min=0), default=None, help='Chain steps')
@click.option('--init', default='diag', help='diag, horiz, vert or a plan JSON file')
@click.option('--stats-out', type=click.Path(file_okay=False, path_type=Path), default=None,
              help='Directory for heatmaps and tables (default: --out)')
@click.option('--trace-stride', type=click.IntRange(min=0), default=None, help='Record |cut| every N steps')
@click.option('--checkpoint', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Checkpoint file written every chain.checkpoint_every steps')
@click.option('--resume', type=click.Path(exists=True, dir_okay=False, path_type=Path), default=None,
              help='Continue from a checkpoint')
@click.pass_context
def mcmc_run(ctx, graph_path: Path, lam: Optional[str], apd: Optional[str], steps: Optional[int], init: str,
             stats_out: Optional[Path], trace_stride: Optional[int], checkpoint: Optional[Path],
             resume: Optional[Path]):
    """
        Run the Metropolis flip walk and export flip-count and occupancy heatmaps.
    """
    settings = ctx.obj['config']
    document = load_document(graph_path)
    g, layout = document.graph, document.layout
    try:
        if resume is not None:
            chain = FlipChain.load_checkpoint(g, resume)
        else:
            config = ChainConfig.from_config(
                settings, **{'lambda': lam, 'apd_percent': apd, 'steps': steps, 'trace_stride': trace_stride}
            )
            if init in ('diag', 'horiz', 'vert'):
                if layout is None:
                    raise click.UsageError(f"--init {init} needs a graph file with a layout")
                initial = initial_partition(g, layout, init)
            else:
                initial = load_plan(init, g.node_count)
            chain = FlipChain(g, config, initial, rng=root_rng(ctx))
        with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"), console=console) as progress:
            task = progress.add_task("Running flip walk...", total=None)
            stride = max(chain.config.steps // 100, 1)

            def report(done: int) -> None:
                if done % stride == 0:
                    progress.update(task, description=f"Flip walk: {done}/{chain.config.steps} steps")

            state, stats = chain.run(checkpoint_path=checkpoint, on_step=report)
        out_dir = stats_out or ctx.obj['out']
        output = settings.get('output', {})
        written = heatmap_export(
            stats, layout, out_dir,
            max_gray=int(output.get('pgm_max_gray', 255)),
            float_format=output.get('csv_float_format', '%.6f'),
        )
        if checkpoint is not None:
            chain.save_checkpoint(checkpoint)
    except LIBRARY_ERRORS as e:
        raise click.ClickException(str(e))
    console.print(
        f"[green]✓[/green] {stats.steps} steps, {stats.accepted} moves, final cut {state.cut_size}, "
        f"mean cut {stats.mean_cut():.3f}; {len(written)} files in {out_dir}"
    )


@cli.command()
@click.argument('name')
@click.option('--steps', type=click.IntRange(min=0), default=None, help='Override chain steps')
@click.option('--samples', type=click.IntRange(min=1), default=None, help='Override sample counts')
@click.option('--graph-file', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Graph file for presets built on an ingested graph')
@click.pass_context
def experiment(ctx, name: str, steps: Optional[int], samples: Optional[int], graph_file: Optional[str]):
    """
        Run a named preset or an experiment config JSON file.
    """
    try:
        if Path(name).is_file():
            with open(name, 'r') as f:
                config = ExperimentConfig.from_dict(json.load(f))
            if ctx.obj['seed'] is not None:
                config.seed = ctx.obj['seed']
        elif name in PRESETS:
            config = preset(name, steps=steps, samples=samples, seed=ctx.obj['seed'],
                            output_dir=str(ctx.obj['out']), graph_file=graph_file)
        else:
            raise click.BadParameter(f"'{name}' is neither a config file nor a preset ({', '.join(sorted(PRESETS))})",
                                     param_hint='NAME')
        runner = ExperimentRunner(ctx.obj['config'], ctx.obj['threads'])
        with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"), console=console) as progress:
            progress.add_task(f"Running {config.experiment_id}...", total=None)
            record = runner.run(config)
    except LIBRARY_ERRORS as e:
        raise click.ClickException(str(e))
    console.print(f"[green]✓[/green] {record.experiment_id} ({record.config_hash[:12]}), seed {record.seed}")
    for entry in record.manifest:
        console.print(f"  {entry}")


@cli.command()
@click.option('--level', type=click.Choice(list(LEVELS)), default='quick', help='Battery size')
@click.option('--report', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='JSON report path (default: <out>/verify_<level>.json)')
@click.pass_context
def verify(ctx, level: str, report: Optional[Path]):
    """
        Check formulas, dynamic programs, samplers and the chain against brute force.
    """
    seed = ctx.obj['seed'] if ctx.obj['seed'] is not None else 0
    results = verify_suite(level, seed)
    table = Table(title=f"verify ({level})")
    table.add_column("check")
    table.add_column("result")
    table.add_column("cases", justify="right")
    table.add_column("detail")
    for result in results:
        status = "[green]pass[/green]" if result.passed else "[red]FAIL[/red]"
        table.add_row(result.name, status, str(result.cases), result.detail)
    console.print(table)
    path = write_report(results, report or ctx.obj['out'] / f"verify_{level}.json", level, seed)
    console.print(f"Report written to {path}")
    if not all(result.passed for result in results):
        raise SystemExit(1)


if __name__ == '__main__':
    cli(obj={})
