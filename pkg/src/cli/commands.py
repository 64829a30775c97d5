"""
lobcal command line

One subcommand per pipeline stage:

    lobcal synth --days 5 --out ticks.csv
    lobcal ingest --ticks ticks.csv --out bars.csv
    lobcal weights --bars bars.csv --out weights.json
    lobcal simulate --preset stylized --seed 7 --out prices.csv
    lobcal stylized --preset ci --replications 10 --out-dir stylized
    lobcal calibrate --method nm-ta --bars bars.csv --preset stylized \\
        --free delta,sigma_z,N_L,N_H --iters 250 --seed 1 --out result.json
    lobcal surface --bars bars.csv --x delta --y N_L --range-x 1e-6,0.1 \\
        --range-y 100,10000 --out-dir surface
    lobcal compare --bars bars.csv --preset nm_ta_best --out compare.csv

Exit status: 0 success, 1 usage error, 2 data or validation error.
"""

import json
import logging
import sys
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click
import numpy as np
import yaml
from pydantic import ValidationError

from ..config.loader import ConfigLoader
from ..config.models import BootstrapSettings, OptimizerSettings, RunConfig
from ..config.settings import get_settings
from ..config.validation import validate_run_config
from ..dataio.bars import bars_from_quotes, write_bars
from ..dataio.outliers import tukey_interval
from ..dataio.synth import SynthSettings, synth_ticks
from ..dataio.ticks import parse_ticks, write_ticks
from ..engine.replications import run_replications
from ..engine.simulation import run_simulation
from ..metrics import set_metrics_enabled
from ..models.errors import DataFormatError, LobcalError
from ..models.params import ModelParams
from ..moments.statistics import moment_vector
from ..moments.stylized import stylized_report
from ..objective.msm import build_objective_spec
from ..optimize.summary import confidence_intervals
from ..parallel import WorkerPool
from ..surface.evaluate import SurfaceSpec, evaluate_surface
from ..surface.grid import interpolate_grid, write_grid
from ..utils.logging import clear_run_context, set_run_context, setup_json_logging
from . import pipelines
from .display import calibration_table, comparison_table, console, intervals_table, moments_table
from .provenance import PACKAGE_VERSION, write_meta


logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parents[2] / 'config'

EXIT_USAGE = 1
EXIT_DATA = 2


@dataclass
class CliContext:
    """Options shared by every subcommand"""
    seed: int = 0
    threads: Optional[int] = None
    config_dir: Path = DEFAULT_CONFIG_DIR
    _pool: Optional[WorkerPool] = field(default=None, repr=False)

    def seed_for(self, seed: Optional[int]) -> int:
        """A subcommand's --seed wins over the global one"""
        return self.seed if seed is None else seed

    def pool(self) -> WorkerPool:
        if self._pool is None:
            self._pool = WorkerPool(max_workers=self.threads)
        return self._pool

    def loader(self) -> ConfigLoader:
        return ConfigLoader(self.config_dir)

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None


def _parse_overrides(overrides: Sequence[str]) -> Dict[str, Any]:
    values = {}
    for item in overrides:
        name, sep, raw = item.partition('=')
        if not sep or not name.strip():
            raise click.BadParameter(f"expected NAME=VALUE, got '{item}'", param_hint="--set")
        values[name.strip()] = yaml.safe_load(raw)
    return values


def _parse_range(ctx, param, value: Optional[str]) -> Optional[Tuple[float, float]]:
    if value is None:
        return None
    parts = value.split(',')
    try:
        low, high = (float(p) for p in parts)
    except ValueError:
        raise click.BadParameter(f"expected LOW,HIGH, got '{value}'")
    return low, high


def _resolve_params(
    obj: CliContext,
    config_path: Optional[str],
    preset: Optional[str],
    overrides: Sequence[str],
    default_preset: str,
) -> ModelParams:
    if config_path and preset:
        raise click.UsageError("use either --config or --preset, not both")
    loader = obj.loader()
    params = loader.load_params(config_path) if config_path else loader.load_preset(preset or default_preset)
    updates = _parse_overrides(overrides)
    return params.with_updates(**updates) if updates else params


def _output(path: str) -> Path:
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    return out


def params_options(default_preset: str):
    """--config / --preset / --set"""
    def decorator(fn):
        fn = click.option(
            '--set', 'overrides', multiple=True, metavar='NAME=VALUE',
            help='Override one parameter (repeatable)'
        )(fn)
        fn = click.option(
            '--preset', default=None,
            help=f'Parameter preset from presets.yaml [default: {default_preset}]'
        )(fn)
        fn = click.option(
            '--config', 'config_path', type=click.Path(dir_okay=False), default=None,
            help='Parameter file (JSON or YAML)'
        )(fn)
        return fn
    return decorator


seed_option = click.option(
    '--seed', type=click.IntRange(min=0), default=None,
    help='Master seed (overrides the global --seed)'
)


@click.group()
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True, help='Master seed of every random draw')
@click.option('--threads', type=click.IntRange(min=1), default=None, help='Worker processes [default: available CPUs]')
@click.option(
    '--log-level', type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], case_sensitive=False),
    default=None, help='Log level [default: LOBCAL_LOG_LEVEL or INFO]'
)
@click.option('--log-file', type=click.Path(dir_okay=False), default=None, help='Also write JSON logs here')
@click.option('--config-dir', type=click.Path(file_okay=False), default=None, help='Directory holding presets.yaml')
@click.version_option(PACKAGE_VERSION, prog_name='lobcal')
@click.pass_context
def cli(ctx, seed, threads, log_level, log_file, config_dir):
    """Limit order book ABM simulation and calibration"""
    settings = get_settings()
    setup_json_logging(log_file or settings.log_file, log_level or settings.log_level)
    set_metrics_enabled(settings.metrics_enabled)

    if config_dir is None:
        config_dir = Path(settings.config_dir)
        if not (config_dir / 'presets.yaml').exists():
            config_dir = DEFAULT_CONFIG_DIR

    obj = CliContext(seed=seed, threads=threads or settings.threads, config_dir=Path(config_dir))
    ctx.obj = obj
    ctx.call_on_close(obj.close)
    ctx.call_on_close(clear_run_context)
    set_run_context(run_id=uuid.uuid4().hex[:12], stage=ctx.invoked_subcommand or 'cli', seed=seed)


@cli.command()
@click.option('--days', type=click.IntRange(min=1), default=5, show_default=True, help='Trading days')
@seed_option
@click.option('--out', default='ticks.csv', show_default=True, type=click.Path(dir_okay=False), help='Tick CSV')
@click.pass_obj
def synth(obj: CliContext, days, seed, out):
    """Generate a synthetic tick stream"""
    seed = obj.seed_for(seed)
    settings = SynthSettings()
    records = synth_ticks(days=days, seed=seed, settings=settings)
    path = _output(out)
    write_ticks(records, path)
    write_meta(path, 'synth', seed, {'days': days, 'settings': settings.model_dump(mode='json')})
    console.print(f"[green]✓[/green] {len(records)} ticks over {days} days → {path}")


@cli.command()
@click.option('--ticks', required=True, type=click.Path(dir_okay=False), help='Tick CSV')
@click.option('--out', default='bars.csv', show_default=True, type=click.Path(dir_okay=False), help='Bars CSV')
@click.option('--tukey-k', type=float, default=1.5, show_default=True, help='Outlier fence multiplier')
@click.pass_obj
def ingest(obj: CliContext, ticks, out, tukey_k):
    """Aggregate ticks into one-minute mid-price bars"""
    parsed = parse_ticks(ticks)
    for line, message in parsed.errors:
        logger.warning(f"Skipped tick at line {line}: {message}", extra={'line': line})
    if not parsed.records:
        raise DataFormatError(f"no valid tick records in {ticks}")

    bars = bars_from_quotes(parsed.records)
    if not bars:
        raise DataFormatError(f"no quotes inside the trading window in {ticks}")

    prices = np.array([b.mid_price for b in bars])
    outliers = 0
    if prices.size >= 4:
        interval = tukey_interval(prices, k=tukey_k)
        outliers = int(np.count_nonzero(interval.is_outlier(prices)))
        if outliers:
            logger.warning(
                f"{outliers} bars outside the Tukey interval [{interval.low:.4f}, {interval.high:.4f}]",
                extra={'count': outliers}
            )

    path = _output(out)
    write_bars(bars, path)
    write_meta(path, 'ingest', None, {
        'ticks': Path(ticks).name,
        'records': len(parsed.records),
        'skipped': len(parsed.errors),
        'tukey_k': tukey_k,
    })
    console.print(
        f"[green]✓[/green] {len(bars)} bars → {path} "
        f"({len(parsed.errors)} ticks skipped, {outliers} outlier bars)"
    )


@cli.command()
@click.option('--bars', required=True, type=click.Path(dir_okay=False), help='Bars CSV')
@click.option('--b', 'block', type=click.IntRange(min=1), default=100, show_default=True, help='Block length')
@click.option('--n', 'samples', type=click.IntRange(min=2), default=10000, show_default=True, help='Bootstrap samples')
@seed_option
@click.option('--out', default='weights.json', show_default=True, type=click.Path(dir_okay=False), help='Weights JSON')
@click.pass_obj
def weights(obj: CliContext, bars, block, samples, seed, out):
    """Estimate the weight matrix with the moving block bootstrap"""
    seed = obj.seed_for(seed)
    reference = pipelines.reference_series(bars)
    matrix = pipelines.estimate_weights(reference, block, samples, seed)

    path = _output(out)
    matrix.write(path)
    write_meta(path, 'weights', seed, {'bars': Path(bars).name, 'b': block, 'n': samples})
    console.print(moments_table("Reference moments", moment_vector(reference, reference).as_array()))
    console.print(f"[green]✓[/green] condition number {matrix.condition_number:.4e} → {path}")


@cli.command()
@params_options('stylized')
@seed_option
@click.option('--replications', type=click.IntRange(min=1), default=1, show_default=True, help='Independent paths')
@click.option('--out', default='prices.csv', show_default=True, type=click.Path(dir_okay=False), help='Price CSV')
@click.pass_obj
def simulate(obj: CliContext, config_path, preset, overrides, seed, replications, out):
    """Simulate price paths

    With --replications > 1 path k is written to <out stem>_<k>.csv.
    """
    seed = obj.seed_for(seed)
    params = _resolve_params(obj, config_path, preset, overrides, 'stylized')
    path = _output(out)

    if replications == 1:
        results = [run_simulation(params, seed)]
        targets = [path]
    else:
        results = run_replications(params, seed, replications, obj.pool())
        targets = [path.with_name(f"{path.stem}_{k:03d}{path.suffix}") for k in range(replications)]

    for k, (result, target) in enumerate(zip(results, targets)):
        result.to_csv(target)
        write_meta(target, 'simulate', result.seed, {'params': params.to_dict(), 'master_seed': seed, 'replication': k})

    last = results[0].market_prices[-1]
    console.print(f"[green]✓[/green] {len(results)} path(s) of T={params.T} → {targets[0]} (final price {last:.4f})")


@cli.command()
@params_options('stylized')
@seed_option
@click.option('--replications', type=click.IntRange(min=1), default=50, show_default=True, help='Pooled paths')
@click.option('--max-lag', type=click.IntRange(min=1), default=50, show_default=True, help='Largest ACF lag')
@click.option('--out-dir', default='stylized', show_default=True, type=click.Path(file_okay=False), help='Output directory')
@click.pass_obj
def stylized(obj: CliContext, config_path, preset, overrides, seed, replications, max_lag, out_dir):
    """Stylized-facts report: histogram, Q-Q, return ACFs"""
    seed = obj.seed_for(seed)
    params = _resolve_params(obj, config_path, preset, overrides, 'stylized')
    results = run_replications(params, seed, replications, obj.pool())
    report = stylized_report(results, max_lag=max_lag)

    config = {'params': params.to_dict(), 'replications': replications, 'max_lag': max_lag}
    for written in report.write(out_dir):
        write_meta(written, 'stylized', seed, config)

    acf_ret = report.acf_returns[report.acf_returns['lag'] >= 1]
    acf_abs = report.acf_abs_returns[report.acf_abs_returns['lag'] >= 1]
    inside = float((acf_ret['acf'].abs() <= acf_ret['band']).mean())
    console.print(
        f"[green]✓[/green] {report.n_returns} returns, kurtosis {report.kurtosis:.3f}, "
        f"{inside:.0%} of return ACF lags inside the band, "
        f"|r| ACF lag 1 = {acf_abs['acf'].iloc[0]:.3f} → {out_dir}"
    )


@cli.command()
@click.option('--run-config', type=click.Path(dir_okay=False), default=None, help='Run configuration (YAML/JSON)')
@click.option('--method', type=click.Choice(['nm-ta', 'nm_ta', 'ga']), default='nm-ta', show_default=True)
@click.option('--bars', type=click.Path(dir_okay=False), default=None, help='Reference bars CSV')
@params_options('stylized')
@click.option('--free', default=None, help='Comma-separated free parameters')
@click.option('--weights', 'weights_path', type=click.Path(dir_okay=False), default=None,
              help='Weights JSON [default: estimate from --bars]')
@click.option('--b', 'block', type=click.IntRange(min=1), default=100, show_default=True, help='Bootstrap block length')
@click.option('--n', 'samples', type=click.IntRange(min=2), default=10000, show_default=True, help='Bootstrap samples')
@click.option('--iters', type=click.IntRange(min=1), default=250, show_default=True, help='NM+TA iterations')
@click.option('--generations', type=click.IntRange(min=1), default=100, show_default=True, help='GA generations')
@click.option('--population', type=click.IntRange(min=2), default=100, show_default=True, help='GA population size')
@click.option('--replications', type=click.IntRange(min=1), default=5, show_default=True, help='Replications per evaluation')
@click.option('--runs', type=click.IntRange(min=1), default=1, show_default=True, help='Independent repetitions')
@seed_option
@click.option('--out', default='result.json', show_default=True, type=click.Path(dir_okay=False), help='Result JSON')
@click.pass_obj
def calibrate(obj: CliContext, run_config, method, bars, config_path, preset, overrides, free, weights_path,
              block, samples, iters, generations, population, replications, runs, seed, out):
    """Calibrate free parameters by the method of simulated moments

    With --run-config every other setting comes from the file, except
    --seed (when given) and --out.
    """
    if run_config:
        config = obj.loader().load_run_config(run_config)
        if seed is not None:
            config = config.model_copy(update={'seed': seed})
    else:
        if not bars:
            raise click.UsageError("--bars is required without --run-config")
        if not free:
            raise click.UsageError("--free is required without --run-config")
        config = RunConfig(
            params=_resolve_params(obj, config_path, preset, overrides, 'stylized'),
            free_params=free,
            bars=bars,
            weights=weights_path,
            bootstrap=BootstrapSettings(b=block, n=samples),
            optimizer=OptimizerSettings(
                method=method,
                iterations=iters,
                generations=generations,
                population_size=population,
                replications=replications,
                runs=runs,
            ),
            seed=obj.seed_for(seed),
            output_dir=str(Path(out).parent),
        )
    validate_run_config(config)

    results = pipelines.calibrate(config, obj.pool())
    path = _output(out)
    if len(results) == 1:
        results[0].write(path)
    else:
        intervals = confidence_intervals(results)
        document = {
            'runs': [r.to_dict() for r in results],
            'confidence_intervals': intervals,
            'level': 0.95,
        }
        path.write_text(json.dumps(document, indent=2), encoding='utf-8')
    write_meta(path, 'calibrate', config.seed, config.model_dump(mode='json', by_alias=True))

    for result in results:
        console.print(calibration_table(result))
    if len(results) > 1:
        console.print(intervals_table(intervals))
    evaluations = sum(r.evaluations for r in results)
    console.print(f"[green]✓[/green] {evaluations} objective evaluations → {path}")


@cli.command()
@click.option('--bars', required=True, type=click.Path(dir_okay=False), help='Reference bars CSV')
@params_options('nm_ta_best')
@click.option('--weights', 'weights_path', type=click.Path(dir_okay=False), default=None,
              help='Weights JSON [default: estimate from --bars]')
@click.option('--b', 'block', type=click.IntRange(min=1), default=100, show_default=True, help='Bootstrap block length')
@click.option('--n', 'samples', type=click.IntRange(min=2), default=10000, show_default=True, help='Bootstrap samples')
@click.option('--x', 'param_x', required=True, help='Parameter on the x axis')
@click.option('--y', 'param_y', required=True, help='Parameter on the y axis')
@click.option('--range-x', required=True, callback=_parse_range, help='LOW,HIGH of the x parameter')
@click.option('--range-y', required=True, callback=_parse_range, help='LOW,HIGH of the y parameter')
@click.option('--points', type=click.IntRange(min=1), default=1000, show_default=True, help='Sobol points')
@click.option('--replications', type=click.IntRange(min=1), default=5, show_default=True, help='Replications per point')
@click.option('--resolution', type=click.IntRange(min=2), default=100, show_default=True, help='Grid cells per axis')
@seed_option
@click.option('--out-dir', default='surface', show_default=True, type=click.Path(file_okay=False), help='Output directory')
@click.pass_obj
def surface(obj: CliContext, bars, config_path, preset, overrides, weights_path, block, samples,
            param_x, param_y, range_x, range_y, points, replications, resolution, seed, out_dir):
    """Objective surface over two parameters"""
    seed = obj.seed_for(seed)
    params = _resolve_params(obj, config_path, preset, overrides, 'nm_ta_best')
    spec = SurfaceSpec(
        param_x=param_x, param_y=param_y, range_x=range_x, range_y=range_y,
        n_points=points, replications=replications,
    )
    reference = pipelines.reference_series(bars)
    matrix = pipelines.weights_for(reference, weights_path, block, samples, seed)
    objective_spec = build_objective_spec(reference, params, spec.space(), matrix, replications=replications)

    sampled = evaluate_surface(spec, objective_spec, seed, obj.pool())
    config = {'params': params.to_dict(), 'surface': spec.model_dump(mode='json'), 'bars': Path(bars).name}
    written = [sampled.write(out_dir)]
    if points >= 4:
        written.append(write_grid(interpolate_grid(sampled.frame, resolution), out_dir))
    else:
        logger.warning(f"Only {points} points, skipping interpolation", extra={'count': points})
    for path in written:
        write_meta(path, 'surface', seed, {**config, 'resolution': resolution})

    finite = sampled.frame['f'][np.isfinite(sampled.frame['f'])]
    span = f"f in [{finite.min():.4g}, {finite.max():.4g}]" if len(finite) else "no finite values"
    console.print(f"[green]✓[/green] {points} points, {span} → {out_dir}")


@cli.command()
@click.option('--bars', required=True, type=click.Path(dir_okay=False), help='Reference bars CSV')
@params_options('nm_ta_best')
@click.option('--paths', type=click.IntRange(min=2), default=50, show_default=True, help='Simulated paths')
@click.option('--level', type=click.FloatRange(0, 1, min_open=True, max_open=True), default=0.95, show_default=True)
@seed_option
@click.option('--out', default='compare.csv', show_default=True, type=click.Path(dir_okay=False), help='Comparison CSV')
@click.pass_obj
def compare(obj: CliContext, bars, config_path, preset, overrides, paths, level, seed, out):
    """Simulated moment confidence intervals against the data moments"""
    seed = obj.seed_for(seed)
    params = _resolve_params(obj, config_path, preset, overrides, 'nm_ta_best')
    reference = pipelines.reference_series(bars)
    frame = pipelines.compare_moments(reference, params, paths, seed, level, obj.pool())

    path = _output(out)
    frame.to_csv(path, index=False)
    write_meta(path, 'compare', seed, {'params': params.to_dict(), 'paths': paths, 'level': level, 'bars': Path(bars).name})
    intervals = {row.moment: (row.low, row.high) for row in frame.itertuples()}
    console.print(comparison_table(intervals, frame['data'].tolist()))
    console.print(f"[green]✓[/green] → {path}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and map failures to exit codes

    Returns:
        0 success, 1 usage error, 2 data or validation error
    """
    try:
        status = cli.main(args=argv, prog_name='lobcal', standalone_mode=False)
    except click.exceptions.Abort:
        console.print("[red]Aborted[/red]")
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return EXIT_USAGE
    except (LobcalError, ValidationError, FileNotFoundError, KeyError, ValueError, yaml.YAMLError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        console.print(f"[red]Error:[/red] {e}")
        return EXIT_DATA
    return status if isinstance(status, int) else 0


if __name__ == '__main__':
    sys.exit(main())
