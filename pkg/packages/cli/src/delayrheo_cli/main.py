#!/usr/bin/env python3
"""
DelayRheo CLI 主入口

    delayrheo [--log-level LEVEL] [--no-color] COMMAND --spec FILE [--out DIR] [--print-spec]

命令: simulate / lambda / verify / asymptote / report
退出码: 0 成功或判定成立，2 判定不成立，3 无法判定，1 错误
"""

import traceback
from pathlib import Path
from typing import Callable, Optional, Tuple

import click
import pydantic

from delayrheo.utils.errors import DelayRheoError

from . import __version__
from .app.cli import DelayRheoCLI
from .app.config import CLIConfig
from .constants import EXIT_ERROR, LOG_LEVELS
from .ui.messages import show_error_message


def _parse_window(ctx, param, value: Optional[str]) -> Optional[Tuple[float, float]]:
    """--window a,b"""
    if value is None:
        return None
    parts = value.split(",")
    if len(parts) != 2:
        raise click.BadParameter("expected two numbers separated by a comma, e.g. 10,100")
    try:
        a, b = (float(part) for part in parts)
    except ValueError:
        raise click.BadParameter(f"not a number pair: {value!r}") from None
    if not a < b:
        raise click.BadParameter(f"window start {a} must be below end {b}")
    return a, b


def spec_options(func: Callable) -> Callable:
    """所有子命令共享的选项"""
    func = click.option('--print-spec', is_flag=True,
                        help='打印补齐缺省值后的问题文件并退出')(func)
    func = click.option('--out', 'out_dir', type=click.Path(file_okay=False, path_type=Path),
                        help='输出目录，默认取问题文件 [output] directory')(func)
    func = click.option('--spec', 'spec_path', required=True,
                        type=click.Path(exists=True, dir_okay=False, path_type=Path),
                        help='TOML 问题文件')(func)
    return func


def samples_option(func: Callable) -> Callable:
    return click.option('--samples', type=click.IntRange(min=2),
                        help='窗口内的取样点数')(func)


def window_options(func: Callable) -> Callable:
    func = click.option('--window', callback=_parse_window,
                        help='判据窗口 a,b，默认 [t0 + r, T]')(func)
    return samples_option(func)


def _run(ctx: click.Context, command: str, spec_path: Path, out_dir: Optional[Path],
         print_spec: bool, samples: Optional[int] = None,
         window: Optional[Tuple[float, float]] = None) -> None:
    options = ctx.obj or {}
    cli_config = CLIConfig(
        spec_path=spec_path,
        out_dir=out_dir,
        log_level=options.get('log_level'),
        no_color=options.get('no_color', False),
        print_spec=print_spec,
        samples=samples,
        window=window,
    )
    try:
        cli = DelayRheoCLI(cli_config)
        if print_spec:
            code = cli.print_spec()
        else:
            code = getattr(cli, f"run_{command}")()
    except (DelayRheoError, pydantic.ValidationError) as e:
        message = e.message if isinstance(e, DelayRheoError) else str(e)
        show_error_message(message)
        if cli_config.is_debug:
            traceback.print_exc()
        code = EXIT_ERROR
    except Exception as e:
        show_error_message(f"unexpected error: {e}")
        if cli_config.is_debug:
            traceback.print_exc()
        code = EXIT_ERROR
    ctx.exit(code)


@click.group()
@click.option('--log-level',
              type=click.Choice(LOG_LEVELS, case_sensitive=False),
              help='日志级别，默认 WARNING')
@click.option('--no-color',
              is_flag=True,
              help='禁用彩色输出')
@click.version_option(__version__, prog_name='delayrheo')
@click.pass_context
def main(ctx: click.Context, log_level: Optional[str], no_color: bool):
    """
    DelayRheo - 线性时滞泛函微分方程的数值工具

    求解方程、求解广义特征方程、检查判据并验证渐近结论
    """
    ctx.ensure_object(dict)
    ctx.obj['log_level'] = log_level
    ctx.obj['no_color'] = no_color


@main.command()
@spec_options
@click.pass_context
def simulate(ctx, spec_path, out_dir, print_spec):
    """方法步积分，写 trajectory.csv"""
    _run(ctx, 'simulate', spec_path, out_dir, print_spec)


@main.command(name='lambda')
@spec_options
@click.pass_context
def lambda_(ctx, spec_path, out_dir, print_spec):
    """闭式检查或不动点求解 λ，写 lambda.csv"""
    _run(ctx, 'lambda', spec_path, out_dir, print_spec)


@main.command()
@spec_options
@window_options
@click.pass_context
def verify(ctx, spec_path, out_dir, print_spec, samples, window):
    """扫描判据积分，写 criterion.csv 和 summary.txt"""
    _run(ctx, 'verify', spec_path, out_dir, print_spec, samples, window)


@main.command()
@spec_options
@samples_option
@click.pass_context
def asymptote(ctx, spec_path, out_dir, print_spec, samples):
    """检查 y = x e^{-∫λ} 的极限与衰减包络，写 asymptotics.txt 和 asymptotics.csv

    μ 取 [t0, T] 上判据的最大值，--samples 控制取样点数
    """
    _run(ctx, 'asymptote', spec_path, out_dir, print_spec, samples)


@main.command()
@spec_options
@window_options
@click.pass_context
def report(ctx, spec_path, out_dir, print_spec, samples, window):
    """一次运行全部阶段并写出所有文件"""
    _run(ctx, 'report', spec_path, out_dir, print_spec, samples, window)


if __name__ == "__main__":
    main()
