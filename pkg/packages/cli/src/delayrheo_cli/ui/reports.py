"""
结果表格
每个阶段一个 Rich 表格，数值按 17 位有效数字显示，与 CSV 一致
"""

from rich.markup import escape
from rich.table import Table

from delayrheo.core import LambdaResult
from delayrheo.solver import Trajectory
from delayrheo.types import AsymptoticsReport, CriterionReport
from delayrheo.utils import format_float

from .console import get_console


def _complex(value: complex) -> str:
    value = complex(value)
    if value.imag == 0.0:
        return format_float(value.real)
    sign = "+" if value.imag >= 0 else "-"
    return f"{format_float(value.real)} {sign} {format_float(abs(value.imag))}i"


def _optional(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return format_float(value)


def _key_value_table(title: str) -> Table:
    table = Table(title=title, show_header=False, title_justify="left")
    table.add_column("key", style="info")
    table.add_column("value")
    return table


def show_trajectory(trajectory: Trajectory):
    table = _key_value_table("trajectory")
    table.add_row("interval", f"[{format_float(trajectory.start)}, {format_float(trajectory.end)}]")
    table.add_row("knots", str(len(trajectory)))
    table.add_row("x(T)", _complex(trajectory.values[-1]))
    table.add_row("x'(T)", _complex(trajectory.derivs[-1]))
    get_console().print(table)


def show_lambda(result: LambdaResult):
    table = _key_value_table("lambda")
    lam = result.lam
    table.add_row("method", result.method)
    table.add_row("domain", f"[{format_float(lam.start)}, {format_float(lam.end)}]")
    table.add_row("residual", format_float(result.residual))
    table.add_row("iterations", str(result.iterations))
    table.add_row("lambda(T)", _complex(lam.value(lam.end)))
    get_console().print(table)


def show_criterion(report: CriterionReport, max_rows: int = 12):
    verdict = report.verdict.value
    table = _key_value_table("criterion")
    table.add_row("window", f"[{format_float(report.window[0])}, {format_float(report.window[1])}]")
    table.add_row("samples", str(len(report.samples)))
    table.add_row("mu_hat", format_float(report.mu_hat))
    table.add_row("margin", format_float(report.margin))
    table.add_row("t1", _optional(report.t1_estimate))
    table.add_row("verdict", f"[{verdict}]{verdict}[/{verdict}]")
    get_console().print(table)

    if max_rows > 0:
        samples = Table(title="V(t)", title_justify="left")
        samples.add_column("t", justify="right")
        samples.add_column("V", justify="right")
        stride = max(1, len(report.samples) // max_rows)
        for t, v in report.samples[::stride]:
            samples.add_row(format_float(t), format_float(v))
        get_console().print(samples)


def show_asymptotics(report: AsymptoticsReport):
    table = _key_value_table("asymptotics")
    table.add_row("tail_window", f"[{format_float(report.tail_window[0])}, {format_float(report.tail_window[1])}]")
    table.add_row("L_x", _complex(report.L_x_estimate))
    table.add_row("y_tail_variation", format_float(report.y_tail_variation))
    table.add_row("yprime_tail", format_float(report.yprime_tail))
    table.add_row("eq24_gap", format_float(report.eq24_gap))
    table.add_row("limit_rhs_tail", format_float(report.limit_rhs_tail))
    table.add_row("M_x", format_float(report.M_x))
    table.add_row("mu", format_float(report.mu_used))
    table.add_row("envelope_ok", _optional(report.envelope_ok))
    table.add_row("cauchy_bound", _optional(report.cauchy_bound))
    table.add_row("cauchy_ok", _optional(report.cauchy_ok))
    for note in report.notes:
        table.add_row("note", escape(note))
    get_console().print(table)


def show_verdict(report: CriterionReport):
    style = report.verdict.value
    get_console().print(f"[{style}]{escape(report.summary_line())}[/{style}]")
