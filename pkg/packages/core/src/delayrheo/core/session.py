"""
ProblemSession - 管线编排
由 ProblemSpec 构造核、初值问题和 λ，依次执行 simulate / lambda / verify / asymptote，
中间结果缓存，report 一次跑完全部阶段
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional, Tuple

from ..analysis import envelope, estimate_limits, noise_floor, scan, transform_y
from ..charsolve import (
    LambdaFunction,
    characteristic_grid,
    initial_guess_from,
    residual,
    solve_fixed_point,
)
from ..config.base import DelayRheoConfig
from ..config.problem_spec import ProblemSpec
from ..measure import StieltjesKernel, build_kernel
from ..solver import ProblemSetup, Trajectory, solve
from ..telemetry.logger import get_logger
from ..telemetry.tracer import DelayRheoTracer
from ..types.report_types import AsymptoticsReport, CriterionReport
from ..utils.csv_export import write_csv, write_key_values

logger = get_logger(__name__)


@dataclass(frozen=True)
class LambdaResult:
    """λ 及其残差；闭式时 iterations 为 0"""
    lam: LambdaFunction
    residual: float
    iterations: int
    method: str


class ProblemSession:
    """
    一个问题文件对应一个会话
    - 各阶段结果按需计算并缓存
    - 每个阶段包在一个 tracer span 里
    """

    def __init__(self, spec: ProblemSpec, config: Optional[DelayRheoConfig] = None):
        self.spec = spec
        self.config = config or DelayRheoConfig()
        self.tracer = DelayRheoTracer(self.config)
        self.workers = int(self.config.get("workers", 1))
        self.digits = int(self.config.get("float_digits", 17))

        problem = spec.problem
        self.kernel: StieltjesKernel = build_kernel(
            problem.r,
            [(atom.delay, atom.mass) for atom in spec.atoms],
            [(d.kernel, d.support[0], d.support[1]) for d in spec.densities],
            quadrature_order=spec.quadrature.order,
            panels=spec.quadrature.panels,
        )
        self.setup = ProblemSetup(self.kernel, problem.t0, problem.horizon, problem.initial_data, problem.step)

        self._trajectory: Optional[Trajectory] = None
        self._lambda: Optional[LambdaResult] = None
        self._criterion: Dict[Tuple[Tuple[float, float], int], CriterionReport] = {}
        self._asymptotics: Optional[AsymptoticsReport] = None

    @property
    def t0(self) -> float:
        return self.setup.t0

    @property
    def r(self) -> float:
        return self.kernel.r

    @property
    def horizon(self) -> float:
        return self.setup.horizon

    # ------------------------------------------------------------ 阶段

    def simulate(self) -> Trajectory:
        if self._trajectory is None:
            with self.tracer.span("simulate", {"steps": self.setup.n_steps}):
                self._trajectory = solve(self.setup)
        return self._trajectory

    def characteristic(self) -> LambdaResult:
        if self._lambda is None:
            with self.tracer.span("lambda"):
                self._lambda = self._solve_lambda()
                self.tracer.set_attribute("residual", self._lambda.residual)
        return self._lambda

    def _solve_lambda(self) -> LambdaResult:
        section = self.spec.lambda_
        step = self.spec.problem.lambda_step
        if section.closed_form is not None:
            lam = LambdaFunction.closed_form(section.closed_form, self.t0 - self.r, self.horizon)
            grid = characteristic_grid(self.t0, self.r, self.horizon, step)
            value = residual(self.kernel, lam, grid[grid >= self.t0], self.workers)
            logger.info(f"closed-form lambda {section.closed_form!r}: residual {value:.3e}")
            return LambdaResult(lam, value, 0, "closed_form")

        fixed_point = section.fixed_point
        guess = initial_guess_from(fixed_point.pre_interval_guess, self.t0, self.r)
        result = solve_fixed_point(
            self.kernel, guess, self.t0, self.horizon, step,
            tol=fixed_point.tol,
            max_iter=fixed_point.max_iter,
            relaxation=fixed_point.relaxation,
            workers=self.workers,
        )
        return LambdaResult(result.lam, result.residual, result.iterations, "fixed_point")

    def verify(self, window: Optional[Tuple[float, float]] = None,
               samples: Optional[int] = None) -> CriterionReport:
        window = tuple(window) if window is not None else self.spec.criterion_window
        samples = samples or self.spec.criterion.samples
        key = (window, samples)
        if key not in self._criterion:
            lam = self.characteristic().lam
            with self.tracer.span("verify", {"samples": samples}):
                self._criterion[key] = scan(self.kernel, lam, window, samples, self.spec.criterion.margin)
                self.tracer.set_attribute("mu_hat", self._criterion[key].mu_hat)
        return self._criterion[key]

    def envelope_mu(self, samples: Optional[int] = None) -> float:
        """
        包络用的 μ：V 在 [t0, T] 上的取样最大值
        判定窗口只看晚期，μ 必须覆盖从 t0 开始的整个区间
        """
        return self.verify((self.t0, self.horizon), samples).mu_hat

    def asymptote(self, samples: Optional[int] = None) -> AsymptoticsReport:
        if self._asymptotics is None:
            trajectory = self.simulate()
            lam = self.characteristic().lam
            mu = self.envelope_mu(samples)
            settings = self.spec.asymptotics
            with self.tracer.span("asymptote"):
                y_tr = transform_y(trajectory, lam)
                self._asymptotics = estimate_limits(
                    y_tr, lam, settings.tail_fraction,
                    mu=mu, slack=settings.slack, atol=settings.atol, x_tr=trajectory,
                )
        return self._asymptotics

    def transformed(self) -> Trajectory:
        return transform_y(self.simulate(), self.characteristic().lam)

    # ------------------------------------------------------------ 输出

    def write_trajectory(self, directory: Path) -> Path:
        path = Path(directory) / "trajectory.csv"
        write_csv(path, ["t", "re_x", "im_x", "re_dx", "im_dx"], self.simulate().rows(), self.digits)
        return path

    def write_lambda(self, directory: Path) -> Path:
        path = Path(directory) / "lambda.csv"
        result = self.characteristic()
        rows = result.lam.rows(self.spec.problem.lambda_step)
        write_csv(path, ["t", "re_lambda", "im_lambda", "re_Lambda", "im_Lambda"], rows, self.digits)
        return path

    def write_criterion(self, directory: Path, report: CriterionReport) -> Tuple[Path, Path]:
        csv_path = Path(directory) / "criterion.csv"
        write_csv(csv_path, ["t", "V"], report.samples, self.digits)
        summary_path = Path(directory) / "summary.txt"
        summary_path.write_text(report.summary_line() + "\n", encoding="utf-8")
        return csv_path, summary_path

    def write_asymptotics(self, directory: Path, report: AsymptoticsReport) -> Tuple[Path, Path]:
        text_path = Path(directory) / "asymptotics.txt"
        values = report.to_dict()
        values["tail_window"] = list(report.tail_window)
        values["notes"] = "; ".join(report.notes) if report.notes else None
        write_key_values(text_path, values, self.digits)

        y_tr = self.transformed()
        mask = y_tr.knots >= self.t0
        times = y_tr.knots[mask]
        deviation = abs(y_tr.values[mask] - report.L_x_estimate)
        yprime = abs(y_tr.derivs[mask])
        if report.cauchy_bound is not None:
            tolerance = self.spec.asymptotics.atol + noise_floor(y_tr)
            bound = envelope(times, self.t0, report.M_x, report.mu_used, self.r,
                             self.spec.asymptotics.slack, tolerance)
        else:
            bound = [float("nan")] * times.size
        csv_path = Path(directory) / "asymptotics.csv"
        write_csv(csv_path, ["t", "abs_y_minus_L", "abs_dy", "envelope"],
                  zip(times, deviation, yprime, bound), self.digits)
        return text_path, csv_path
