"""
CLI主应用类
负责配置加载、日志初始化、问题文件读取，并把各命令转成 ProblemSession 的阶段调用。
每个 run_* 方法返回进程退出码。
"""

from pathlib import Path

from delayrheo.config.problem_spec import ProblemSpec, load
from delayrheo.config.test_config import TestDelayRheoConfig
from delayrheo.core import ProblemSession
from delayrheo.telemetry.logger import DelayRheoLogger, get_logger

from ..constants import EXIT_CODES, EXIT_OK
from ..ui import messages, reports
from ..ui.console import set_no_color
from .config import CLIConfig

logger = get_logger("delayrheo.cli")


class DelayRheoCLI:
    """
    主CLI应用类
    - 合并命令行覆盖与分层配置
    - 持有问题会话
    - 输出摘要和文件路径
    """

    def __init__(self, config: CLIConfig):
        self.config = config
        set_no_color(config.no_color)

        self.core_config = TestDelayRheoConfig()
        self.core_config.set_override('log_level', config.log_level)
        DelayRheoLogger(self.core_config)

        self.spec: ProblemSpec = load(config.spec_path, self.core_config)
        self._session = None
        logger.info(f"loaded problem {self.spec.problem.name or config.spec_path}")

    @property
    def session(self) -> ProblemSession:
        # --print-spec 不需要构造核
        if self._session is None:
            self._session = ProblemSession(self.spec, self.core_config)
        return self._session

    @property
    def out_dir(self) -> Path:
        if self.config.out_dir is not None:
            return self.config.out_dir
        return Path(self.spec.output.directory)

    def print_spec(self) -> int:
        messages.show_plain(self.spec.dumps().rstrip("\n"))
        return EXIT_OK

    def run_simulate(self) -> int:
        trajectory = self.session.simulate()
        path = self.session.write_trajectory(self.out_dir)
        reports.show_trajectory(trajectory)
        messages.show_artifact(path)
        return EXIT_OK

    def run_lambda(self) -> int:
        result = self.session.characteristic()
        path = self.session.write_lambda(self.out_dir)
        reports.show_lambda(result)
        messages.show_artifact(path)
        return EXIT_OK

    def run_verify(self) -> int:
        report = self.session.verify(self.config.window, self.config.samples)
        paths = self.session.write_criterion(self.out_dir, report)
        reports.show_criterion(report, self.config.max_rows)
        reports.show_verdict(report)
        for path in paths:
            messages.show_artifact(path)
        return EXIT_CODES[report.verdict]

    def run_asymptote(self) -> int:
        report = self.session.asymptote(self.config.samples)
        paths = self.session.write_asymptotics(self.out_dir, report)
        reports.show_asymptotics(report)
        if not report.envelope_ok:
            messages.show_warning("decay envelope not confirmed")
        for path in paths:
            messages.show_artifact(path)
        return EXIT_OK

    def run_report(self) -> int:
        """simulate → lambda → verify → asymptote，退出码跟随判定"""
        session = self.session
        trajectory = session.simulate()
        lam = session.characteristic()
        criterion = session.verify(self.config.window, self.config.samples)
        asymptotics = session.asymptote(self.config.samples)

        paths = [
            session.write_trajectory(self.out_dir),
            session.write_lambda(self.out_dir),
            *session.write_criterion(self.out_dir, criterion),
            *session.write_asymptotics(self.out_dir, asymptotics),
        ]
        reports.show_trajectory(trajectory)
        reports.show_lambda(lam)
        reports.show_criterion(criterion, self.config.max_rows)
        reports.show_asymptotics(asymptotics)
        reports.show_verdict(criterion)
        for path in paths:
            messages.show_artifact(path)
        return EXIT_CODES[criterion.verdict]
