"""
ProblemSpec - TOML 问题文件的 pydantic 模型

    [problem]      r, t0, horizon, step, grid_step, initial_data
    [[atom]]       delay, mass
    [[density]]    kernel, support = [lo, hi]
    [quadrature]   order, panels
    [lambda]       closed_form = "..."  或  [lambda.fixed_point] pre_interval_guess, tol, max_iter, relaxation
    [criterion]    window = [a, b], samples, margin
    [asymptotics]  tail_fraction, slack, atol
    [output]       directory

文件中缺省的数值参数由分层配置补齐，补齐后的模型可以原样写回 TOML
"""

import sys
from pathlib import Path
from typing import Annotated, Any, Dict, List, Optional, Tuple, Union

import tomli_w
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, field_validator, model_validator

from .base import DelayRheoConfig
from ..exprparse import parse
from ..utils.errors import ConfigurationError, ExpressionError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

MIN_STEPS_PER_DELAY = 8


def _expression_checker(allowed: Tuple[str, ...]):
    def check(source: str) -> str:
        try:
            expression = parse(source)
        except ExpressionError as e:
            raise ValueError(e.message) from None
        extra = expression.free_variables - set(allowed)
        if extra:
            raise ValueError(f"expression {source!r} may only use {', '.join(allowed) or 'constants'}, "
                             f"found {', '.join(sorted(extra))}")
        return source
    return check


TimeExpression = Annotated[str, AfterValidator(_expression_checker(("t",)))]
KernelExpression = Annotated[str, AfterValidator(_expression_checker(("t", "theta")))]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class ProblemSection(_Section):
    name: Optional[str] = None
    r: float = Field(gt=0)
    t0: float = 0.0
    horizon: float
    step: float = Field(gt=0)
    grid_step: Optional[float] = Field(default=None, gt=0)
    initial_data: TimeExpression

    @model_validator(mode="after")
    def _check_floors(self) -> "ProblemSection":
        if not self.horizon > self.t0:
            raise ValueError(f"horizon {self.horizon} must exceed t0 = {self.t0}")
        limit = self.r / MIN_STEPS_PER_DELAY * (1 + 1e-9)
        if self.step > limit:
            raise ValueError(f"step {self.step} exceeds r/{MIN_STEPS_PER_DELAY}")
        if self.grid_step is not None and self.grid_step > limit:
            raise ValueError(f"grid_step {self.grid_step} exceeds r/{MIN_STEPS_PER_DELAY}")
        return self

    @property
    def lambda_step(self) -> float:
        return self.grid_step if self.grid_step is not None else self.step


class AtomSpec(_Section):
    delay: TimeExpression
    mass: TimeExpression


class DensitySpec(_Section):
    kernel: KernelExpression
    support: Tuple[float, float]

    @field_validator("support")
    @classmethod
    def _ordered(cls, value: Tuple[float, float]) -> Tuple[float, float]:
        if not value[0] < value[1]:
            raise ValueError(f"support [{value[0]}, {value[1]}] needs lo < hi")
        return value


class QuadratureSpec(_Section):
    order: int = Field(ge=1)
    panels: int = Field(ge=1)


class FixedPointSpec(_Section):
    pre_interval_guess: TimeExpression = "0"
    tol: float = Field(gt=0)
    max_iter: int = Field(ge=1)
    relaxation: float = Field(gt=0, le=1)


class LambdaSpec(_Section):
    closed_form: Optional[TimeExpression] = None
    fixed_point: Optional[FixedPointSpec] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "LambdaSpec":
        if (self.closed_form is None) == (self.fixed_point is None):
            raise ValueError("[lambda] needs exactly one of closed_form or fixed_point")
        return self


class CriterionSpec(_Section):
    window: Optional[Tuple[float, float]] = None
    samples: int = Field(ge=2)
    margin: float = Field(ge=0, lt=1)


class AsymptoticsSpec(_Section):
    tail_fraction: float = Field(gt=0, le=1)
    slack: float = Field(ge=0)
    atol: float = Field(ge=0)


class OutputSpec(_Section):
    directory: str = "out"


class ProblemSpec(_Section):
    problem: ProblemSection
    atoms: List[AtomSpec] = Field(default_factory=list, alias="atom")
    densities: List[DensitySpec] = Field(default_factory=list, alias="density")
    quadrature: QuadratureSpec
    lambda_: LambdaSpec = Field(alias="lambda")
    criterion: CriterionSpec
    asymptotics: AsymptoticsSpec
    output: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode="after")
    def _check_ranges(self) -> "ProblemSpec":
        r, t0, horizon = self.problem.r, self.problem.t0, self.problem.horizon
        for density in self.densities:
            lo, hi = density.support
            if lo < 0 or hi > r:
                raise ValueError(f"density support [{lo}, {hi}] not inside [0, {r}]")
        if self.criterion.window is not None:
            a, b = self.criterion.window
            if not (t0 <= a < b <= horizon):
                raise ValueError(f"criterion window [{a}, {b}] must satisfy t0 <= a < b <= horizon")
        return self

    @property
    def criterion_window(self) -> Tuple[float, float]:
        """缺省窗口 [t0 + r, T]，区间不足一个 r 时退回 [t0, T]"""
        if self.criterion.window is not None:
            return self.criterion.window
        t0, r, horizon = self.problem.t0, self.problem.r, self.problem.horizon
        start = t0 + r if t0 + r < horizon else t0
        return (start, horizon)

    def to_toml_dict(self) -> Dict[str, Any]:
        data = self.model_dump(by_alias=True, exclude_none=True)
        for key in ("atom", "density"):
            if not data.get(key):
                data.pop(key, None)
        for density in data.get("density", []):
            density["support"] = list(density["support"])
        if "window" in data["criterion"]:
            data["criterion"]["window"] = list(data["criterion"]["window"])
        return data

    def dumps(self) -> str:
        """回写为 TOML 文本，可被 loads 重新读入"""
        return tomli_w.dumps(self.to_toml_dict())


def apply_defaults(data: Dict[str, Any], config: DelayRheoConfig) -> Dict[str, Any]:
    """用分层配置补齐缺省的数值段，不修改输入"""
    data = {key: (dict(value) if isinstance(value, dict) else value) for key, value in data.items()}
    quadrature = data.setdefault("quadrature", {})
    quadrature.setdefault("order", config.get_int("quadrature_order"))
    quadrature.setdefault("panels", config.get_int("quadrature_panels"))

    criterion = data.setdefault("criterion", {})
    criterion.setdefault("samples", config.get_int("criterion_samples"))
    criterion.setdefault("margin", config.get_float("criterion_margin"))

    asymptotics = data.setdefault("asymptotics", {})
    asymptotics.setdefault("tail_fraction", config.get_float("tail_fraction"))
    asymptotics.setdefault("slack", config.get_float("envelope_slack"))
    asymptotics.setdefault("atol", config.get_float("envelope_atol"))

    section = data.get("lambda")
    if isinstance(section, dict) and isinstance(section.get("fixed_point"), dict):
        fixed_point = dict(section["fixed_point"])
        fixed_point.setdefault("tol", config.get_float("fixed_point_tol"))
        fixed_point.setdefault("max_iter", config.get_int("fixed_point_max_iter"))
        fixed_point.setdefault("relaxation", config.get_float("relaxation"))
        data["lambda"] = {**section, "fixed_point": fixed_point}
    return data


def loads(text: str, config: Optional[DelayRheoConfig] = None) -> ProblemSpec:
    """解析 TOML 文本；语法错误转为 ConfigurationError，字段错误保留 pydantic 的 ValidationError"""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError("spec", f"invalid TOML: {e}") from e
    return ProblemSpec.model_validate(apply_defaults(data, config or DelayRheoConfig()))


def load(path: Union[str, Path], config: Optional[DelayRheoConfig] = None) -> ProblemSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError("spec", f"cannot read problem file {path}: {e}") from e
    return loads(text, config)
