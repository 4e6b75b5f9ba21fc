"""
自定义异常类 - 提供结构化的错误处理
定义表达式解析、测度积分、求解器和判据检查特有的异常类型
"""

from typing import Optional, Dict, Any


class DelayRheoError(Exception):
    """DelayRheo基础异常类"""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "error_type": self.__class__.__name__,
            "message": self.message,
            "error_code": self.error_code,
            "details": self.details
        }


# ---------------------------------------------------------------- 表达式

class ExpressionError(DelayRheoError):
    """表达式相关异常的公共基类"""


class ExpressionSyntaxError(ExpressionError):
    """语法错误，带出错位置"""

    def __init__(
        self,
        source: str,
        message: str,
        position: int,
        **kwargs
    ):
        super().__init__(f"{message} at position {position} in {source!r}", **kwargs)
        self.source = source
        self.position = position

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({
            "source": self.source,
            "position": self.position
        })
        return result


class UnknownIdentifierError(ExpressionSyntaxError):
    """未知标识符（只允许 t、theta 和内置函数）"""

    def __init__(self, source: str, name: str, position: int, **kwargs):
        super().__init__(source, f"unknown identifier {name!r}", position, **kwargs)
        self.name = name

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result["name"] = self.name
        return result


class EvaluationError(ExpressionError):
    """求值异常"""

    def __init__(
        self,
        expression: str,
        message: str,
        **kwargs
    ):
        super().__init__(f"{message} while evaluating {expression!r}", **kwargs)
        self.expression = expression

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result["expression"] = self.expression
        return result


class MissingBindingError(EvaluationError):
    """自由变量缺少绑定"""

    def __init__(self, expression: str, variable: str, **kwargs):
        super().__init__(expression, f"missing binding for {variable!r}", **kwargs)
        self.variable = variable


class EvaluationDomainError(EvaluationError):
    """定义域错误：除零、ln(非正实数)、负底数的非整数次幂等"""


# ---------------------------------------------------------------- 数值

class DelayRangeError(DelayRheoError):
    """原子时滞 τ_j(t) 超出 [0, r]"""

    def __init__(self, delay: complex, t: float, r: float, **kwargs):
        super().__init__(f"atom delay {delay} at t={t} outside [0, {r}]", **kwargs)
        self.delay = delay
        self.t = t
        self.r = r

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({
            "delay": str(self.delay),
            "t": self.t,
            "r": self.r
        })
        return result


class OutOfDomainError(DelayRheoError):
    """查询点落在轨迹或 λ 的定义区间之外"""

    def __init__(self, t: float, lo: float, hi: float, what: str = "trajectory", **kwargs):
        super().__init__(f"{what} queried at t={t} outside [{lo}, {hi}]", **kwargs)
        self.t = t
        self.lo = lo
        self.hi = hi

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({"t": self.t, "lo": self.lo, "hi": self.hi})
        return result


class DivergenceError(DelayRheoError):
    """积分状态出现非有限值"""

    def __init__(self, t: float, **kwargs):
        super().__init__(f"non-finite state at t={t}", **kwargs)
        self.t = t


class ConvergenceError(DelayRheoError):
    """不动点迭代未收敛"""

    def __init__(self, iterations: int, residual: float, **kwargs):
        super().__init__(
            f"fixed-point iteration did not converge after {iterations} sweeps "
            f"(residual {residual:.3e})",
            **kwargs
        )
        self.iterations = iterations
        self.residual = residual

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({
            "iterations": self.iterations,
            "residual": self.residual
        })
        return result


class HypothesisError(DelayRheoError):
    """μ ≥ 1，定理的假设未被验证，拒绝做包络检查"""

    def __init__(self, mu: float, **kwargs):
        super().__init__(f"mu={mu} does not satisfy 0 <= mu < 1", **kwargs)
        self.mu = mu


class HorizonError(DelayRheoError):
    """时间区间太短"""

    def __init__(self, required: float, available: float, **kwargs):
        super().__init__(
            f"horizon too short: need T >= {required}, have T = {available}",
            **kwargs
        )
        self.required = required
        self.available = available


# ---------------------------------------------------------------- 配置

class ValidationError(DelayRheoError):
    """参数验证异常"""

    def __init__(
        self,
        field_name: str,
        message: str,
        invalid_value: Any = None,
        **kwargs
    ):
        super().__init__(message, **kwargs)
        self.field_name = field_name
        self.invalid_value = invalid_value

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({
            "field_name": self.field_name,
            "invalid_value": self.invalid_value
        })
        return result


class ConfigurationError(DelayRheoError):
    """配置异常"""

    def __init__(
        self,
        config_key: str,
        message: str,
        **kwargs
    ):
        super().__init__(message, **kwargs)
        self.config_key = config_key

    def to_dict(self) -> Dict[str, Any]:
        result = super().to_dict()
        result.update({
            "config_key": self.config_key
        })
        return result
