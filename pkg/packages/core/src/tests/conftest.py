"""
共享 fixture：示例核、特征根参照值、隔离的配置
"""

import math
import os

import pytest
from scipy.optimize import brentq

from delayrheo.config import TestDelayRheoConfig
from delayrheo.measure import StieltjesKernel, build_kernel


def lambert_oracle(b: float) -> float:
    """λ e^λ = b 的实根（区间二分类求根）"""
    return brentq(lambda lam: lam * math.exp(lam) - b, 0.0, 2.0, xtol=1e-15)


@pytest.fixture(scope="session")
def w_small() -> float:
    return lambert_oracle(0.1)  # ≈ 0.0912765


@pytest.fixture(scope="session")
def w_large() -> float:
    return lambert_oracle(3.0)  # ≈ 1.04991


@pytest.fixture
def config(tmp_path, monkeypatch):
    """不受用户目录和环境变量影响的配置"""
    for key in list(os.environ):
        if key.startswith("DELAYRHEO_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.setenv("HOME", str(tmp_path))
    return TestDelayRheoConfig(workspace_root=tmp_path)


@pytest.fixture
def variable_delay_kernel() -> StieltjesKernel:
    """x'(t) = x(t-1)/(t+1)，即 τ ≡ 1, c = 2"""
    return build_kernel(1.0, atoms=[("1", "1/(t + 2 - 1)")])


@pytest.fixture
def distributed_kernel() -> StieltjesKernel:
    """x'(t) = ∫_0^1 x(t-θ)/(t-θ) dθ"""
    return build_kernel(1.0, densities=[("1/(t - theta)", 0.0, 1.0)])


@pytest.fixture
def small_gain_kernel() -> StieltjesKernel:
    return StieltjesKernel.from_discrete(1.0, terms=[(0.1, 1.0)])


@pytest.fixture
def large_gain_kernel() -> StieltjesKernel:
    return StieltjesKernel.from_discrete(1.0, terms=[(3.0, 1.0)])


@pytest.fixture
def zero_kernel() -> StieltjesKernel:
    return StieltjesKernel(1.0)
