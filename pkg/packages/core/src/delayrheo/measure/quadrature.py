"""
Gauss-Legendre 复合求积
节点和权重按 (区间, 阶数, 分段数) 缓存，返回只读数组
"""

from functools import lru_cache
from typing import Tuple

import numpy as np


@lru_cache(maxsize=64)
def legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """[-1, 1] 上的 order 点 Gauss-Legendre 规则"""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


@lru_cache(maxsize=256)
def composite_rule(lo: float, hi: float, order: int, panels: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    [lo, hi] 等分为 panels 段，每段 order 点
    返回拼接后的节点和权重（一维，长度 order * panels）
    """
    x, w = legendre_rule(order)
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def mapped_rule(a: np.ndarray, b: np.ndarray, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    逐元素把规则映射到 [a, b]（a、b 可以是同形数组，也允许 a > b）
    返回形状为 a.shape + (order,) 的节点和权重
    """
    x, w = legendre_rule(order)
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w
