"""
自治情形的经典特征方程 λ = Σ b_j e^{-λ τ_j}
常数解是广义特征方程的特例，用作不动点迭代和判据的参照
"""

from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import lambertw

from ..measure import StieltjesKernel
from ..utils.errors import ValidationError


def autonomous_terms(kernel: StieltjesKernel) -> List[Tuple[float, float]]:
    """返回 (b_j, τ_j)；核必须只有原子，且时滞、质量均为实常数"""
    if not kernel.atoms_only:
        raise ValidationError("kernel", "classical characteristic equation needs an atoms-only kernel")
    terms = []
    for atom in kernel.atoms:
        if not (atom.delay.is_constant and atom.mass.is_constant):
            raise ValidationError("kernel", "classical characteristic equation needs constant atoms",
                                  (str(atom.delay), str(atom.mass)))
        mass = atom.mass.evaluate()
        if mass.imag != 0:
            raise ValidationError("kernel", "complex atom masses have no real characteristic root",
                                  str(atom.mass))
        terms.append((mass.real, atom.delay.evaluate().real))
    return terms


def characteristic_defect(terms: List[Tuple[float, float]], lam: float) -> float:
    """λ - Σ b_j e^{-λ τ_j}"""
    return lam - sum(b * np.exp(-lam * tau) for b, tau in terms)


def classical_roots(kernel: StieltjesKernel, lo: float = -10.0, hi: float = 10.0,
                    samples: int = 2001, xtol: float = 1e-14) -> List[float]:
    """
    [lo, hi] 内的全部实根（扫描变号后用 brentq 精化）
    零测度核的唯一根是 0
    """
    terms = autonomous_terms(kernel)
    grid = np.linspace(lo, hi, samples)
    defect = np.array([characteristic_defect(terms, lam) for lam in grid])
    roots: List[float] = []
    for i in range(samples - 1):
        a, b = grid[i], grid[i + 1]
        if defect[i] == 0.0:
            roots.append(float(a))
        elif defect[i] * defect[i + 1] < 0:
            roots.append(float(brentq(lambda lam: characteristic_defect(terms, lam), a, b,
                                      xtol=xtol, rtol=4 * np.finfo(float).eps)))
    if defect[-1] == 0.0:
        roots.append(float(grid[-1]))
    return roots


def lambert_root(b: float, tau: float = 1.0) -> float:
    """
    单原子 x' = b x(t - τ) 的主实根 λ = W(bτ)/τ
    要求 bτ ≥ -1/e
    """
    if tau <= 0:
        raise ValidationError("tau", f"delay must be positive, got {tau}", tau)
    if b * tau < -np.exp(-1.0):
        raise ValidationError("b", f"b*tau = {b * tau} below -1/e has no real root", b)
    return float(lambertw(b * tau, 0).real / tau)
