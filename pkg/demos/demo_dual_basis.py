#!/usr/bin/env python3
"""
演示对偶 Fock 基的构造、Gram 矩阵与期望值的配对计算
"""

import sys
from pathlib import Path

import numpy as np
from rich.console import Console

# 添加项目根目录到 Python 路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.dual_bases import (
    build_dual_basis,
    duality_pairing,
    expand_observable,
    expand_state,
)
from src.core.fock_space import ModeSystem, number_op, trace_pair
from src.core.supermaps import map_family, verify_algebra

console = Console()


def main() -> None:
    system = ModeSystem.fermionic(2)
    family = map_family(system)

    report = verify_algebra(family)
    console.print(f"[bold]几乎-CAR[/bold] 最大残差: {report.max_residual():.2e}")

    basis = build_dual_basis(family)
    console.print(f"对偶基: {basis.size} 个元素，Gram 偏差 {basis.gram_deviation():.2e}")
    for m in basis.indices[:6]:
        console.print(f"  m = {m.label()}  (阶数 {m.degree})")

    rng = np.random.default_rng(7)
    shape = (system.dim, system.dim)
    x = rng.normal(size=shape) + 1j * rng.normal(size=shape)
    rho = x @ x.conj().T
    rho /= np.trace(rho)

    sigma = expand_state(rho, basis)
    s = expand_observable(number_op(system), basis)
    value, bound = duality_pairing(s.coefficients, sigma.coefficients)
    expected = trace_pair(number_op(system), rho).real
    console.print(f"Σ S_m σ_m = {value.real:.6f}，tr(Nρ) = {expected:.6f}")
    console.print(f"Cauchy-Schwarz 上界: {bound:.6f}")


if __name__ == "__main__":
    main()
