#!/usr/bin/env python3
"""
演示边界驱动费米链的非平衡稳态与正规序二次型
"""

import sys
from pathlib import Path

import numpy as np
from rich.console import Console
from rich.table import Table

# 添加项目根目录到 Python 路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.fock_space import ModeSystem, number_op
from src.core.lindblad import (
    LindbladCoupling,
    QuadraticLindbladModel,
    expectation,
    ness,
    third_quantize,
)

console = Console()


def boundary_driven_chain(
    n: int, hopping: float, gain: float, loss: float
) -> QuadraticLindbladModel:
    """左端注入、右端抽出的 XX 链"""
    system = ModeSystem.fermionic(n)
    h_hop = np.zeros((n, n), dtype=complex)
    for j in range(n - 1):
        h_hop[j, j + 1] = h_hop[j + 1, j] = hopping
    zeros = np.zeros(n, dtype=complex)
    left = zeros.copy()
    left[0] = np.sqrt(gain)
    right = zeros.copy()
    right[-1] = np.sqrt(loss)
    ops = [LindbladCoupling(u=zeros, v=left), LindbladCoupling(u=right, v=zeros)]
    return QuadraticLindbladModel(
        system, h_hop=h_hop, h_pair=np.zeros((n, n)), lindblad_ops=ops
    )


def main() -> None:
    model = boundary_driven_chain(n=4, hopping=1.0, gain=0.8, loss=0.8)
    console.print(
        f"[bold blue]模型[/bold blue]: {model.sys.describe()}，"
        f"{len(model.lindblad_ops)} 个耗散通道"
    )

    result = ness(model)
    table = Table(title="稳态占据数")
    table.add_column("模式")
    table.add_column("⟨n_j⟩", justify="right")
    for j in range(1, model.sys.n_modes + 1):
        occupation = expectation(number_op(model.sys, j), result).real
        table.add_row(str(j), f"{occupation:.6f}")
    console.print(table)
    console.print(f"谱隙 {result.spectral_gap:.6f}，残差 {result.residual:.2e}")

    form = third_quantize(model)
    console.print(f"二次型重建残差 {form.residual:.2e}，保迹: {form.trace_preserving()}")
    console.print("x′x 系数矩阵的对角元:")
    console.print(np.round(np.diag(form.raising_lowering), 6))


if __name__ == "__main__":
    main()
