"""
Fock 空间核心模块

构造 n 个费米或截断玻色模式的 Fock 空间有限矩阵表示：
- 湮灭/产生算符（费米采用 Jordan-Wigner 排序，模式 1 在最外层）
- 真空纯态 ρ0 与单位算符
- 算符的行优先向量化，以及迹配对 ⟪A|ρ⟩ = tr(Aρ)

所有返回的矩阵都是只读的，可以在线程间安全共享。
"""

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from typing import List, Optional

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    InvalidModeSystemError,
    ModeIndexError,
)

logger = logging.getLogger(__name__)

# HilbertOp: D×D 复矩阵；OperatorKet / OperatorBra: 长度 D² 的复向量
HilbertOp = np.ndarray
OperatorKet = np.ndarray
OperatorBra = np.ndarray


class Statistics(Enum):
    """粒子统计类型"""
    FERMIONIC = "fermionic"
    BOSONIC = "bosonic"


@dataclass(frozen=True)
class ModeSystem:
    """
    物理设定：粒子统计、模式数 n 以及玻色占据数截断

    费米系统的 cutoff 固定为 1（每个模式最多一个粒子）。
    """
    statistics: Statistics
    n_modes: int
    cutoff: int = 1

    def __post_init__(self) -> None:
        if self.n_modes < 1:
            raise InvalidModeSystemError("n_modes must be ≥ 1")
        if self.statistics == Statistics.BOSONIC and self.cutoff < 2:
            raise InvalidModeSystemError(
                f"玻色截断至少为 2 才能在截断边界之外检验 CCR，收到 cutoff={self.cutoff}"
            )
        if self.statistics == Statistics.FERMIONIC and self.cutoff != 1:
            # 费米系统的截断没有自由度，统一归一为 1
            object.__setattr__(self, "cutoff", 1)

    @classmethod
    def fermionic(cls, n_modes: int) -> "ModeSystem":
        return cls(Statistics.FERMIONIC, n_modes, 1)

    @classmethod
    def bosonic(cls, n_modes: int, cutoff: int) -> "ModeSystem":
        return cls(Statistics.BOSONIC, n_modes, cutoff)

    @property
    def is_fermionic(self) -> bool:
        return self.statistics == Statistics.FERMIONIC

    @property
    def levels(self) -> int:
        """单个模式的能级数"""
        return self.cutoff + 1

    @property
    def dim(self) -> int:
        """Hilbert 空间维数 D"""
        return self.levels ** self.n_modes

    @property
    def superop_dim(self) -> int:
        """算符空间维数 D²"""
        return self.dim ** 2

    def check_mode(self, j: int) -> None:
        """检查模式编号（从 1 开始）"""
        if not 1 <= j <= self.n_modes:
            raise ModeIndexError(f"模式编号 j={j} 超出范围 1..{self.n_modes}")

    def describe(self) -> str:
        if self.is_fermionic:
            return f"fermionic(n={self.n_modes})"
        return f"bosonic(n={self.n_modes}, cutoff={self.cutoff})"


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


def _kron_all(factors: List[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


# 单模矩阵（基矢顺序 |0⟩, |1⟩, ...）
_SIGMA_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
_SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


def _single_mode_lowering(cutoff: int) -> np.ndarray:
    """截断玻色湮灭算符：第一条上副对角线为 √1..√cutoff"""
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), k=1).astype(complex)


@lru_cache(maxsize=None)
def occupations(sys: ModeSystem) -> np.ndarray:
    """
    每个基矢下标对应的占据数表

    Returns:
        形状为 (D, n) 的整数数组，模式 1 为最外层（变化最慢）
    """
    table = np.array(
        list(itertools.product(range(sys.levels), repeat=sys.n_modes)), dtype=int
    )
    return _frozen(table)


@lru_cache(maxsize=None)
def interior_mask(sys: ModeSystem) -> np.ndarray:
    """
    内部子空间掩码

    玻色系统：所有模式占据数 ≤ cutoff−1 的基矢；费米系统：全部基矢。
    """
    if sys.is_fermionic:
        mask = np.ones(sys.dim, dtype=bool)
    else:
        mask = np.all(occupations(sys) <= sys.cutoff - 1, axis=1)
    return _frozen(mask)


@lru_cache(maxsize=None)
def annihilation_op(sys: ModeSystem, j: int) -> HilbertOp:
    """
    模式 j 的湮灭算符 a_j（玻色，截断）或 c_j（费米，Jordan-Wigner）

    Args:
        sys: 模式系统
        j: 模式编号，1..n

    Returns:
        D×D 只读复矩阵

    Raises:
        ModeIndexError: j 超出范围
    """
    sys.check_mode(j)
    n = sys.n_modes
    if sys.is_fermionic:
        # 模式 1 在最外层，j 之前的模式贡献 σ_z 弦
        factors = [_SIGMA_Z] * (j - 1) + [_SIGMA_LOWER] + [np.eye(2)] * (n - j)
    else:
        eye = np.eye(sys.levels)
        lowering = _single_mode_lowering(sys.cutoff)
        factors = [eye] * (j - 1) + [lowering] + [eye] * (n - j)
    op = _kron_all(factors).astype(complex)
    logger.debug(f"构造湮灭算符 j={j}, {sys.describe()}, D={sys.dim}")
    return _frozen(op)


@lru_cache(maxsize=None)
def creation_op(sys: ModeSystem, j: int) -> HilbertOp:
    """产生算符 a†_j / c†_j"""
    return _frozen(annihilation_op(sys, j).conj().T.copy())


@lru_cache(maxsize=None)
def number_op(sys: ModeSystem, j: Optional[int] = None) -> HilbertOp:
    """单模粒子数 a†_j a_j；j 为 None 时返回总粒子数"""
    if j is not None:
        return _frozen(creation_op(sys, j) @ annihilation_op(sys, j))
    total = np.zeros((sys.dim, sys.dim), dtype=complex)
    for k in range(1, sys.n_modes + 1):
        total = total + number_op(sys, k)
    return _frozen(total)


@lru_cache(maxsize=None)
def parity_op(sys: ModeSystem) -> HilbertOp:
    """
    宇称算符 P = exp(iπ Σ_j a†_j a_j)

    粒子数算符在占据数基下是对角的，因此 P 就是对角的 ±1。
    """
    signs = (-1.0) ** occupations(sys).sum(axis=1)
    return _frozen(np.diag(signs).astype(complex))


@lru_cache(maxsize=None)
def vacuum_state(sys: ModeSystem) -> HilbertOp:
    """真空纯态 ρ0 = |ψ0⟩⟨ψ0|"""
    rho = np.zeros((sys.dim, sys.dim), dtype=complex)
    rho[0, 0] = 1.0
    return _frozen(rho)


@lru_cache(maxsize=None)
def identity_op(sys: ModeSystem) -> HilbertOp:
    """D×D 单位算符"""
    return _frozen(np.eye(sys.dim, dtype=complex))


def _check_square(matrix: np.ndarray, name: str) -> int:
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatchError(f"{name} 必须是方阵，实际形状 {matrix.shape}")
    return matrix.shape[0]


def vec(rho: HilbertOp) -> OperatorKet:
    """行优先向量化：下标 (r, c) ↦ rD + c"""
    _check_square(rho, "rho")
    return np.asarray(rho, dtype=complex).reshape(-1).copy()


def devec(vector: OperatorKet) -> HilbertOp:
    """vec 的逆映射"""
    size = vector.shape[0]
    dim = int(round(np.sqrt(size)))
    if dim * dim != size:
        raise DimensionMismatchError(f"长度 {size} 不是完全平方数，无法还原为方阵")
    return np.asarray(vector, dtype=complex).reshape(dim, dim).copy()


def operator_ket(rho: HilbertOp) -> OperatorKet:
    """密度算符作为 ket |ρ⟩ = vec(ρ)"""
    return vec(rho)


def operator_bra(observable: HilbertOp) -> OperatorBra:
    """可观测量作为 bra ⟪A| = vec(Aᵀ)ᵀ，使配对成为普通点积"""
    _check_square(observable, "A")
    return vec(np.asarray(observable).T)


def trace_pair(observable: HilbertOp, rho: HilbertOp) -> complex:
    """
    迹配对 ⟪A|ρ⟩ = tr(Aρ)，即 A 在态 ρ 下的期望值

    Raises:
        DimensionMismatchError: 维度不匹配
    """
    dim_a = _check_square(observable, "A")
    dim_rho = _check_square(rho, "rho")
    if dim_a != dim_rho:
        raise DimensionMismatchError(f"维度不匹配: A 为 {dim_a}，rho 为 {dim_rho}")
    return complex(np.einsum("ij,ji->", observable, rho))
