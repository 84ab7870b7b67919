"""
超算符（映射）模块

在行优先向量化约定下构造左乘/右乘超算符，以及正则伴随映射族：
- 玻色: â_{0,j}=âᴸ_j, â_{1,j}=â†ᴿ_j, â′_{0,j}=â†ᴸ_j−â†ᴿ_j, â′_{1,j}=âᴿ_j−âᴸ_j
- 费米: ĉ_{0,j}=ĉᴸ_j, ĉ_{1,j}=P̂ĉ†ᴿ_j, ĉ′_{0,j}=ĉ†ᴸ_j−P̂ĉ†ᴿ_j, ĉ′_{1,j}=ĉᴸ_j−P̂ĉᴿ_j

并提供对（反）对易关系、左右真空条件与宇称超算符性质的数值校验。
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    InvalidModeSystemError,
    StatisticsMismatchError,
)
from .fock_space import (
    HilbertOp,
    ModeSystem,
    OperatorBra,
    OperatorKet,
    annihilation_op,
    creation_op,
    identity_op,
    interior_mask,
    occupations,
    operator_bra,
    parity_op,
    vacuum_state,
    vec,
)
from ..utils.config import get_settings

logger = logging.getLogger(__name__)

SuperOp = np.ndarray
MapIndex = Tuple[int, int]  # (ν, j)


def _frozen(matrix: np.ndarray) -> np.ndarray:
    matrix.flags.writeable = False
    return matrix


def sandwich(left: HilbertOp, right: HilbertOp) -> SuperOp:
    """ρ ↦ left·ρ·right 的矩阵，行优先约定下为 left ⊗ rightᵀ"""
    if left.shape != right.shape:
        raise DimensionMismatchError(f"维度不匹配: {left.shape} 与 {right.shape}")
    return np.kron(left, np.asarray(right).T)


def left_mult(b: HilbertOp) -> SuperOp:
    """左乘映射 b̂ᴸ|ρ⟩ = |bρ⟩，矩阵为 b ⊗ I"""
    return sandwich(b, np.eye(b.shape[0], dtype=complex))


def right_mult(b: HilbertOp) -> SuperOp:
    """右乘映射 b̂ᴿ|ρ⟩ = |ρb⟩，矩阵为 I ⊗ bᵀ"""
    return sandwich(np.eye(b.shape[0], dtype=complex), b)


def apply_to_ket(superop: SuperOp, ket: OperatorKet) -> OperatorKet:
    """M̂|ρ⟩：矩阵乘向量"""
    if superop.shape[1] != ket.shape[0]:
        raise DimensionMismatchError(
            f"超算符 {superop.shape} 无法作用于长度 {ket.shape[0]} 的 ket"
        )
    return superop @ ket


def apply_to_bra(bra: OperatorBra, superop: SuperOp) -> OperatorBra:
    """⟪A|M̂：向量乘矩阵"""
    if superop.shape[0] != bra.shape[0]:
        raise DimensionMismatchError(
            f"长度 {bra.shape[0]} 的 bra 无法作用于超算符 {superop.shape}"
        )
    return bra @ superop


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def check_dense_size(sys: ModeSystem) -> None:
    limit = get_settings().numerics.max_superop_dim
    if sys.superop_dim > limit:
        raise InvalidModeSystemError(
            f"{sys.describe()} 的算符空间维数 D²={sys.superop_dim} 超过稠密上限 {limit}"
        )


def canonical_order(n_modes: int) -> List[MapIndex]:
    """规范顺序：ν 升序，其次 j 升序"""
    return [(nu, j) for nu in (0, 1) for j in range(1, n_modes + 1)]


@dataclass(frozen=True, eq=False)
class MapFamily:
    """
    4n 个正则伴随映射

    lowering / raising 按规范顺序 (ν, j) 存放，parity 仅费米系统有值。
    """
    sys: ModeSystem
    lowering: Tuple[SuperOp, ...]
    raising: Tuple[SuperOp, ...]
    parity: Optional[SuperOp] = None

    def index_order(self) -> List[MapIndex]:
        return canonical_order(self.sys.n_modes)

    def position(self, nu: int, j: int) -> int:
        if nu not in (0, 1):
            raise ValueError(f"ν 只能取 0 或 1，收到 {nu}")
        self.sys.check_mode(j)
        return nu * self.sys.n_modes + (j - 1)

    def lowering_at(self, nu: int, j: int) -> SuperOp:
        return self.lowering[self.position(nu, j)]

    def raising_at(self, nu: int, j: int) -> SuperOp:
        return self.raising[self.position(nu, j)]

    def as_list(self) -> List[Tuple[str, MapIndex, SuperOp]]:
        """[(kind, (ν, j), 超算符)]，kind 为 "lowering" 或 "raising" """
        order = self.index_order()
        items = [("lowering", idx, op) for idx, op in zip(order, self.lowering)]
        items += [("raising", idx, op) for idx, op in zip(order, self.raising)]
        return items

    def bracket(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """玻色取对易子，费米取反对易子"""
        return anticommutator(a, b) if self.sys.is_fermionic else commutator(a, b)


def _require(sys: ModeSystem, fermionic: bool) -> None:
    if sys.is_fermionic != fermionic:
        expected = "fermionic" if fermionic else "bosonic"
        raise StatisticsMismatchError(f"需要 {expected} 系统，收到 {sys.describe()}")


@lru_cache(maxsize=None)
def parity_superop(sys: ModeSystem) -> SuperOp:
    """
    宇称超算符 P̂ = P̂ᴸ·P̂ᴿ，即以 P = exp(iπN) 共轭

    满足 ⟪1|P̂ = ⟪1|、P̂|ρ0⟩ = |ρ0⟩，且与全部费米伴随映射反对易。

    Raises:
        StatisticsMismatchError: 非费米系统
    """
    _require(sys, fermionic=True)
    check_dense_size(sys)
    p = parity_op(sys)
    return _frozen(left_mult(p) @ right_mult(p))


@lru_cache(maxsize=None)
def bosonic_maps(sys: ModeSystem) -> MapFamily:
    """
    玻色正则伴随映射族

    Raises:
        StatisticsMismatchError: 非玻色系统
    """
    _require(sys, fermionic=False)
    check_dense_size(sys)
    started = time.perf_counter()
    lowering: Dict[MapIndex, SuperOp] = {}
    raising: Dict[MapIndex, SuperOp] = {}
    for j in range(1, sys.n_modes + 1):
        a, a_dag = annihilation_op(sys, j), creation_op(sys, j)
        a_l, a_r = left_mult(a), right_mult(a)
        a_dag_l, a_dag_r = left_mult(a_dag), right_mult(a_dag)
        lowering[(0, j)] = a_l
        lowering[(1, j)] = a_dag_r
        raising[(0, j)] = a_dag_l - a_dag_r
        raising[(1, j)] = a_r - a_l
    order = canonical_order(sys.n_modes)
    family = MapFamily(
        sys=sys,
        lowering=tuple(_frozen(lowering[idx]) for idx in order),
        raising=tuple(_frozen(raising[idx]) for idx in order),
    )
    logger.debug(f"构造玻色映射族 {sys.describe()}，耗时 {time.perf_counter() - started:.3f}s")
    return family


@lru_cache(maxsize=None)
def fermionic_maps(sys: ModeSystem) -> MapFamily:
    """
    费米正则伴随映射族

    P̂ 作用在右乘之后；这一排列使几乎-CAR 取 +δ，并让 ⟪1| 在整个算符空间上被全部 ĉ′ 右湮灭。

    Raises:
        StatisticsMismatchError: 非费米系统
    """
    _require(sys, fermionic=True)
    started = time.perf_counter()
    parity = parity_superop(sys)
    lowering: Dict[MapIndex, SuperOp] = {}
    raising: Dict[MapIndex, SuperOp] = {}
    for j in range(1, sys.n_modes + 1):
        c, c_dag = annihilation_op(sys, j), creation_op(sys, j)
        c_l = left_mult(c)
        parity_c_r = parity @ right_mult(c)
        parity_c_dag_r = parity @ right_mult(c_dag)
        lowering[(0, j)] = c_l
        lowering[(1, j)] = parity_c_dag_r
        raising[(0, j)] = left_mult(c_dag) - parity_c_dag_r
        raising[(1, j)] = c_l - parity_c_r
    order = canonical_order(sys.n_modes)
    family = MapFamily(
        sys=sys,
        lowering=tuple(_frozen(lowering[idx]) for idx in order),
        raising=tuple(_frozen(raising[idx]) for idx in order),
        parity=parity,
    )
    logger.debug(f"构造费米映射族 {sys.describe()}，耗时 {time.perf_counter() - started:.3f}s")
    return family


def map_family(sys: ModeSystem) -> MapFamily:
    """按统计类型分派到 bosonic_maps / fermionic_maps"""
    return fermionic_maps(sys) if sys.is_fermionic else bosonic_maps(sys)


@lru_cache(maxsize=None)
def interior_columns(sys: ModeSystem) -> np.ndarray:
    """算符 |r⟩⟨c| 两侧都位于内部子空间的列下标"""
    mask = interior_mask(sys)
    return _frozen(np.flatnonzero(np.outer(mask, mask).reshape(-1)))


@lru_cache(maxsize=None)
def physical_columns(sys: ModeSystem) -> np.ndarray:
    """
    物理算符扇区的列下标

    玻色：两侧都在内部子空间；费米：宇称为偶的算符（P̂ 在其上取 +1）。
    """
    if not sys.is_fermionic:
        return interior_columns(sys)
    parity = occupations(sys).sum(axis=1) % 2
    even = np.equal.outer(parity, parity).reshape(-1)
    return _frozen(np.flatnonzero(even))


@dataclass(eq=False)
class AlgebraReport:
    """代数关系校验报告（各项均为最大模残差）"""
    sys: ModeSystem
    interior_only: bool
    indices: List[MapIndex]
    mixed: np.ndarray
    lowering: np.ndarray
    raising: np.ndarray
    left_vacuum: np.ndarray
    right_vacuum: np.ndarray
    parity: Dict[str, float] = field(default_factory=dict)

    def max_residual(self) -> float:
        values = [
            self.mixed.max(),
            self.lowering.max(),
            self.raising.max(),
            self.left_vacuum.max(),
            self.right_vacuum.max(),
        ]
        values += list(self.parity.values())
        return float(max(values))

    def passed(self, tolerance: float) -> bool:
        return self.max_residual() <= tolerance

    def to_dict(self) -> Dict[str, Any]:
        labels = [f"{nu},{j}" for nu, j in self.indices]
        return {
            "system": {
                "statistics": self.sys.statistics.value,
                "n_modes": self.sys.n_modes,
                "cutoff": self.sys.cutoff,
            },
            "interior_only": self.interior_only,
            "relation": "anticommutator" if self.sys.is_fermionic else "commutator",
            "indices": labels,
            "mixed": self.mixed.tolist(),
            "lowering": self.lowering.tolist(),
            "raising": self.raising.tolist(),
            "left_vacuum": dict(zip(labels, self.left_vacuum.tolist())),
            "right_vacuum": dict(zip(labels, self.right_vacuum.tolist())),
            "parity": dict(self.parity),
            "max_residual": self.max_residual(),
        }


def _max_abs(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix))) if matrix.size else 0.0


def verify_algebra(
    fam: MapFamily,
    interior_only: bool = True,
    max_workers: Optional[int] = None,
) -> AlgebraReport:
    """
    校验映射族的几乎-CCR / 几乎-CAR 以及真空条件

    Args:
        fam: 映射族
        interior_only: 玻色系统只在内部子空间的列上检验（截断边界必然破坏 CCR）
        max_workers: 线程数，默认取配置 performance.max_workers

    Returns:
        各下标对的最大残差表
    """
    sys = fam.sys
    size = 2 * sys.n_modes
    if interior_only:
        columns = interior_columns(sys)
    else:
        columns = np.arange(sys.superop_dim)
    eye_cols = np.eye(sys.superop_dim, dtype=complex)[:, columns]
    workers = max_workers or get_settings().performance.max_workers

    def bracket_cols(a: SuperOp, b: SuperOp) -> np.ndarray:
        # 只计算所选列：[A, B] e_c = A (B e_c) ∓ B (A e_c)
        first = a @ b[:, columns]
        second = b @ a[:, columns]
        return first + second if sys.is_fermionic else first - second

    def row(p: int) -> Tuple[int, List[float], List[float], List[float]]:
        mixed, low, high = [], [], []
        for q in range(size):
            delta = eye_cols if p == q else 0.0
            bracket = bracket_cols(fam.lowering[p], fam.raising[q])
            mixed.append(_max_abs(bracket - delta))
            low.append(_max_abs(bracket_cols(fam.lowering[p], fam.lowering[q])))
            high.append(_max_abs(bracket_cols(fam.raising[p], fam.raising[q])))
        return p, mixed, low, high

    started = time.perf_counter()
    mixed_table = np.zeros((size, size))
    lowering_table = np.zeros((size, size))
    raising_table = np.zeros((size, size))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for p, mixed, low, high in pool.map(row, range(size)):
            mixed_table[p], lowering_table[p], raising_table[p] = mixed, low, high

    one_bra = operator_bra(identity_op(sys))
    rho0 = vec(vacuum_state(sys))
    left_vacuum = np.array([_max_abs(one_bra @ op) for op in fam.raising])
    right_vacuum = np.array([_max_abs(op @ rho0) for op in fam.lowering])

    parity: Dict[str, float] = {}
    if fam.parity is not None:
        p_hat = fam.parity
        parity = {
            "left_vacuum": _max_abs(one_bra @ p_hat - one_bra),
            "right_vacuum": _max_abs(p_hat @ rho0 - rho0),
            "anticommutes_lowering": max(
                _max_abs(anticommutator(p_hat, op)) for op in fam.lowering
            ),
            "anticommutes_raising": max(
                _max_abs(anticommutator(p_hat, op)) for op in fam.raising
            ),
        }

    report = AlgebraReport(
        sys=sys,
        interior_only=interior_only,
        indices=fam.index_order(),
        mixed=mixed_table,
        lowering=lowering_table,
        raising=raising_table,
        left_vacuum=left_vacuum,
        right_vacuum=right_vacuum,
        parity=parity,
    )
    logger.info(
        f"代数校验 {sys.describe()}: 最大残差 {report.max_residual():.3e}，"
        f"耗时 {time.perf_counter() - started:.2f}s"
    )
    return report


def hermitian_adjoint_gap(fam: MapFamily) -> np.ndarray:
    """每个下标上 ‖x′ − x†‖_max：正则共轭映射并不是厄米伴随"""
    return np.array(
        [_max_abs(high - low.conj().T) for low, high in zip(fam.lowering, fam.raising)]
    )
