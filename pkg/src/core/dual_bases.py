"""
双正交对偶 Fock 基

ket |m⟩ 由升算符 x′ 作用于 |ρ0⟩ 得到，bra ⟪m| 由降算符 x 作用于 ⟪1| 得到：
    |m⟩ = Π (x′_{ν,j})^{m_{ν,j}} / √(m_{ν,j}!) |ρ0⟩
    ⟪m| = ⟪1| Π (x_{ν,j})^{m_{ν,j}} / √(m_{ν,j}!)
两侧按同一序列施加因子：从乘积顺序的最后一个 (ν, j) 开始。
"""

import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .exceptions import InvalidModeSystemError, TruncationMarginError
from .fock_space import (
    HilbertOp,
    ModeSystem,
    identity_op,
    operator_bra,
    vacuum_state,
    vec,
)
from .supermaps import MapFamily, MapIndex, canonical_order
from ..utils.config import get_settings
from ..utils.serialization import array_to_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiIndex:
    """2n 分量多重指标，分量按规范顺序 (ν, j) 存放"""
    values: Tuple[int, ...]

    @property
    def n_modes(self) -> int:
        return len(self.values) // 2

    @property
    def degree(self) -> int:
        return sum(self.values)

    def component(self, nu: int, j: int) -> int:
        return self.values[nu * self.n_modes + (j - 1)]

    def label(self) -> str:
        return "".join(str(v) for v in self.values)

    @classmethod
    def unit(cls, n_modes: int, nu: int, j: int) -> "MultiIndex":
        values = [0] * (2 * n_modes)
        values[nu * n_modes + (j - 1)] = 1
        return cls(tuple(values))


def enumerate_multi_indices(sys: ModeSystem, max_index: int) -> List[MultiIndex]:
    """
    按分级字典序枚举多重指标

    先按总阶数升序，同阶内按字典序降序（(1,0,…) 排在 (0,1,…) 之前）。
    """
    bound = 1 if sys.is_fermionic else max_index
    candidates = itertools.product(range(bound + 1), repeat=2 * sys.n_modes)
    ordered = sorted(candidates, key=lambda m: (sum(m), tuple(-v for v in m)))
    return [MultiIndex(tuple(m)) for m in ordered]


def _check_bound(sys: ModeSystem, max_index: int) -> None:
    if sys.is_fermionic:
        if max_index != 1:
            raise InvalidModeSystemError(
                f"费米基矢的分量只能取 0/1，max_index 必须为 1，收到 {max_index}"
            )
        return
    if max_index < 0:
        raise TruncationMarginError(f"max_index 必须非负，收到 {max_index}")
    margin = get_settings().basis.truncation_margin
    # 每个模式上 m_{0,j} + m_{1,j} 个激发都不能碰到截断边界
    if 2 * max_index > sys.cutoff - margin:
        raise TruncationMarginError(
            f"max_index={max_index} 使单模占据数达到 {2 * max_index}，"
            f"超出安全上界 cutoff−{margin}={sys.cutoff - margin}；"
            f"请把 cutoff 提高到至少 {2 * max_index + margin}"
        )


def max_safe_index(sys: ModeSystem) -> int:
    """不碰到截断边界的最大分量上界（费米系统恒为 1）"""
    if sys.is_fermionic:
        return 1
    return max(0, (sys.cutoff - get_settings().basis.truncation_margin) // 2)


@dataclass(frozen=True, eq=False)
class DualBasis:
    """
    对偶基

    kets 的列为 vec|m⟩，bras 的行为 ⟪m|，二者按 indices 的顺序排列。
    """
    sys: ModeSystem
    indices: List[MultiIndex]
    kets: np.ndarray
    bras: np.ndarray
    order: List[MapIndex]

    @property
    def size(self) -> int:
        return len(self.indices)

    def gram(self) -> np.ndarray:
        """⟪m′|m⟩"""
        return self.bras @ self.kets

    def gram_deviation(self) -> float:
        return float(np.max(np.abs(self.gram() - np.eye(self.size))))

    def smallest_singular_value(self) -> float:
        return float(linalg.svdvals(self.kets).min())

    def index_of(self, m: MultiIndex) -> int:
        return self.indices.index(m)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "system": {
                "statistics": self.sys.statistics.value,
                "n_modes": self.sys.n_modes,
                "cutoff": self.sys.cutoff,
            },
            "order": [list(idx) for idx in self.order],
            "indices": [list(m.values) for m in self.indices],
            "kets": array_to_json(self.kets),
            "bras": array_to_json(self.bras),
            "gram": array_to_json(self.gram()),
        }


def _resolve_order(
    fam: MapFamily, order: Optional[Sequence[MapIndex]]
) -> List[MapIndex]:
    canonical = canonical_order(fam.sys.n_modes)
    if order is None:
        return canonical
    resolved = [tuple(idx) for idx in order]
    if sorted(resolved) != sorted(canonical):
        raise ValueError(f"乘积顺序必须是 {canonical} 的一个排列，收到 {resolved}")
    return resolved  # type: ignore[return-value]


def build_dual_basis(
    fam: MapFamily,
    max_index: Optional[int] = None,
    order: Optional[Sequence[MapIndex]] = None,
    max_workers: Optional[int] = None,
) -> DualBasis:
    """
    构造双正交对偶基

    Args:
        fam: 映射族
        max_index: 每个分量的上界；费米系统固定为 1，玻色系统默认取配置 basis.default_max_index
        order: 乘积中 (ν, j) 的顺序，默认规范顺序
        max_workers: 并行构造列的线程数

    Returns:
        对偶基

    Raises:
        TruncationMarginError: 玻色上界超出安全截断余量
    """
    sys = fam.sys
    if max_index is None:
        max_index = 1 if sys.is_fermionic else get_settings().basis.default_max_index
    _check_bound(sys, max_index)
    sequence = list(reversed(_resolve_order(fam, order)))
    indices = enumerate_multi_indices(sys, max_index)
    rho0 = vec(vacuum_state(sys))
    one_bra = operator_bra(identity_op(sys))

    def build(m: MultiIndex) -> Tuple[np.ndarray, np.ndarray]:
        ket = rho0
        bra = one_bra
        for nu, j in sequence:
            power = m.component(nu, j)
            if power == 0:
                continue
            p = fam.position(nu, j)
            norm = math.sqrt(math.factorial(power))
            for _ in range(power):
                ket = fam.raising[p] @ ket
                bra = bra @ fam.lowering[p]
            ket = ket / norm
            bra = bra / norm
        return ket, bra

    started = time.perf_counter()
    workers = max_workers or get_settings().performance.max_workers
    with ThreadPoolExecutor(max_workers=workers) as pool:
        columns = list(pool.map(build, indices))
    kets = np.column_stack([ket for ket, _ in columns])
    bras = np.vstack([bra for _, bra in columns])
    basis = DualBasis(
        sys=sys,
        indices=indices,
        kets=kets,
        bras=bras,
        order=_resolve_order(fam, order),
    )
    logger.info(
        f"构造对偶基 {sys.describe()}: {basis.size} 个元素，"
        f"耗时 {time.perf_counter() - started:.2f}s"
    )
    return basis


@dataclass(frozen=True, eq=False)
class ExpansionResult:
    """基矢展开结果：系数与重构残差（2-范数）"""
    coefficients: np.ndarray
    residual: float


def expand_state(rho: HilbertOp, basis: DualBasis) -> ExpansionResult:
    """
    σ_m = ⟪m|ρ⟩；ρ 不在张成空间内时通过残差报告，不抛异常
    """
    ket = vec(rho)
    sigma = basis.bras @ ket
    residual = float(np.linalg.norm(ket - basis.kets @ sigma))
    if residual > get_settings().numerics.tolerance:
        logger.debug(f"态展开残差 {residual:.3e}：ρ 有张成空间之外的分量")
    return ExpansionResult(coefficients=sigma, residual=residual)


def expand_observable(observable: HilbertOp, basis: DualBasis) -> ExpansionResult:
    """
    S_m = ⟪A|m⟩；残差衡量 ⟪A| 与 Σ S_m ⟪m| 的差
    """
    bra = operator_bra(observable)
    coefficients = bra @ basis.kets
    residual = float(np.linalg.norm(bra - coefficients @ basis.bras))
    return ExpansionResult(coefficients=coefficients, residual=residual)


def duality_pairing(
    observable_coefficients: np.ndarray, state_coefficients: np.ndarray
) -> Tuple[complex, float]:
    """
    l² 对偶配对

    Returns:
        (Σ_m S_m σ_m, Cauchy-Schwarz 上界 ‖S‖₂‖σ‖₂)
    """
    value = complex(np.sum(observable_coefficients * state_coefficients))
    bound = float(
        np.linalg.norm(observable_coefficients) * np.linalg.norm(state_coefficients)
    )
    return value, bound
