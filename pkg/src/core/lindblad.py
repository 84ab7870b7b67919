"""
二次 Lindblad 生成元

模型由二次哈密顿量
    H = Σ h_{jk} a†_j a_k + Σ (Δ_{jk} a†_j a†_k + h.c.)
与线性 Lindblad 算符 L_μ = Σ_j (u_{μj} a_j + v_{μj} a†_j) 给出，耗散子采用因子 2 约定：
    L̂ρ = −i[H, ρ] + Σ_μ (2 L_μ ρ L†_μ − {L†_μ L_μ, ρ})

模块提供 Liouvillean 的组装、以正则伴随映射表示的正规序二次型、稠密谱与非平衡稳态。
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from .exceptions import (
    DegenerateSteadyStateError,
    DimensionMismatchError,
    InvalidModelError,
    ThirdQuantizationError,
)
from .fock_space import (
    HilbertOp,
    ModeSystem,
    annihilation_op,
    creation_op,
    devec,
    trace_pair,
    vec,
)
from .supermaps import (
    MapFamily,
    SuperOp,
    check_dense_size,
    left_mult,
    map_family,
    physical_columns,
    right_mult,
)
from ..utils.config import get_settings
from ..utils.serialization import array_to_json, complex_to_pair

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-13


@dataclass(frozen=True, eq=False)
class LindbladCoupling:
    """线性 Lindblad 算符 L = Σ_j (u_j a_j + v_j a†_j) 的系数"""
    u: np.ndarray
    v: np.ndarray

    def adjoint(self) -> "LindbladCoupling":
        """L† = Σ_j (conj(v_j) a_j + conj(u_j) a†_j)"""
        return LindbladCoupling(u=np.conj(self.v), v=np.conj(self.u))


@dataclass(eq=False)
class QuadraticLindbladModel:
    """
    二次哈密顿量 + 线性耗散的 Lindblad 模型

    h_hop 为厄米矩阵；h_pair 对玻色为对称矩阵，对费米为反对称矩阵。
    """
    sys: ModeSystem
    h_hop: np.ndarray
    h_pair: np.ndarray
    lindblad_ops: List[LindbladCoupling] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.h_hop = np.asarray(self.h_hop, dtype=complex)
        self.h_pair = np.asarray(self.h_pair, dtype=complex)
        self.lindblad_ops = [
            LindbladCoupling(
                np.asarray(op.u, dtype=complex), np.asarray(op.v, dtype=complex)
            )
            for op in self.lindblad_ops
        ]

    @classmethod
    def free(cls, sys: ModeSystem) -> "QuadraticLindbladModel":
        """H = 0 且没有耗散通道"""
        zeros = np.zeros((sys.n_modes, sys.n_modes), dtype=complex)
        return cls(sys=sys, h_hop=zeros, h_pair=zeros.copy())

    def validate(self) -> None:
        """
        检查矩阵形状与对称性

        Raises:
            InvalidModelError: 形状错误、h_hop 非厄米或 h_pair 对称性不符
        """
        n = self.sys.n_modes
        for name, matrix in (("H_hop", self.h_hop), ("H_pair", self.h_pair)):
            if matrix.shape != (n, n):
                raise InvalidModelError(f"{name} 的形状必须是 ({n}, {n})，实际 {matrix.shape}")
            if not np.all(np.isfinite(matrix)):
                raise InvalidModelError(f"{name} 含有非有限元素 (NaN 或 Inf)")

        hermitian_gap = float(np.max(np.abs(self.h_hop - self.h_hop.conj().T)))
        if hermitian_gap > SYMMETRY_TOLERANCE:
            raise InvalidModelError(f"H_hop 不是厄米矩阵，偏差 {hermitian_gap:.3e}")

        if self.sys.is_fermionic:
            pair_gap = float(np.max(np.abs(self.h_pair + self.h_pair.T)))
            expected = "反对称"
        else:
            pair_gap = float(np.max(np.abs(self.h_pair - self.h_pair.T)))
            expected = "对称"
        if pair_gap > SYMMETRY_TOLERANCE:
            raise InvalidModelError(f"H_pair 必须是{expected}矩阵，偏差 {pair_gap:.3e}")

        for mu, op in enumerate(self.lindblad_ops):
            if op.u.shape != (n,) or op.v.shape != (n,):
                raise InvalidModelError(
                    f"lindblad_ops[{mu}] 的 u、v 长度必须为 {n}，实际 {op.u.shape} 与 {op.v.shape}"
                )
            if not (np.all(np.isfinite(op.u)) and np.all(np.isfinite(op.v))):
                raise InvalidModelError(f"lindblad_ops[{mu}] 的 u、v 含有非有限元素 (NaN 或 Inf)")

    def _linear_op(self, coupling: LindbladCoupling) -> HilbertOp:
        op = np.zeros((self.sys.dim, self.sys.dim), dtype=complex)
        for j in range(1, self.sys.n_modes + 1):
            op = op + coupling.u[j - 1] * annihilation_op(self.sys, j)
            op = op + coupling.v[j - 1] * creation_op(self.sys, j)
        return op

    def hamiltonian(self) -> HilbertOp:
        """Hilbert 空间上的 H"""
        n = self.sys.n_modes
        h = np.zeros((self.sys.dim, self.sys.dim), dtype=complex)
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                hop = self.h_hop[j - 1, k - 1]
                if hop != 0:
                    term = hop * creation_op(self.sys, j) @ annihilation_op(self.sys, k)
                    h = h + term
                pair = self.h_pair[j - 1, k - 1]
                if pair != 0:
                    term = pair * creation_op(self.sys, j) @ creation_op(self.sys, k)
                    h = h + term + term.conj().T
        return h

    def jump_operators(self) -> List[HilbertOp]:
        return [self._linear_op(op) for op in self.lindblad_ops]


def assemble_liouvillean(model: QuadraticLindbladModel) -> SuperOp:
    """
    组装 Liouvillean 超算符 L̂（只用左乘/右乘映射）

    Raises:
        InvalidModelError: 模型不满足约束
        InvalidModeSystemError: 算符空间超过稠密上限
    """
    model.validate()
    check_dense_size(model.sys)
    started = time.perf_counter()
    h = model.hamiltonian()
    liouvillean = -1j * (left_mult(h) - right_mult(h))
    for jump in model.jump_operators():
        jump_dag = jump.conj().T
        decay = jump_dag @ jump
        liouvillean = liouvillean + 2.0 * left_mult(jump) @ right_mult(jump_dag)
        liouvillean = liouvillean - left_mult(decay) - right_mult(decay)
    logger.debug(
        f"组装 Liouvillean {model.sys.describe()}: {len(model.lindblad_ops)} 个耗散通道，"
        f"耗时 {time.perf_counter() - started:.3f}s"
    )
    return liouvillean


def apply_dissipator_direct(
    model: QuadraticLindbladModel, rho: HilbertOp
) -> HilbertOp:
    """直接在 Hilbert 空间上计算 −i[H, ρ] + Σ (2LρL† − {L†L, ρ})"""
    dim = model.sys.dim
    if rho.shape != (dim, dim):
        raise DimensionMismatchError(
            f"rho 的形状必须是 ({dim}, {dim})，实际 {rho.shape}"
        )
    h = model.hamiltonian()
    result = -1j * (h @ rho - rho @ h)
    for jump in model.jump_operators():
        jump_dag = jump.conj().T
        decay = jump_dag @ jump
        result = result + 2.0 * jump @ rho @ jump_dag - decay @ rho - rho @ decay
    return result


# ---------------------------------------------------------------------------
# 正规序二次型
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class ThirdQuantizedForm:
    """
    L̂ = Σ R_{pq} x′_p x_q + Σ_{p≤q} S_{pq} x′_p x′_q + Σ_{p≤q} T_{pq} x_p x_q + c

    x / x′ 为映射族的降/升映射，下标 p 按规范顺序 (ν, j) 排列。
    同类乘积只保留上三角：玻色对称折叠，费米反对称折叠（对角线为零）。
    """
    sys: ModeSystem
    raising_lowering: np.ndarray
    raising_raising: np.ndarray
    lowering_lowering: np.ndarray
    constant: complex
    residual: float = 0.0

    def trace_preserving(self, tolerance: Optional[float] = None) -> bool:
        """没有纯降映射项与常数项时，⟪1| 被 L̂ 从右侧湮灭"""
        tol = tolerance if tolerance is not None else get_settings().numerics.tolerance
        return (
            float(np.max(np.abs(self.lowering_lowering), initial=0.0)) <= tol
            and abs(self.constant) <= tol
        )

    def is_zero(self, tolerance: Optional[float] = None) -> bool:
        tol = tolerance if tolerance is not None else get_settings().numerics.tolerance
        blocks = (self.raising_lowering, self.raising_raising, self.lowering_lowering)
        if abs(self.constant) > tol:
            return False
        return all(float(np.max(np.abs(b), initial=0.0)) <= tol for b in blocks)

    def reconstruct(self, fam: Optional[MapFamily] = None) -> SuperOp:
        """由系数表与映射族重建超算符"""
        fam = fam or map_family(self.sys)
        size = 2 * self.sys.n_modes
        result = self.constant * np.eye(self.sys.superop_dim, dtype=complex)
        for p in range(size):
            for q in range(size):
                coeff = self.raising_lowering[p, q]
                if coeff != 0:
                    result = result + coeff * (fam.raising[p] @ fam.lowering[q])
            for q in range(p, size):
                coeff = self.raising_raising[p, q]
                if coeff != 0:
                    result = result + coeff * (fam.raising[p] @ fam.raising[q])
                coeff = self.lowering_lowering[p, q]
                if coeff != 0:
                    result = result + coeff * (fam.lowering[p] @ fam.lowering[q])
        return result

    def to_dict(self) -> Dict[str, Any]:
        return {
            "raising_lowering": array_to_json(self.raising_lowering),
            "raising_raising": array_to_json(self.raising_raising),
            "lowering_lowering": array_to_json(self.lowering_lowering),
            "constant": complex_to_pair(self.constant),
            "residual": self.residual,
            "trace_preserving": self.trace_preserving(),
        }


class _SymbolicExpansion:
    """
    把左乘/右乘的线性算符写成 4n 个映射变量的线性组合，并累加双线性系数

    变量 0..2n−1 为降映射 x，2n..4n−1 为升映射 x′。费米右乘一律以 P̂ĉᴿ 的形式出现。
    """

    def __init__(self, sys: ModeSystem):
        self.sys = sys
        self.n = sys.n_modes
        self.size = 4 * self.n
        self.coefficients = np.zeros((self.size, self.size), dtype=complex)
        self.sign = -1.0 if sys.is_fermionic else 1.0

    def _lowering(self, nu: int, j: int) -> int:
        return nu * self.n + (j - 1)

    def _raising(self, nu: int, j: int) -> int:
        return 2 * self.n + nu * self.n + (j - 1)

    def left(self, coupling: LindbladCoupling) -> np.ndarray:
        """w = Σ (α a + β a†) 左乘的线性组合"""
        row = np.zeros(self.size, dtype=complex)
        for j in range(1, self.n + 1):
            alpha, beta = coupling.u[j - 1], coupling.v[j - 1]
            # aᴸ = x_{0j}；a†ᴸ = x′_{0j} + x_{1j}（费米时 x_{1j} = P̂c†ᴿ）
            row[self._lowering(0, j)] += alpha
            row[self._raising(0, j)] += beta
            row[self._lowering(1, j)] += beta
        return row

    def right(self, coupling: LindbladCoupling) -> np.ndarray:
        """玻色为 wᴿ，费米为 P̂wᴿ"""
        row = np.zeros(self.size, dtype=complex)
        for j in range(1, self.n + 1):
            alpha, beta = coupling.u[j - 1], coupling.v[j - 1]
            row[self._lowering(1, j)] += beta
            row[self._lowering(0, j)] += alpha
            # 玻色 aᴿ = x′_{1j} + x_{0j}；费米 P̂cᴿ = x_{0j} − x′_{1j}
            row[self._raising(1, j)] += self.sign * alpha
        return row

    def add_left_product(
        self, coeff: complex, w1: LindbladCoupling, w2: LindbladCoupling
    ) -> None:
        """coeff · (w1 w2)ᴸ"""
        self.coefficients += coeff * np.outer(self.left(w1), self.left(w2))

    def add_right_product(
        self, coeff: complex, w1: LindbladCoupling, w2: LindbladCoupling
    ) -> None:
        """coeff · (w1 w2)ᴿ = coeff · w2ᴿ w1ᴿ，费米时 P̂ 交换带来一个负号"""
        product = np.outer(self.right(w2), self.right(w1))
        self.coefficients += coeff * self.sign * product

    def add_sandwich(
        self, coeff: complex, w1: LindbladCoupling, w2: LindbladCoupling
    ) -> None:
        """coeff · w1ᴸ w2ᴿ；费米情形在偶宇称扇区上成立"""
        self.coefficients += coeff * self.sign * np.outer(self.left(w1), self.right(w2))

    def normal_order(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, complex]:
        half = 2 * self.n
        c = self.coefficients
        low_low = c[:half, :half]
        low_high = c[:half, half:]
        high_low = c[half:, :half]
        high_high = c[half:, half:]

        # x_a x′_b = ±x′_b x_a + δ_ab
        raising_lowering = high_low + self.sign * low_high.T
        constant = complex(np.trace(low_high))
        return (
            raising_lowering,
            self._fold(high_high),
            self._fold(low_low),
            constant,
        )

    def _fold(self, block: np.ndarray) -> np.ndarray:
        if self.sys.is_fermionic:
            return np.triu(block - block.T, k=1)
        return np.triu(block + block.T, k=1) + np.diag(np.diag(block))


def _unit_coupling(n: int, j: int, creation: bool) -> LindbladCoupling:
    u = np.zeros(n, dtype=complex)
    v = np.zeros(n, dtype=complex)
    (v if creation else u)[j - 1] = 1.0
    return LindbladCoupling(u=u, v=v)


def third_quantize(
    model: QuadraticLindbladModel,
    liouvillean: Optional[SuperOp] = None,
    tolerance: Optional[float] = None,
) -> ThirdQuantizedForm:
    """
    把 L̂ 写成映射族上的正规序二次型，并用重建残差验证

    玻色系统只在内部列上比较（截断边界破坏 CCR），费米系统在偶宇称扇区上比较。

    Args:
        model: 二次模型
        liouvillean: 已组装的 L̂，None 时重新组装
        tolerance: 重建残差容差，默认取配置 numerics.tolerance

    Returns:
        系数表

    Raises:
        ThirdQuantizationError: 重建残差超出容差
    """
    model.validate()
    sys = model.sys
    n = sys.n_modes
    tol = tolerance if tolerance is not None else get_settings().numerics.tolerance
    expansion = _SymbolicExpansion(sys)

    annihilators = [_unit_coupling(n, j, creation=False) for j in range(1, n + 1)]
    creators = [_unit_coupling(n, j, creation=True) for j in range(1, n + 1)]

    # −i[H, ·] = −i Hᴸ + i Hᴿ
    for j in range(n):
        for k in range(n):
            hop = model.h_hop[j, k]
            if hop != 0:
                expansion.add_left_product(-1j * hop, creators[j], annihilators[k])
                expansion.add_right_product(1j * hop, creators[j], annihilators[k])
            pair = model.h_pair[j, k]
            if pair != 0:
                expansion.add_left_product(-1j * pair, creators[j], creators[k])
                expansion.add_right_product(1j * pair, creators[j], creators[k])
                conj_pair = np.conj(pair)
                low_k, low_j = annihilators[k], annihilators[j]
                expansion.add_left_product(-1j * conj_pair, low_k, low_j)
                expansion.add_right_product(1j * conj_pair, low_k, low_j)

    for coupling in model.lindblad_ops:
        adjoint = coupling.adjoint()
        expansion.add_sandwich(2.0, coupling, adjoint)
        expansion.add_left_product(-1.0, adjoint, coupling)
        expansion.add_right_product(-1.0, adjoint, coupling)

    (
        raising_lowering,
        raising_raising,
        lowering_lowering,
        constant,
    ) = expansion.normal_order()
    form = ThirdQuantizedForm(
        sys=sys,
        raising_lowering=raising_lowering,
        raising_raising=raising_raising,
        lowering_lowering=lowering_lowering,
        constant=constant,
    )

    target = liouvillean if liouvillean is not None else assemble_liouvillean(model)
    columns = physical_columns(sys)
    rebuilt = form.reconstruct(map_family(sys))
    deviation = np.abs(rebuilt[:, columns] - target[:, columns])
    form.residual = float(np.max(deviation, initial=0.0))
    if form.residual > tol:
        raise ThirdQuantizationError(
            f"二次型重建残差 {form.residual:.3e} 超出容差 {tol:.1e}，模型可能不是二次的",
            residual=form.residual,
        )
    logger.info(f"二次型重建 {sys.describe()}: 残差 {form.residual:.3e}")
    return form


# ---------------------------------------------------------------------------
# 谱与稳态
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class NessResult:
    """
    非平衡稳态

    null_dim > 1 时 rho_ness 为 None，零空间基底放在 null_basis 中。
    """
    rho_ness: Optional[HilbertOp]
    spectral_gap: float
    null_dim: int
    residual: float
    near_degenerate: bool = False
    null_basis: List[HilbertOp] = field(default_factory=list)
    hermiticity_deviation: float = 0.0
    min_eigenvalue: float = 0.0
    trace: complex = 1.0
    eigenvalues: Optional[np.ndarray] = None

    @property
    def degenerate(self) -> bool:
        return self.null_dim > 1

    def to_dict(self, spectrum_head: Optional[int] = None) -> Dict[str, Any]:
        head = spectrum_head
        if head is None:
            head = get_settings().report.spectrum_head
        rho_ness = self.rho_ness
        payload: Dict[str, Any] = {
            "null_dim": self.null_dim,
            "degenerate": self.degenerate,
            "spectral_gap": self.spectral_gap,
            "near_degenerate": self.near_degenerate,
            "residual": self.residual,
            "trace": complex_to_pair(self.trace),
            "hermiticity_deviation": self.hermiticity_deviation,
            "min_eigenvalue": self.min_eigenvalue,
            "rho_ness": array_to_json(rho_ness) if rho_ness is not None else None,
        }
        if self.degenerate:
            payload["null_basis"] = [array_to_json(b) for b in self.null_basis]
        if self.eigenvalues is not None:
            payload["spectrum_head"] = [
                complex_to_pair(z) for z in self.eigenvalues[:head]
            ]
        return payload


def liouvillean_spectrum(liouvillean: SuperOp) -> np.ndarray:
    """稠密本征值，按实部降序（实部相同时按虚部降序）"""
    eigenvalues = linalg.eigvals(liouvillean)
    order = np.lexsort((-eigenvalues.imag, -eigenvalues.real))
    return eigenvalues[order]


def spectrum(model: QuadraticLindbladModel) -> np.ndarray:
    """L̂ 的全部 D² 个本征值"""
    eigenvalues = liouvillean_spectrum(assemble_liouvillean(model))
    max_real = float(np.max(eigenvalues.real))
    if max_real > 1e-9:
        logger.warning(f"谱中出现正实部 {max_real:.3e}，请检查模型")
    return eigenvalues


def _null_space(liouvillean: SuperOp, rcond: float) -> Tuple[np.ndarray, float]:
    """返回零空间基底（列）以及最小奇异值"""
    _, singular, vh = linalg.svd(liouvillean)
    threshold = rcond * singular[0] if singular[0] > 0 else rcond
    null_dim = int(np.sum(singular <= threshold))
    if null_dim == 0:
        logger.warning(
            f"没有低于阈值 {threshold:.3e} 的奇异值，取最小奇异值 {singular[-1]:.3e} 对应的向量"
        )
        null_dim = 1
    return vh[-null_dim:].conj().T, float(singular[-1])


def _spectral_gap(eigenvalues: np.ndarray, null_dim: int) -> float:
    by_magnitude = np.argsort(np.abs(eigenvalues))
    rest = eigenvalues[by_magnitude[null_dim:]]
    if rest.size == 0:
        return 0.0
    return max(0.0, float(-np.max(rest.real)))


def ness(
    model: QuadraticLindbladModel, liouvillean: Optional[SuperOp] = None
) -> NessResult:
    """
    通过稠密零空间求非平衡稳态

    零空间维数大于 1 时不做任何选择：返回全部零空间基底并给出警告。

    Args:
        model: 二次模型
        liouvillean: 已组装的 L̂，None 时重新组装

    Returns:
        稳态结果
    """
    settings = get_settings().numerics
    sys = model.sys
    started = time.perf_counter()
    generator = liouvillean if liouvillean is not None else assemble_liouvillean(model)

    basis, smallest = _null_space(generator, settings.eig_tolerance)
    null_dim = basis.shape[1]
    eigenvalues = liouvillean_spectrum(generator)
    gap = _spectral_gap(eigenvalues, null_dim)
    near_degenerate = gap < settings.near_degenerate_gap

    if null_dim > 1:
        logger.warning(f"稳态不唯一：零空间维数 {null_dim}，返回全部零空间基底")
        return NessResult(
            rho_ness=None,
            spectral_gap=gap,
            null_dim=null_dim,
            residual=smallest,
            near_degenerate=True,
            null_basis=[devec(basis[:, k]) for k in range(null_dim)],
            eigenvalues=eigenvalues,
        )

    rho = devec(basis[:, 0])
    trace = np.trace(rho)
    if abs(trace) < settings.tolerance:
        logger.warning(f"零模的迹 {abs(trace):.3e} 接近 0，无法归一化为密度算符")
        trace = 1.0
    rho = rho / trace
    hermiticity = float(np.max(np.abs(rho - rho.conj().T)))
    rho = 0.5 * (rho + rho.conj().T)
    residual = float(np.linalg.norm(generator @ vec(rho)))
    min_eigenvalue = float(np.min(linalg.eigvalsh(rho)))

    if near_degenerate:
        logger.warning(f"谱隙 {gap:.3e} 低于 {settings.near_degenerate_gap:.1e}，稳态接近简并")
    if min_eigenvalue < -1e-8:
        logger.warning(f"稳态最小本征值 {min_eigenvalue:.3e} 为负")
    logger.info(
        f"求解稳态 {sys.describe()}: 谱隙 {gap:.6g}，残差 {residual:.3e}，"
        f"耗时 {time.perf_counter() - started:.2f}s"
    )
    return NessResult(
        rho_ness=rho,
        spectral_gap=gap,
        null_dim=1,
        residual=residual,
        near_degenerate=near_degenerate,
        hermiticity_deviation=hermiticity,
        min_eigenvalue=min_eigenvalue,
        trace=complex(np.trace(rho)),
        eigenvalues=eigenvalues,
    )


def expectation(observable: HilbertOp, result: NessResult) -> complex:
    """
    tr(A·rho_ness)

    Raises:
        DegenerateSteadyStateError: 稳态不唯一
        DimensionMismatchError: 维度不匹配
    """
    if result.rho_ness is None:
        raise DegenerateSteadyStateError(
            f"稳态不唯一（零空间维数 {result.null_dim}），期望值没有定义",
            null_dim=result.null_dim,
        )
    return trace_pair(observable, result.rho_ness)


def random_quadratic_model(
    sys: ModeSystem,
    rng: np.random.Generator,
    n_lindblad: Optional[int] = None,
    scale: float = 1.0,
    pairing: bool = True,
) -> QuadraticLindbladModel:
    """
    随机二次模型，用于测试与基准

    Args:
        sys: 模式系统
        rng: 随机数生成器
        n_lindblad: 耗散通道数，默认 2n
        scale: 系数量级
        pairing: 是否包含配对项 H_pair
    """
    n = sys.n_modes

    def complex_normal(*shape: int) -> np.ndarray:
        return rng.normal(size=shape) + 1j * rng.normal(size=shape)

    hop = complex_normal(n, n)
    h_hop = scale * 0.5 * (hop + hop.conj().T)
    if pairing:
        pair = complex_normal(n, n)
        h_pair = scale * 0.5 * (pair - pair.T if sys.is_fermionic else pair + pair.T)
    else:
        h_pair = np.zeros((n, n), dtype=complex)
    count = 2 * n if n_lindblad is None else n_lindblad
    ops = [
        LindbladCoupling(u=scale * complex_normal(n), v=scale * complex_normal(n))
        for _ in range(count)
    ]
    return QuadraticLindbladModel(sys=sys, h_hop=h_hop, h_pair=h_pair, lindblad_ops=ops)


def model_from_channels(
    sys: ModeSystem,
    channels: Sequence[Tuple[str, int, float]],
    h_hop: Optional[np.ndarray] = None,
) -> QuadraticLindbladModel:
    """
    由 (kind, j, rate) 通道表构造模型：kind 为 "loss"（√rate a_j）或 "gain"（√rate a†_j）

    Raises:
        InvalidModelError: kind 未知或 rate 为负
    """
    n = sys.n_modes
    ops = []
    for kind, j, rate in channels:
        sys.check_mode(j)
        if rate < 0:
            raise InvalidModelError(f"耗散速率必须非负，收到 {rate}")
        if kind not in ("loss", "gain"):
            raise InvalidModelError(f"未知的耗散通道类型 {kind!r}")
        coupling = _unit_coupling(n, j, creation=(kind == "gain"))
        amplitude = np.sqrt(rate)
        ops.append(
            LindbladCoupling(u=amplitude * coupling.u, v=amplitude * coupling.v)
        )
    model = QuadraticLindbladModel.free(sys)
    if h_hop is not None:
        model.h_hop = np.asarray(h_hop, dtype=complex)
    model.lindblad_ops = ops
    return model
