"""
CLI 输入文件的 pydantic 模型

复数写成 [re, im]（也接受单个实数），矩阵为行优先嵌套数组。
校验错误信息中带有出错字段的路径。
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from ..core.exceptions import LiouvilleFockError
from ..core.fock_space import (
    ModeSystem,
    Statistics,
    annihilation_op,
    creation_op,
    identity_op,
    number_op,
)
from ..core.lindblad import LindbladCoupling, QuadraticLindbladModel
from ..utils.serialization import pair_to_complex

ComplexValue = Any
ComplexRows = List[List[ComplexValue]]


class InputFileError(LiouvilleFockError, ValueError):
    """输入文件无法解析或不符合格式"""


def _complex_scalar(value: ComplexValue, name: str) -> complex:
    try:
        number = pair_to_complex(value)
    except (TypeError, ValueError) as e:
        raise ValueError(f"{name}: {e}") from e
    if not np.isfinite(number):
        raise ValueError(f"{name}: 必须是有限数，收到 {value!r}")
    return number


def _complex_vector(values: List[ComplexValue], name: str) -> np.ndarray:
    return np.array(
        [_complex_scalar(v, f"{name}[{i}]") for i, v in enumerate(values)],
        dtype=complex,
    )


def _complex_matrix(rows: ComplexRows, name: str) -> np.ndarray:
    matrix = [_complex_vector(row, f"{name}[{r}]") for r, row in enumerate(rows)]
    lengths = {len(row) for row in matrix}
    if len(lengths) > 1:
        raise ValueError(f"{name} 的各行长度不一致: {sorted(lengths)}")
    if not matrix:
        return np.zeros((0, 0), dtype=complex)
    return np.vstack(matrix)


class LindbladOpSpec(BaseModel):
    """单个 Lindblad 算符 L = Σ (u_j a_j + v_j a†_j)"""
    model_config = ConfigDict(extra="forbid")

    u: List[ComplexValue]
    v: List[ComplexValue]

    @field_validator("u", "v")
    @classmethod
    def _check_entries(cls, values: List[ComplexValue]) -> List[ComplexValue]:
        _complex_vector(values, "entry")
        return values


class ModelFile(BaseModel):
    """模型文件 {statistics, n_modes, cutoff?, H_hop, H_pair?, lindblad_ops}"""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    statistics: Statistics
    n_modes: int = Field(ge=1)
    cutoff: Optional[int] = None
    h_hop: ComplexRows = Field(alias="H_hop")
    h_pair: Optional[ComplexRows] = Field(default=None, alias="H_pair")
    lindblad_ops: List[LindbladOpSpec] = Field(default_factory=list)

    @field_validator("h_hop", "h_pair")
    @classmethod
    def _check_matrix(cls, rows: Optional[ComplexRows]) -> Optional[ComplexRows]:
        if rows is not None:
            _complex_matrix(rows, "matrix")
        return rows

    @model_validator(mode="after")
    def _check_shapes(self) -> "ModelFile":
        n = self.n_modes
        if self.statistics == Statistics.BOSONIC and self.cutoff is None:
            raise ValueError("bosonic 模型必须给出 cutoff")
        hop = _complex_matrix(self.h_hop, "H_hop")
        if hop.shape != (n, n):
            raise ValueError(f"H_hop 的形状必须是 ({n}, {n})，实际 {hop.shape}")
        if self.h_pair is not None:
            pair = _complex_matrix(self.h_pair, "H_pair")
            if pair.shape != (n, n):
                raise ValueError(f"H_pair 的形状必须是 ({n}, {n})，实际 {pair.shape}")
        for mu, op in enumerate(self.lindblad_ops):
            if len(op.u) != n or len(op.v) != n:
                raise ValueError(f"lindblad_ops[{mu}] 的 u、v 长度必须为 {n}")
        return self

    def mode_system(self) -> ModeSystem:
        if self.statistics == Statistics.FERMIONIC:
            return ModeSystem.fermionic(self.n_modes)
        return ModeSystem.bosonic(self.n_modes, int(self.cutoff or 0))

    def to_model(self) -> QuadraticLindbladModel:
        """
        转换为 QuadraticLindbladModel 并校验模型约束

        Raises:
            InvalidModelError: 厄米性或对称性不满足
        """
        sys = self.mode_system()
        n = self.n_modes
        h_pair = (
            _complex_matrix(self.h_pair, "H_pair")
            if self.h_pair is not None
            else np.zeros((n, n), dtype=complex)
        )
        model = QuadraticLindbladModel(
            sys=sys,
            h_hop=_complex_matrix(self.h_hop, "H_hop"),
            h_pair=h_pair,
            lindblad_ops=[
                LindbladCoupling(
                    u=_complex_vector(op.u, "u"), v=_complex_vector(op.v, "v")
                )
                for op in self.lindblad_ops
            ],
        )
        model.validate()
        return model


class ObservableTerm(BaseModel):
    """coeff · op_1 op_2 …"""
    model_config = ConfigDict(extra="forbid")

    coeff: ComplexValue = 1.0
    ops: List[str] = Field(default_factory=list)

    @field_validator("coeff")
    @classmethod
    def _check_coeff(cls, value: ComplexValue) -> ComplexValue:
        _complex_scalar(value, "coeff")
        return value


class ObservableSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    terms: List[ObservableTerm] = Field(min_length=1)


_TOKEN = re.compile(r"^(adag|cdag|a|c|n)(\d+)$")


def _token_op(sys: ModeSystem, token: str) -> np.ndarray:
    """把 a<j>/adag<j>/c<j>/cdag<j>/n<j>/N/I 解析为 Hilbert 空间算符"""
    if token == "I":
        return identity_op(sys)
    if token == "N":
        return number_op(sys)
    match = _TOKEN.match(token)
    if not match:
        raise InputFileError(f"无法识别的算符记号 {token!r}")
    kind, index = match.group(1), int(match.group(2))
    if kind in ("a", "adag") and sys.is_fermionic:
        raise InputFileError(f"费米系统请使用 c{index}/cdag{index}，收到 {token!r}")
    if kind in ("c", "cdag") and not sys.is_fermionic:
        raise InputFileError(f"玻色系统请使用 a{index}/adag{index}，收到 {token!r}")
    if kind == "n":
        return number_op(sys, index)
    if kind in ("a", "c"):
        return annihilation_op(sys, index)
    return creation_op(sys, index)


def build_observables(
    sys: ModeSystem, specs: Dict[str, ObservableSpec]
) -> Dict[str, np.ndarray]:
    """把可观测量规格组装成 {名称: 矩阵}"""
    observables: Dict[str, np.ndarray] = {}
    for name, spec in specs.items():
        total = np.zeros((sys.dim, sys.dim), dtype=complex)
        for term in spec.terms:
            product = identity_op(sys)
            for token in term.ops:
                product = product @ _token_op(sys, token)
            total = total + pair_to_complex(term.coeff) * product
        observables[name] = total
    return observables


def read_json(path: Path) -> Tuple[Any, str]:
    """
    读取 JSON 文件

    Returns:
        (解析结果, 原始文本)

    Raises:
        InputFileError: 文件不存在或 JSON 语法错误（信息中带行列位置）
    """
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputFileError(f"无法读取 {path}: {e}") from e
    try:
        return json.loads(text), text
    except json.JSONDecodeError as e:
        raise InputFileError(
            f"{path}: JSON 解析失败，第 {e.lineno} 行第 {e.colno} 列: {e.msg}"
        ) from e


def format_validation_error(error: ValidationError, source: str) -> str:
    """pydantic 错误 → 每个出错字段一行"""
    lines = [f"{source} 格式错误:"]
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"  {location}: {item['msg']}")
    return "\n".join(lines)


def load_model_file(path: Path) -> Tuple[ModelFile, Any]:
    """
    读取并校验模型文件

    Returns:
        (ModelFile, 解析后的原始 JSON)

    Raises:
        InputFileError: 解析或校验失败
    """
    data, _ = read_json(path)
    try:
        return ModelFile.model_validate(data), data
    except ValidationError as e:
        raise InputFileError(format_validation_error(e, str(path))) from e


def load_observables_file(path: Path) -> Tuple[Dict[str, ObservableSpec], Any]:
    data, _ = read_json(path)
    if not isinstance(data, dict):
        raise InputFileError(f"{path}: 顶层必须是 {{名称: {{terms: [...]}}}} 映射")
    specs: Dict[str, ObservableSpec] = {}
    for name, raw in data.items():
        try:
            specs[name] = ObservableSpec.model_validate(raw)
        except ValidationError as e:
            raise InputFileError(format_validation_error(e, f"{path} 中的 {name}")) from e
    return specs, data
