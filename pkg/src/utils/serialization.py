"""
JSON 序列化辅助

复数统一编码为 [re, im]，矩阵为行优先的嵌套数组。
"""

from typing import Any, List, Sequence, Union

import numpy as np

ComplexPair = List[float]


def complex_to_pair(value: complex) -> ComplexPair:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def pair_to_complex(pair: Union[Sequence[float], float, int]) -> complex:
    """[re, im] → complex；也接受单个实数"""
    if isinstance(pair, (int, float)):
        return complex(pair)
    if len(pair) != 2:
        raise ValueError(f"复数必须写成 [re, im]，收到 {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def array_to_json(array: np.ndarray) -> Any:
    """任意维复数组 → 嵌套的 [re, im] 列表"""
    array = np.asarray(array, dtype=complex)
    stacked = np.stack([array.real, array.imag], axis=-1)
    return stacked.tolist()

