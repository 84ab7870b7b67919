"""
异常定义

所有库内异常都继承自 LiouvilleFockError，CLI 据此区分输入错误与数值失败。
"""

from typing import Optional


class LiouvilleFockError(Exception):
    """liouville-fock 异常基类"""


class ModeIndexError(LiouvilleFockError, IndexError):
    """模式编号超出 1..n 范围"""


class DimensionMismatchError(LiouvilleFockError, ValueError):
    """矩阵维度不匹配"""


class StatisticsMismatchError(LiouvilleFockError, ValueError):
    """粒子统计类型不匹配（玻色/费米）"""


class InvalidModeSystemError(LiouvilleFockError, ValueError):
    """模式系统参数无效"""


class TruncationMarginError(LiouvilleFockError, ValueError):
    """玻色基矢的占据数上界超出安全截断余量"""


class InvalidModelError(LiouvilleFockError, ValueError):
    """二次 Lindblad 模型不满足约束"""


class ThirdQuantizationError(LiouvilleFockError):
    """二次型重构残差超出容差"""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class DegenerateSteadyStateError(LiouvilleFockError):
    """稳态不唯一（零模简并）"""

    def __init__(self, message: str, null_dim: int):
        super().__init__(message)
        self.null_dim = null_dim


class ConfigError(LiouvilleFockError):
    """配置文件无法读取或解析"""

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message)
        self.path = path
