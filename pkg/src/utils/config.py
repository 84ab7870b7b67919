"""
配置加载

读取包内默认配置 default_config.yaml，再把用户配置文件（默认 .liouville-fock.yaml）
深度合并到其上，最后应用环境变量 LIOUVILLE_FOCK_THREADS 对线程数的限制。
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ..core.exceptions import ConfigError

logger = logging.getLogger(__name__)

PACKAGE_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_CONFIG_PATH = PACKAGE_ROOT / "config" / "default_config.yaml"
USER_CONFIG_NAME = ".liouville-fock.yaml"
THREADS_ENV_VAR = "LIOUVILLE_FOCK_THREADS"


@dataclass(frozen=True)
class NumericsSettings:
    """数值配置"""
    tolerance: float = 1e-10
    eig_tolerance: float = 1e-10
    near_degenerate_gap: float = 1e-8
    max_superop_dim: int = 4096


@dataclass(frozen=True)
class BasisSettings:
    """对偶基配置"""
    default_max_index: int = 1
    truncation_margin: int = 2


@dataclass(frozen=True)
class LoggingSettings:
    """日志配置"""
    level: str = "WARNING"
    format: str = "text"


@dataclass(frozen=True)
class PerformanceSettings:
    """性能配置"""
    max_workers: int = 4


@dataclass(frozen=True)
class ReportSettings:
    """报告配置"""
    spectrum_head: int = 8


@dataclass(frozen=True)
class Settings:
    """全部配置"""
    numerics: NumericsSettings = NumericsSettings()
    basis: BasisSettings = BasisSettings()
    logging: LoggingSettings = LoggingSettings()
    performance: PerformanceSettings = PerformanceSettings()
    report: ReportSettings = ReportSettings()


_SECTIONS = {
    "numerics": NumericsSettings,
    "basis": BasisSettings,
    "logging": LoggingSettings,
    "performance": PerformanceSettings,
    "report": ReportSettings,
}


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"无法读取配置文件 {path}: {e}", path=str(path)) from e
    except yaml.YAMLError as e:
        raise ConfigError(f"配置文件 {path} 不是合法的 YAML: {e}", path=str(path)) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"配置文件 {path} 的顶层必须是映射", path=str(path))
    return data


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _build_section(name: str, values: Dict[str, Any]) -> Any:
    section_cls = _SECTIONS[name]
    known = set(section_cls.__dataclass_fields__)
    unknown = set(values) - known
    if unknown:
        logger.warning(f"忽略未知配置项 {name}.{', '.join(sorted(unknown))}")
    defaults = section_cls()
    kwargs = {}
    for key in known & set(values):
        expected = type(getattr(defaults, key))
        try:
            kwargs[key] = expected(values[key])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"配置项 {name}.{key} 的值 {values[key]!r} 无效: {e}") from e
    return section_cls(**kwargs)


def _threads_cap() -> Optional[int]:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"{THREADS_ENV_VAR}={raw!r} 不是整数，已忽略")
        return None
    if value < 1:
        logger.warning(f"{THREADS_ENV_VAR}={value} 必须为正整数，已忽略")
        return None
    return value


def load_settings(path: Optional[str] = None) -> Settings:
    """
    加载配置

    Args:
        path: 用户配置文件路径；None 时查找当前目录下的 .liouville-fock.yaml

    Returns:
        合并后的配置

    Raises:
        ConfigError: 配置文件无法读取或格式错误
    """
    data = _read_yaml(DEFAULT_CONFIG_PATH)
    user_path = Path(path) if path else Path.cwd() / USER_CONFIG_NAME
    if path and not user_path.exists():
        raise ConfigError(f"配置文件不存在: {user_path}", path=str(user_path))
    if user_path.exists():
        logger.debug(f"加载用户配置: {user_path}")
        data = _deep_merge(data, _read_yaml(user_path))

    for name in set(data) - set(_SECTIONS):
        logger.warning(f"忽略未知配置段 {name}")

    sections = {
        name: _build_section(name, data.get(name) or {}) for name in _SECTIONS
    }
    cap = _threads_cap()
    if cap is not None and cap < sections["performance"].max_workers:
        sections["performance"] = PerformanceSettings(max_workers=cap)
    return Settings(**sections)


# 全局配置实例
_global_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """获取全局配置实例"""
    global _global_settings
    if _global_settings is None:
        _global_settings = load_settings()
    return _global_settings


def set_settings(settings: Settings) -> None:
    """设置全局配置实例"""
    global _global_settings
    _global_settings = settings


def reset_settings() -> None:
    """清除全局配置，下次访问时重新加载"""
    global _global_settings
    _global_settings = None
