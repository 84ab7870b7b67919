"""
测试公共夹具
"""

import logging

import numpy as np
import pytest

from src.utils.config import reset_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    """每个测试使用重新加载的全局配置"""
    reset_settings()
    yield
    reset_settings()
    # CLI 测试会为包 logger 安装处理器并关闭传播
    package_logger = logging.getLogger("src")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)


@pytest.fixture
def rng():
    """固定种子的随机数生成器"""
    return np.random.default_rng(20240611)


def random_density_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    """随机满秩密度矩阵"""
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = x @ x.conj().T
    return rho / np.trace(rho)


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    x = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (x + x.conj().T)
