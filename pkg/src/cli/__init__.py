"""
liouville-fock CLI 工具

提供命令行界面：代数校验、对偶基导出、非平衡稳态与谱。
"""

from rich.traceback import install

from .commands import app

# 安装Rich的异常处理
install(show_locals=False)

# 导出主应用
__all__ = ["app"]
