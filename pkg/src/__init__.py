"""
liouville-fock

开放量子系统的算符空间（Liouville 空间）Fock 表示：正则伴随映射、对偶 Fock 基、
二次 Lindblad 生成元的正规序形式与非平衡稳态。
"""

__version__ = "0.1.0"
