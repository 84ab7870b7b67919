"""
liouville-fock 测试包

包含所有单元测试和集成测试。
"""
