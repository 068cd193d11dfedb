# K3 Lines - 测试包
# 包含单元测试、集成测试与性能测试

__version__ = "0.1.0"
__author__ = "K3 Lines Team"
