# K3 Lines - 性能测试包
# 包含格运算与搜索组件的耗时基准

__version__ = "0.1.0"
__author__ = "K3 Lines Team"
