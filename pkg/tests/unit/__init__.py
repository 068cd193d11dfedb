# K3 Lines - 单元测试包
# 包含各个计算模块和共享组件的单元测试

__version__ = "0.1.0"
