# K3 Lines - 集成测试包
# 以缩小规模运行完整战役与命令行入口

__version__ = "0.1.0"
__author__ = "K3 Lines Team"
