"""核心基础设施：配置、异常、并行执行"""
