#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
异常定义模块

k3lines 的全部异常类型。每个异常携带 details 字典，
以及命令行使用的退出码（2 为校验错误，3 为战役断言失败）。

Author: K3 Lines Team
Date: 2024
"""

from typing import Any, Dict, Optional


class K3LinesError(Exception):
    """k3lines 基础异常"""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


# ==================== 格与二次型 ====================


class LatticeError(K3LinesError):
    """格构造或运算错误"""

    exit_code = 2


class DegenerateLatticeError(LatticeError):
    """格退化（行列式为零）"""


class NotNegativeDefiniteError(LatticeError):
    """要求负定格"""


class NotHyperbolicError(LatticeError):
    """格不是双曲的（σ₊ ≠ 1）"""


class NotIsotropicError(LatticeError):
    """子群不是迷向的"""


class UndecidedError(LatticeError):
    """局部判据无法给出结论"""


# ==================== 图 ====================


class GraphError(K3LinesError):
    """配置图错误"""

    exit_code = 2


class NotParabolicError(GraphError):
    """纤维不是抛物型"""


class PatternError(GraphError):
    """Δ-集合包含不允许的连通分支"""


class PreconditionError(K3LinesError):
    """操作前置条件不满足"""

    exit_code = 2


# ==================== 可容许性 ====================


class ChamberError(K3LinesError):
    """无法选出相容的 Weyl 室"""


class NotExtensibleError(K3LinesError):
    """存在分离根，(Γ, K) 不可扩展"""


class _WitnessError(K3LinesError):
    """携带见证图的错误"""

    exit_code = 3

    def __init__(
        self,
        message: str,
        witness: Optional[Dict[str, Any]] = None,
        details: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(message, details)
        self.witness = witness
        if witness is not None:
            self.details.setdefault("witness", witness)


class LemmaViolationError(_WitnessError):
    """三角形引理在可接受图上被违反"""


class BoundViolationError(_WitnessError):
    """界常数被反例打破"""


# ==================== 数据与运行 ====================


class CatalogValidationError(K3LinesError):
    """束目录记录校验失败"""

    exit_code = 2


class ConfigError(K3LinesError):
    """配置错误"""

    exit_code = 2


class CheckpointVersionError(K3LinesError):
    """检查点版本或配置不匹配"""

    exit_code = 2


class CampaignAssertionError(K3LinesError):
    """战役结果与预期不符"""

    exit_code = 3


__all__ = [
    "K3LinesError",
    "LatticeError",
    "DegenerateLatticeError",
    "NotNegativeDefiniteError",
    "NotHyperbolicError",
    "NotIsotropicError",
    "UndecidedError",
    "GraphError",
    "NotParabolicError",
    "PatternError",
    "PreconditionError",
    "ChamberError",
    "NotExtensibleError",
    "LemmaViolationError",
    "BoundViolationError",
    "CatalogValidationError",
    "ConfigError",
    "CheckpointVersionError",
    "CampaignAssertionError",
]
