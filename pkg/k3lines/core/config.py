#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
运行时配置模块

该模块定义了 k3lines 的所有运行时配置项，包括：
- 日志配置
- 并行配置
- 判别群枚举上限
- 缓存配置
- 数据目录

Author: K3 Lines Team
Date: 2024
"""

from pathlib import Path
from typing import Any, Dict

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

_PACKAGE_DIR = Path(__file__).resolve().parent.parent


class K3LinesSettings(BaseSettings):
    """k3lines 运行时配置类"""

    model_config = SettingsConfigDict(
        env_file=".env",
        case_sensitive=True,
        validate_assignment=True,
        extra="ignore",
    )

    # ==================== 日志配置 ====================
    LOG_LEVEL: str = Field(default="INFO", description="日志级别")
    LOG_FORMAT: str = Field(default="console", description="日志格式 (console/json)")

    # ==================== 并行配置 ====================
    K3LINES_WORKERS: int = Field(default=1, description="并行工作进程数")

    # ==================== 计算配置 ====================
    K3LINES_KERNEL_BUDGET: int = Field(
        default=2048, description="几何核搜索中检验的迷向子群个数上限"
    )
    K3LINES_CACHE_SIZE: int = Field(default=200_000, description="判定缓存条目上限")

    # ==================== 数据配置 ====================
    K3LINES_DATA_DIR: str = Field(
        default=str(_PACKAGE_DIR / "data"), description="内置数据文件目录"
    )

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """验证日志级别"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"日志级别必须是: {valid_levels}")
        return v.upper()

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """验证日志格式"""
        if v not in ("console", "json"):
            raise ValueError("日志格式必须是 console 或 json")
        return v

    @field_validator("K3LINES_WORKERS", "K3LINES_KERNEL_BUDGET", "K3LINES_CACHE_SIZE")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        """验证正整数配置"""
        if v < 1:
            raise ValueError(f"配置值必须为正整数: {v}")
        return v

    def get_logging_config(self) -> Dict[str, Any]:
        """获取日志配置"""
        return {"level": self.LOG_LEVEL, "format": self.LOG_FORMAT}

    def get_compute_config(self) -> Dict[str, Any]:
        """获取计算配置"""
        return {
            "workers": self.K3LINES_WORKERS,
            "kernel_budget": self.K3LINES_KERNEL_BUDGET,
            "cache_size": self.K3LINES_CACHE_SIZE,
        }

    @property
    def data_dir(self) -> Path:
        return Path(self.K3LINES_DATA_DIR)


settings = K3LinesSettings()

__all__ = ["K3LinesSettings", "settings"]
