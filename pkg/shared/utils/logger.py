#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
日志工具模块

基于 structlog 的统一日志入口：
- configure_logging(): 安装处理器链（控制台或 JSON 输出）
- get_logger(): 各模块获取带名称的日志记录器

Author: K3 Lines Team
Date: 2024
"""

import logging
import sys
from typing import Any, Optional

import structlog

_CONFIGURED = False


def configure_logging(level: str = "INFO", fmt: str = "console") -> None:
    """配置 structlog 与标准库 logging

    Args:
        level: 日志级别名称
        fmt: "console" 或 "json"
    """
    global _CONFIGURED

    numeric_level = logging.getLevelName(level.upper())
    if not isinstance(numeric_level, int):
        numeric_level = logging.INFO

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=numeric_level,
        force=True,
    )

    renderer: Any
    if fmt == "json":
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.add_log_level,
            structlog.stdlib.add_logger_name,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )
    _CONFIGURED = True


def get_logger(name: Optional[str] = None) -> Any:
    """获取日志记录器，首次调用时按环境配置初始化"""
    if not _CONFIGURED:
        from k3lines.core.config import settings

        configure_logging(settings.LOG_LEVEL, settings.LOG_FORMAT)
    return structlog.get_logger(name)


__all__ = ["configure_logging", "get_logger"]
