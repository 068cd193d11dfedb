#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
共享工具模块

Author: K3 Lines Team
Date: 2024
"""

from .logger import configure_logging, get_logger

__all__ = ["configure_logging", "get_logger"]
