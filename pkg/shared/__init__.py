#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
共享模块

该模块包含 k3lines 各子系统共享的配置和工具函数。

Author: K3 Lines Team
Date: 2024
"""

__version__ = "0.1.0"
__author__ = "K3 Lines Team"
