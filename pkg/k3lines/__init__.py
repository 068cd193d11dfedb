#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
k3lines

K3 四次曲面上直线配置的格论分类工具：
- 整格精确运算与判别形式
- 配置图的 Fano 格与可容许性测试
- 三角形、四边形、五边形与星形搜索战役

Author: K3 Lines Team
Date: 2024
"""

__version__ = "0.1.0"
__author__ = "K3 Lines Team"
