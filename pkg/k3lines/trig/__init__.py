#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
三角纤维搜索

- patterns：Δ-集合模式、模式全集、相容集合与排除表
- extend：多截线扩张、采集器
- driver：多模式分层驱动与逐截线排除
- campaign：奇异与光滑两种三角纤维战役

子模块按需导入（report 依赖 extend，campaign 依赖 report）。

Author: K3 Lines Team
Date: 2024
"""
