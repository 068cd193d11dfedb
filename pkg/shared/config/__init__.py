#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
共享配置模块

该模块包含命令行与各战役共享的配置模型。

Author: K3 Lines Team
Date: 2024
"""

from .campaign_config import CampaignConfig, CampaignKind, HarvestConfig, QuadSeed

__all__ = [
    "CampaignConfig",
    "CampaignKind",
    "HarvestConfig",
    "QuadSeed",
]
