#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
战役配置模块

该模块提供搜索战役的配置模型，包括：
- 战役类型与各类型的默认阈值
- 模式全集与排除表
- 采集阈值
- 检查点与结果存储路径
- 预期结果断言

配置文件为 JSON，经 pydantic 校验后使用。

Author: K3 Lines Team
Date: 2024
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from k3lines.core.exceptions import ConfigError

CampaignKind = Literal["triangular", "smooth", "quadrangular", "pentagonal", "astral"]

# 各类型的默认值：线数阈值、束的最小大小、目标线数、是否展开第三个截线层
_KIND_DEFAULTS: Dict[str, Dict[str, Any]] = {
    "triangular": {"threshold": 52, "min_pencil_size": 14, "target_size": None, "run_third_section": False},
    "smooth": {"threshold": 48, "min_pencil_size": 15, "target_size": None, "run_third_section": True},
    "quadrangular": {"threshold": None, "min_pencil_size": 17, "target_size": 49, "run_third_section": False},
    "pentagonal": {"threshold": None, "min_pencil_size": 17, "target_size": 31, "run_third_section": False},
    "astral": {"threshold": None, "min_pencil_size": 18, "target_size": 28, "run_third_section": False},
}

# 不参与配置哈希的字段：只影响运行方式，不影响结果
_RUNTIME_FIELDS = {"workers", "checkpoint_path", "store_path", "campaign_id"}


class HarvestConfig(BaseModel):
    """饱和列表采集阈值：线数 ≥ min_lines 或例外除子数 ≥ min_exceptional"""

    min_lines: Optional[int] = Field(default=48, ge=0)
    min_exceptional: Optional[int] = Field(default=6, ge=0)


class QuadSeed(BaseModel):
    """四边形战役的起点 (p₁, q₁) = (|sec₁|, |sec*₁ ∖ sec₁|)"""

    p1: int = Field(ge=0, le=10)
    q1: int = Field(ge=0, le=8)


DEFAULT_QUAD_SEEDS = tuple(QuadSeed(p1=p, q1=q) for p, q in ((10, 0), (9, 1), (9, 0), (8, 2), (8, 1), (7, 3)))


class CampaignConfig(BaseModel):
    """一次搜索战役的完整配置"""

    kind: CampaignKind
    campaign_id: str = Field(default="default", description="战役标识，用于日志与报告")

    # ==================== 阈值 ====================
    threshold: Optional[int] = Field(default=None, description="被排除的线数下界")
    min_pencil_size: Optional[int] = Field(default=None, description="束模式的最小大小")
    target_size: Optional[int] = Field(default=None, description="girth 战役的目标图大小")

    # ==================== 模式全集 ====================
    max_pattern_size: int = Field(default=20, ge=1, le=30)
    valency_cap: int = Field(default=20, ge=3)
    exclusion_table: Optional[str] = Field(default=None, description="排除表路径，缺省用内置表")
    run_third_section: Optional[bool] = Field(
        default=None, description="是否展开第三个截线层 (fixed = {c₃})；光滑战役缺省展开"
    )

    # ==================== girth 战役 ====================
    seeds: Optional[List[QuadSeed]] = Field(default=None, description="四边形标准图起点；缺省为六个标准起点")
    seed_target_size: int = Field(default=37, ge=1, description="标准图 F ∪ sec*₁ 起点的目标大小")
    catalog_path: Optional[str] = None
    generated_pencil_size: int = Field(default=12, ge=1, le=14, description="无目录时 toy 配置生成束的大小上限")

    # ==================== 采集与存储 ====================
    harvest: HarvestConfig = Field(default_factory=HarvestConfig)
    checkpoint_path: Optional[str] = None
    store_path: Optional[str] = None

    # ==================== 运行 ====================
    workers: Optional[int] = Field(default=None, ge=1)
    toy: bool = Field(default=False, description="缩小规模的演示配置")
    max_support: Optional[int] = Field(default=None, ge=1)

    # ==================== 预期结果 ====================
    expected: Optional[Dict[str, Any]] = None
    assert_expected: bool = False

    @field_validator("campaign_id")
    @classmethod
    def validate_campaign_id(cls, v: str) -> str:
        if not v or any(c in v for c in "/\\ "):
            raise ValueError("campaign_id 不能为空且不能含有路径分隔符或空格")
        return v

    @model_validator(mode="after")
    def fill_kind_defaults(self) -> "CampaignConfig":
        for name, value in _KIND_DEFAULTS[self.kind].items():
            if getattr(self, name) is None and value is not None:
                setattr(self, name, value)
        if self.seeds is None:
            self.seeds = list(DEFAULT_QUAD_SEEDS) if self.kind == "quadrangular" else []
        if self.assert_expected and self.expected is None:
            raise ValueError("assert_expected 需要 expected")
        return self

    # ---------- 读写 ----------

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "CampaignConfig":
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"无法读取战役配置: {exc}", {"path": str(path)}) from exc
        return cls.from_dict(data, source=str(path))

    @classmethod
    def from_dict(cls, data: Dict[str, Any], source: str = "<dict>") -> "CampaignConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise ConfigError(
                "战役配置校验失败",
                {"source": source, "errors": exc.errors(include_url=False, include_context=False)},
            ) from exc

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def config_hash(self) -> str:
        """影响结果的字段的哈希，检查点据此拒绝不匹配的续跑"""
        relevant = {k: v for k, v in self.to_dict().items() if k not in _RUNTIME_FIELDS}
        payload = json.dumps(relevant, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    @property
    def smooth_mode(self) -> bool:
        return self.kind == "smooth"


__all__ = ["CampaignConfig", "CampaignKind", "HarvestConfig", "QuadSeed"]
