#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
战役检查点模块

战役按工作单元推进，每完成一个单元就把单元标识与其结果片段写入检查点。
写入采用临时文件加 os.replace，进程中断时检查点要么是旧版本要么是新版本。
续跑时跳过已完成的单元；版本号或配置哈希不匹配时拒绝续跑。

Author: K3 Lines Team
Date: 2024
"""

import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError

from k3lines.core.exceptions import CheckpointVersionError, ConfigError
from shared.utils.logger import get_logger

logger = get_logger(__name__)

CHECKPOINT_VERSION = 1


class Checkpoint(BaseModel):
    """已完成的工作单元及其结果片段"""

    version: int = CHECKPOINT_VERSION
    config_hash: str
    campaign_id: str = "default"
    completed: List[str] = Field(default_factory=list)
    fragments: Dict[str, Any] = Field(default_factory=dict)
    updated_at: Optional[str] = None

    def is_done(self, unit: str) -> bool:
        return unit in self.fragments

    def record(self, unit: str, fragment: Any) -> None:
        if unit not in self.fragments:
            self.completed.append(unit)
        self.fragments[unit] = fragment


class CheckpointManager:
    """检查点文件的读写

    Args:
        path: 检查点路径；None 表示不落盘，只在内存中记录
        config_hash: 当前配置的哈希
        campaign_id: 战役标识
    """

    def __init__(self, path: Optional[Union[str, Path]], config_hash: str, campaign_id: str = "default"):
        self.path = Path(path) if path is not None else None
        self.config_hash = config_hash
        self.campaign_id = campaign_id
        self.state = Checkpoint(config_hash=config_hash, campaign_id=campaign_id)

    def load(self, resume: bool = True) -> Checkpoint:
        """读取已有检查点；resume 为假或文件不存在时从头开始"""
        if self.path is None or not resume or not self.path.exists():
            return self.state
        try:
            data = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"无法读取检查点: {exc}", {"path": str(self.path)}) from exc
        if data.get("version") != CHECKPOINT_VERSION:
            raise CheckpointVersionError(
                "检查点版本不匹配",
                {"path": str(self.path), "found": data.get("version"), "expected": CHECKPOINT_VERSION},
            )
        try:
            state = Checkpoint.model_validate(data)
        except ValidationError as exc:
            raise CheckpointVersionError(
                "检查点格式错误", {"path": str(self.path), "errors": exc.errors(include_url=False)}
            ) from exc
        if state.config_hash != self.config_hash:
            raise CheckpointVersionError(
                "检查点属于另一份配置",
                {"path": str(self.path), "found": state.config_hash, "expected": self.config_hash},
            )
        self.state = state
        logger.info("checkpoint loaded", path=str(self.path), completed=len(state.completed))
        return state

    def is_done(self, unit: str) -> bool:
        return self.state.is_done(unit)

    def fragment(self, unit: str) -> Any:
        return self.state.fragments.get(unit)

    def complete(self, unit: str, fragment: Any) -> None:
        """记录一个完成的单元并立即落盘"""
        self.state.record(unit, fragment)
        self.save()

    def save(self) -> None:
        if self.path is None:
            return
        self.state.updated_at = datetime.now(timezone.utc).isoformat()
        payload = self.state.model_dump_json(indent=2)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=self.path.name, suffix=".tmp", dir=self.path.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(payload)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(tmp_name, self.path)
        except OSError:
            if os.path.exists(tmp_name):
                os.unlink(tmp_name)
            raise
        logger.debug("checkpoint saved", path=str(self.path), completed=len(self.state.completed))


__all__ = ["Checkpoint", "CheckpointManager", "CHECKPOINT_VERSION"]
