#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
战役报告模块

报告分为两部分：
- header：战役标识、开始与结束时间、耗时
- body：按工作单元顺序合并的确定性结果（排除的集合、存活图、采集记录、节点数）

同一配置与代码版本下 body 逐字节相同；续跑从检查点恢复的片段与新计算的片段
合并方式相同。

Author: K3 Lines Team
Date: 2024
"""

import json
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Callable, Dict, List, Optional

from k3lines.admiss import SaturationRecord
from k3lines.checkpoint import CheckpointManager
from k3lines.core.exceptions import CampaignAssertionError
from k3lines.trig.extend import Harvester
from shared.utils.logger import get_logger

logger = get_logger(__name__)


def record_summary(record: SaturationRecord) -> Dict[str, Any]:
    return {
        "key": record.key,
        "line_count": record.line_count,
        "exceptional_count": record.exceptional_count,
        "kernel_order": record.kernel_order,
    }


def _sorted_records(records: Dict[str, Dict[str, Any]]) -> List[Dict[str, Any]]:
    return sorted(records.values(), key=lambda r: (-r["line_count"], -r["exceptional_count"], r["key"]))


@dataclass
class UnitFragment:
    """一个工作单元的结果片段，原样写入检查点"""

    unit: str
    ruled_out: List[Dict[str, Any]] = field(default_factory=list)
    unresolved: List[Dict[str, Any]] = field(default_factory=list)
    survivors: List[Dict[str, Any]] = field(default_factory=list)
    harvested: List[Dict[str, Any]] = field(default_factory=list)
    intermediate: List[Dict[str, Any]] = field(default_factory=list)
    nodes_evaluated: int = 0
    max_size: int = 0

    def to_json(self) -> Dict[str, Any]:
        return {
            "unit": self.unit,
            "ruled_out": self.ruled_out,
            "unresolved": self.unresolved,
            "survivors": self.survivors,
            "harvested": self.harvested,
            "intermediate": self.intermediate,
            "nodes_evaluated": self.nodes_evaluated,
            "max_size": self.max_size,
        }

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "UnitFragment":
        return cls(**data)


class CampaignReport:
    """战役报告

    Args:
        kind: 战役类型
        campaign_id: 战役标识
        config_hash: 配置哈希
    """

    def __init__(self, kind: str, campaign_id: str = "default", config_hash: str = ""):
        self.kind = kind
        self.campaign_id = campaign_id
        self.config_hash = config_hash
        self.fragments: List[UnitFragment] = []
        self.started_at = datetime.now(timezone.utc)
        self._clock = time.perf_counter()
        self.finished_at: Optional[datetime] = None
        self.wall_clock: Optional[float] = None
        self.resumed_units = 0

    def add(self, fragment: UnitFragment, resumed: bool = False) -> None:
        self.fragments.append(fragment)
        if resumed:
            self.resumed_units += 1

    def finish(self) -> "CampaignReport":
        self.finished_at = datetime.now(timezone.utc)
        self.wall_clock = time.perf_counter() - self._clock
        return self

    # ---------- 汇总 ----------

    @property
    def ruled_out(self) -> List[Dict[str, Any]]:
        return [entry for f in self.fragments for entry in f.ruled_out]

    @property
    def unresolved(self) -> List[Dict[str, Any]]:
        return [entry for f in self.fragments for entry in f.unresolved]

    @property
    def survivors(self) -> List[Dict[str, Any]]:
        return [entry for f in self.fragments for entry in f.survivors]

    @property
    def harvested(self) -> List[Dict[str, Any]]:
        merged: Dict[str, Dict[str, Any]] = {}
        for f in self.fragments:
            for record in f.harvested:
                merged.setdefault(record["key"], record)
        return _sorted_records(merged)

    @property
    def intermediate(self) -> List[Dict[str, Any]]:
        merged: Dict[str, Dict[str, Any]] = {}
        for f in self.fragments:
            for record in f.intermediate:
                merged.setdefault(record["key"], record)
        return _sorted_records(merged)

    @property
    def nodes_evaluated(self) -> int:
        return sum(f.nodes_evaluated for f in self.fragments)

    def summary(self) -> Dict[str, Any]:
        harvested = self.harvested
        return {
            "units": len(self.fragments),
            "ruled_out": len(self.ruled_out),
            "unresolved": len(self.unresolved),
            "survivors": len(self.survivors),
            "harvested": len(harvested),
            "intermediate": len(self.intermediate),
            "max_lines": max((r["line_count"] for r in harvested), default=0),
            "max_size": max((f.max_size for f in self.fragments), default=0),
            "all_ruled_out": not self.unresolved and not self.survivors,
        }

    def body(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "config_hash": self.config_hash,
            "summary": self.summary(),
            "ruled_out": self.ruled_out,
            "unresolved": self.unresolved,
            "survivors": self.survivors,
            "harvested": self.harvested,
            "intermediate": self.intermediate,
            "nodes_evaluated": self.nodes_evaluated,
            "units": [f.unit for f in self.fragments],
        }

    def header(self) -> Dict[str, Any]:
        return {
            "campaign_id": self.campaign_id,
            "started_at": self.started_at.isoformat(),
            "finished_at": self.finished_at.isoformat() if self.finished_at else None,
            "wall_clock_seconds": self.wall_clock,
            "resumed_units": self.resumed_units,
        }

    def to_json(self) -> Dict[str, Any]:
        return {"header": self.header(), "body": self.body()}

    def body_bytes(self) -> bytes:
        return json.dumps(self.body(), sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")

    # ---------- 预期结果 ----------

    def harvested_above(self, lines: int) -> int:
        return sum(1 for r in self.harvested if r["line_count"] > lines)

    def check_expected(self, expected: Optional[Dict[str, Any]]) -> List[str]:
        """比较 summary 与 expected，返回不符项

        expected 的键为 summary 中的字段，另外支持
        {"harvested_above": {"lines": L, "count": N}}。
        """
        if not expected:
            return []
        summary = self.summary()
        mismatches = []
        for name, value in sorted(expected.items()):
            if name == "harvested_above":
                actual = self.harvested_above(int(value["lines"]))
                if actual != int(value["count"]):
                    mismatches.append(f"harvested_above[{value['lines']}]: expected {value['count']}, got {actual}")
            elif name not in summary:
                mismatches.append(f"{name}: unknown summary field")
            elif summary[name] != value:
                mismatches.append(f"{name}: expected {value}, got {summary[name]}")
        return mismatches

    def assert_expected(self, expected: Optional[Dict[str, Any]]) -> None:
        mismatches = self.check_expected(expected)
        if mismatches:
            logger.error("campaign outcome differs from expectation", mismatches=mismatches)
            raise CampaignAssertionError(
                "战役结果与预期不符", {"kind": self.kind, "mismatches": mismatches}
            )


# ==================== 工作单元 ====================


class UnitRunner:
    """按单元推进战役：已完成的单元从检查点恢复，新单元完成后立即写入检查点

    Args:
        report: 汇总报告
        checkpoint: 检查点管理器
        harvester: 采集器，每个单元开始时重置单元记录
        counter: 返回累计检验节点数的函数
    """

    def __init__(
        self,
        report: CampaignReport,
        checkpoint: CheckpointManager,
        harvester: Harvester,
        counter: Callable[[], int],
    ):
        self.report = report
        self.checkpoint = checkpoint
        self.harvester = harvester
        self.counter = counter

    def run(self, unit: str, work: Callable[[UnitFragment], None]) -> UnitFragment:
        if self.checkpoint.is_done(unit):
            fragment = UnitFragment.from_json(self.checkpoint.fragment(unit))
            self.report.add(fragment, resumed=True)
            logger.debug("unit restored from checkpoint", unit=unit)
            return fragment
        self.harvester.begin_unit()
        start = self.counter()
        fragment = UnitFragment(unit)
        work(fragment)
        fragment.nodes_evaluated = self.counter() - start
        fragment.harvested = [record_summary(r) for r in self.harvester.sorted_records(self.harvester.unit_keys)]
        fragment.intermediate = [
            record_summary(r) for r in self.harvester.sorted_intermediate(self.harvester.unit_intermediate)
        ]
        self.checkpoint.complete(unit, fragment.to_json())
        self.report.add(fragment)
        logger.info(
            "unit finished",
            unit=unit,
            ruled_out=len(fragment.ruled_out),
            unresolved=len(fragment.unresolved),
            harvested=len(fragment.harvested),
            nodes=fragment.nodes_evaluated,
        )
        return fragment


__all__ = ["CampaignReport", "UnitFragment", "UnitRunner", "record_summary"]
