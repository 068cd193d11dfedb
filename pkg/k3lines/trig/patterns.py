#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
模式演算模块

三角纤维搜索使用的模式 (ã₂, a₃, a₂, a₁) 运算：
- pattern_less()：先比较大小，同大小时按逆字典序
- perturbation_leq()：初等扰动 δ 生成的偏序
- is_induced_subpattern()：扰动加删除分支，即诱导子 Δ-集合关系
- pattern_rank()：束与截线集合的秩公式
- CompatibleCollection：相容条件 (c1)–(c3) 及光滑情形的带撇版本
- build_universes()：次几何束与 Δ-集合的模式全集
- ExclusionTable：Pencils⁻ 的手工排除表（随包发布的数据文件）

Author: K3 Lines Team
Date: 2024
"""

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from k3lines.admiss import BatteryMode, test_battery
from k3lines.core.config import settings
from k3lines.core.exceptions import ConfigError, PatternError, PreconditionError
from k3lines.core.executor import parallel_map
from k3lines.fano import ConfigGraph, Pattern
from shared.utils.logger import get_logger

logger = get_logger(__name__)

Quadruple = Tuple[int, int, int, int]

PERTURBATIONS: Tuple[Quadruple, ...] = (
    (0, 0, -1, 1),
    (0, -1, 1, 0),
    (0, -1, 0, 2),
    (-1, 0, 1, 0),
)
_REMOVALS: Tuple[Quadruple, ...] = (
    (-1, 0, 0, 0),
    (0, -1, 0, 0),
    (0, 0, -1, 0),
    (0, 0, 0, -1),
)

PENCIL = "pencil"
SECTIONS = "sections"

SINGULAR_THRESHOLD = 52
SMOOTH_THRESHOLD = 48
DEFAULT_VALENCY_CAP = 20


# ==================== 序关系 ====================


def pattern_less(a: Pattern, b: Pattern) -> bool:
    """a ≺ b：|a| < |b|，或 |a| = |b| 且 a 的四元组字典序更大"""
    if a.size != b.size:
        return a.size < b.size
    return a.quadruple > b.quadruple


def pattern_leq(a: Pattern, b: Pattern) -> bool:
    return a == b or pattern_less(a, b)


def _reachable(target: Quadruple, start: Quadruple, moves: Tuple[Quadruple, ...]) -> bool:
    # 每一步都使大小减一，可达集有限
    if target == start:
        return True
    target_size = Pattern(*target).size
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for delta in moves:
            nxt = tuple(c + d for c, d in zip(current, delta))
            if min(nxt) < 0 or nxt in seen:
                continue
            if nxt == target:
                return True
            if Pattern(*nxt).size > target_size:
                seen.add(nxt)  # type: ignore[arg-type]
                queue.append(nxt)  # type: ignore[arg-type]
    return False


@lru_cache(maxsize=65536)
def _perturbation_leq(a: Quadruple, b: Quadruple) -> bool:
    if a[0] > b[0] or Pattern(*a).size > Pattern(*b).size:
        return False
    return _reachable(a, b, PERTURBATIONS)


@lru_cache(maxsize=65536)
def _subpattern_leq(a: Quadruple, b: Quadruple) -> bool:
    if a[0] > b[0] or Pattern(*a).size > Pattern(*b).size:
        return False
    return _reachable(a, b, PERTURBATIONS + _REMOVALS)


def perturbation_leq(a: Pattern, b: Pattern) -> bool:
    """a 可由 b 经有限次初等扰动得到"""
    return _perturbation_leq(a.quadruple, b.quadruple)


def is_induced_subpattern(a: Pattern, b: Pattern) -> bool:
    """模式 b 的某个 Δ-集合包含模式 a 的诱导子集合"""
    return _subpattern_leq(a.quadruple, b.quadruple)


def pattern_rank(pattern: Pattern, context: str = PENCIL) -> int:
    """束：|P| − ã₂ + 2；三角形的截线集合 Ã₂ ∪ᵢ σ：|σ| − ã₂ + 4"""
    if context == PENCIL:
        return pattern.size - pattern.t2 + 2
    if context == SECTIONS:
        return pattern.size - pattern.t2 + 4
    raise PatternError(f"未知的秩上下文: {context}")


def patterns_of_size(size: int) -> Iterator[Pattern]:
    for t2 in range(size // 3 + 1):
        for a3 in range((size - 3 * t2) // 3 + 1):
            rest = size - 3 * t2 - 3 * a3
            for a2 in range(rest // 2 + 1):
                yield Pattern(t2, a3, a2, rest - 2 * a2)


# ==================== 实现图 ====================


def triangle_union(sections: Pattern, edge: int = 1) -> ConfigGraph:
    """Ã₂ ∪ᵢ σ：三角形 (c₁, c₂, c₃) 为顶点 0, 1, 2，σ 的每个顶点与 cᵢ 相连"""
    if edge not in (1, 2, 3):
        raise PatternError("三角形的边编号必须为 1, 2, 3", {"edge": edge})
    graph = ConfigGraph.cycle(3).disjoint_union(sections.graph())
    adj = [list(row) for row in graph.adj]
    c = edge - 1
    for v in range(3, graph.n):
        adj[v][c] = adj[c][v] = 1
    return ConfigGraph(graph.n, tuple(tuple(r) for r in adj))


def pencil_graph(pencil: Pattern) -> ConfigGraph:
    """束模式的标准实现，首个三角形 (0, 1, 2) 作为纤维"""
    if pencil.t2 < 1:
        raise PatternError("束必须包含 Ã₂ 纤维", {"pattern": pencil.to_json()})
    return pencil.graph()


def complete_three_section(graph: ConfigGraph, fiber: Sequence[int] = (0, 1, 2)) -> ConfigGraph:
    """光滑情形：添加唯一的三重截线 c₀ = h − c₁ − c₂ − c₃

    c₀·v = h·v − Σ cᵢ·v，对纤维的边取 1。
    """
    mults: Dict[int, int] = {}
    for v in range(graph.n):
        if v in fiber:
            value = 1
        else:
            value = graph.color(v) - sum(graph.adj[v][c] for c in fiber)
        if value < 0:
            raise PreconditionError(
                "顶点与纤维的交数超出三重截线的允许范围", {"vertex": v, "value": value}
            )
        if value:
            mults[v] = value
    return graph.add_vertex(mults)


# ==================== 相容集合 ====================


@dataclass(frozen=True)
class CompatibleCollection:
    """π ⋔ σ₁ ⋔ … ⋔ σₙ，n ≤ 3"""

    pencil: Pattern
    sections: Tuple[Pattern, ...] = ()
    threshold: int = SINGULAR_THRESHOLD
    smooth: bool = False

    def __post_init__(self) -> None:
        if self.pencil.t2 < 1:
            raise PatternError("束模式必须含 ã₂ ≥ 1", {"pattern": self.pencil.to_json()})
        if len(self.sections) > 3:
            raise PatternError("至多三个截线模式", {"count": len(self.sections)})

    @property
    def depth(self) -> int:
        return len(self.sections)

    def accepts(self, sigma: Pattern) -> bool:
        """σ 能否作为下一个截线模式"""
        n = len(self.sections)
        if n >= 3:
            return False
        sizes = [s.size for s in self.sections]
        total = self.pencil.size + sum(sizes) + (3 - n) * sigma.size
        if total < self.threshold:
            return False
        if self.smooth and (sigma.a2 or sigma.a3):
            return False
        if n == 0:
            if self.smooth:
                return pattern_leq(sigma.primed(), self.pencil)
            return pattern_leq(sigma, self.pencil) or sigma.is_elliptic()
        previous = self.sections[-1]
        if self.smooth:
            return pattern_leq(sigma.primed(), previous.primed())
        return pattern_leq(sigma, previous)

    def extend(self, sigma: Pattern) -> "CompatibleCollection":
        if not self.accepts(sigma):
            raise PatternError(
                "截线模式与集合不相容",
                {"collection": self.to_json(), "pattern": sigma.to_json()},
            )
        return CompatibleCollection(self.pencil, self.sections + (sigma,), self.threshold, self.smooth)

    def is_compatible(self) -> bool:
        partial = CompatibleCollection(self.pencil, (), self.threshold, self.smooth)
        for sigma in self.sections:
            if not partial.accepts(sigma):
                return False
            partial = partial.extend(sigma)
        return True

    def dominated_by(self, other: "CompatibleCollection") -> bool:
        """逐分量扰动序 π ⪯ π′, σᵢ ⪯ σ′ᵢ"""
        if len(self.sections) != len(other.sections):
            return False
        pairs = [(self.pencil, other.pencil)] + list(zip(self.sections, other.sections))
        return all(perturbation_leq(a, b) for a, b in pairs)

    @property
    def key(self) -> str:
        return "|".join(str(p.to_json()) for p in (self.pencil,) + self.sections)

    def to_json(self) -> Dict[str, Any]:
        return {
            "pencil": self.pencil.to_json(),
            "sections": [s.to_json() for s in self.sections],
        }

    def __str__(self) -> str:
        return " ⋔ ".join(str(p) for p in (self.pencil,) + self.sections)


# ==================== 模式全集 ====================


@dataclass
class PatternUniverse:
    """Pencils 与 Sets：次几何的三角形束与 Δ-集合模式"""

    pencils: List[Pattern] = field(default_factory=list)
    sets: List[Pattern] = field(default_factory=list)
    mode: str = BatteryMode.SINGULAR.value

    def pencils_at_least(self, size: int) -> List[Pattern]:
        return [p for p in self.pencils if p.size >= size]

    def to_json(self) -> Dict[str, Any]:
        return {
            "mode": self.mode,
            "pencils": [p.to_json() for p in self.pencils],
            "sets": [s.to_json() for s in self.sets],
        }


def _subgeometric_task(task: Tuple[ConfigGraph, str]) -> bool:
    graph, mode = task
    return bool(test_battery(graph, BatteryMode(mode)).subgeometric)


def build_universes(
    max_size: int,
    mode: BatteryMode = BatteryMode.SINGULAR,
    valency_cap: int = DEFAULT_VALENCY_CAP,
    workers: Optional[int] = None,
) -> PatternUniverse:
    """逐个检查四元组，得到次几何的束模式与截线集合模式

    截线集合 σ 满足 val cᵢ = 2 + |σ| ≤ valency_cap。
    """
    smooth = mode is BatteryMode.SMOOTH
    pencil_candidates: List[Pattern] = []
    set_candidates: List[Pattern] = []
    for size in range(0, max_size + 1):
        for pattern in patterns_of_size(size):
            if smooth and (pattern.a2 or pattern.a3):
                continue
            if pattern.t2 >= 1 and pattern_rank(pattern, PENCIL) <= 20:
                pencil_candidates.append(pattern)
            if 2 + pattern.size <= valency_cap and pattern_rank(pattern, SECTIONS) <= 20:
                set_candidates.append(pattern)

    def realize_pencil(p: Pattern) -> ConfigGraph:
        graph = pencil_graph(p)
        return complete_three_section(graph) if smooth else graph

    def realize_set(s: Pattern) -> ConfigGraph:
        graph = triangle_union(s, 1)
        return complete_three_section(graph) if smooth else graph

    tasks = [(realize_pencil(p), mode.value) for p in pencil_candidates]
    tasks += [(realize_set(s), mode.value) for s in set_candidates]
    flags = parallel_map(_subgeometric_task, tasks, workers)
    pencils = [p for p, ok in zip(pencil_candidates, flags) if ok]
    sets = [s for s, ok in zip(set_candidates, flags[len(pencil_candidates) :]) if ok]
    logger.info(
        "pattern universes built",
        mode=mode.value,
        max_size=max_size,
        pencils=len(pencils),
        sets=len(sets),
    )
    return PatternUniverse(pencils=pencils, sets=sets, mode=mode.value)


# ==================== 排除表 ====================

Wildcard = Optional[int]


@dataclass(frozen=True)
class ExclusionTable:
    """按 (r, n) 索引的排除四元组，None 表示任意值

    r = rank(Ã₂ ∪₁ σ₁)，n = |σ₁|。
    """

    version: int
    rows: Dict[Tuple[int, int], Tuple[Tuple[Wildcard, ...], ...]]

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None) -> "ExclusionTable":
        path = Path(path) if path is not None else settings.data_dir / "exclusion_table.json"
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"无法读取排除表: {exc}", {"path": str(path)}) from exc
        return cls.from_json(data)

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ExclusionTable":
        rows: Dict[Tuple[int, int], Tuple[Tuple[Wildcard, ...], ...]] = {}
        try:
            for key, entries in data["rows"].items():
                r, n = (int(x) for x in key.split(","))
                masks = tuple(tuple(None if x is None else int(x) for x in e) for e in entries)
                if any(len(m) != 4 for m in masks):
                    raise ValueError(f"行 {key} 含有长度不为 4 的四元组")
                rows[(r, n)] = masks
            return cls(version=int(data["version"]), rows=rows)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"排除表格式错误: {exc}") from exc

    @classmethod
    def empty(cls) -> "ExclusionTable":
        return cls(version=1, rows={})

    def excludes(self, r: int, n: int, pencil: Pattern) -> bool:
        for mask in self.rows.get((r, n), ()):
            if all(m is None or m == x for m, x in zip(mask, pencil.quadruple)):
                return True
        return False


def pencils_minus(
    sigma: Pattern,
    pencils: Sequence[Pattern],
    table: ExclusionTable,
    threshold: int = SINGULAR_THRESHOLD,
) -> List[Pattern]:
    """Pencils⁻(σ₁)：π ⋔ σ₁ 且 rank(π) ≤ rank(Ã₂ ∪₁ σ₁)，再去掉排除表中的四元组"""
    r = pattern_rank(sigma, SECTIONS)
    n = sigma.size
    result = []
    for pencil in pencils:
        if not CompatibleCollection(pencil, (), threshold).accepts(sigma):
            continue
        if pattern_rank(pencil, PENCIL) > r:
            continue
        if table.excludes(r, n, pencil):
            continue
        result.append(pencil)
    return result


__all__ = [
    "PERTURBATIONS",
    "PENCIL",
    "SECTIONS",
    "SINGULAR_THRESHOLD",
    "SMOOTH_THRESHOLD",
    "CompatibleCollection",
    "PatternUniverse",
    "ExclusionTable",
    "pattern_less",
    "pattern_leq",
    "perturbation_leq",
    "is_induced_subpattern",
    "pattern_rank",
    "patterns_of_size",
    "triangle_union",
    "pencil_graph",
    "complete_three_section",
    "build_universes",
    "pencils_minus",
]
