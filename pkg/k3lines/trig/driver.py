#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多模式驱动模块

对同一个 Γ₀ 同时处理一组模式：
- 深度优先地按 Ã₂ > A₃ > A₂ > A₁ 添加多截线，(节点, 剩余模式) 的结论按约束规范键记忆
- 剩余模式 ρ 在节点 G 处充足，当且仅当每个子节点对 ρ − eⱼ 都充足
- 已知充足的 ρ 推出所有以 ρ 为诱导子模式的剩余模式也充足
- 结果与逐个模式调用 extend_by_set 一致

rule_out_sections() 在束与 σ₁ 之后继续按 σ₂、σ₃ 递归，给出排除证明。

Author: K3 Lines Team
Date: 2024
"""

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from k3lines.core.exceptions import PatternError
from k3lines.fano import Pattern, graph_rank
from k3lines.trig.extend import (
    Constraint,
    SearchNode,
    SectionLists,
    TriangularExtender,
    kind_unit,
    next_kind,
    pattern_kinds,
)
from k3lines.trig.patterns import CompatibleCollection, is_induced_subpattern, pattern_less
from shared.utils.logger import get_logger

logger = get_logger(__name__)

COMPUTED = "computed"
PROPAGATED = "propagated"


@dataclass
class PatternVerdict:
    pattern: Pattern
    ample: bool
    survivors: List[SearchNode] = field(default_factory=list)
    decided_by: str = COMPUTED

    def to_json(self) -> Dict[str, Any]:
        return {
            "pattern": self.pattern.to_json(),
            "ample": self.ample,
            "survivors": len(self.survivors),
            "decided_by": self.decided_by,
        }


@dataclass
class DriverReport:
    verdicts: Dict[Pattern, PatternVerdict]
    nodes_evaluated: int = 0
    memo_hits: int = 0
    propagated: int = 0

    @property
    def ample_patterns(self) -> List[Pattern]:
        return [p for p, v in self.verdicts.items() if v.ample]

    @property
    def surviving_patterns(self) -> List[Pattern]:
        return [p for p, v in self.verdicts.items() if not v.ample]

    def survivors(self, pattern: Pattern) -> List[SearchNode]:
        return self.verdicts[pattern].survivors

    def to_json(self) -> Dict[str, Any]:
        return {
            "patterns": [v.to_json() for v in self.verdicts.values()],
            "nodes_evaluated": self.nodes_evaluated,
            "memo_hits": self.memo_hits,
            "propagated": self.propagated,
        }


def _pattern_order(pattern: Pattern) -> Tuple[int, Tuple[int, ...]]:
    # 先小后大，使充足结论尽早可用于传播
    return (pattern.size, tuple(-x for x in pattern.quadruple))


class _MultiPatternRun:
    def __init__(self, extender: TriangularExtender, constraint: Constraint):
        self.extender = extender
        self.constraint = constraint
        self.memo: Dict[bytes, Dict[Pattern, Optional[List[SearchNode]]]] = {}
        self.ample_facts: Dict[bytes, List[Pattern]] = {}
        self.expansions: Dict[Tuple[bytes, str], Tuple[List[SearchNode], SectionLists]] = {}
        self.memo_hits = 0
        self.propagated = 0

    def known_ample(self, key: bytes, rho: Pattern) -> bool:
        return any(is_induced_subpattern(fact, rho) for fact in self.ample_facts.get(key, ()))

    def _expand(
        self, key: bytes, node: SearchNode, kind: str, lists: SectionLists
    ) -> Tuple[List[SearchNode], SectionLists]:
        cached = self.expansions.get((key, kind))
        if cached is None:
            cached = self.extender.expand(node, kind, lists, self.constraint)
            self.expansions[(key, kind)] = cached
        return cached

    def solve(self, node: SearchNode, lists: SectionLists, rho: Pattern) -> Optional[List[SearchNode]]:
        """ρ 在节点处的全部代表；None 表示充足"""
        key = node.key(self.constraint)
        known = self.memo.setdefault(key, {})
        if rho in known:
            self.memo_hits += 1
            return known[rho]
        if self.known_ample(key, rho):
            self.propagated += 1
            known[rho] = None
            return None
        kind = next_kind(rho)
        if kind is None:
            known[rho] = [node]
            return [node]

        children, child_lists = self._expand(key, node, kind, lists)
        remainder = rho - kind_unit(kind)
        collected: Dict[bytes, SearchNode] = {}
        for child in children:
            found = self.solve(child, child_lists, remainder)
            for survivor in found or ():
                collected.setdefault(survivor.key(self.constraint), survivor)
        result = [collected[k] for k in sorted(collected)] or None
        known[rho] = result
        if result is None:
            self.ample_facts.setdefault(key, []).append(rho)
        return result


def multi_pattern_driver(
    extender: TriangularExtender,
    node: SearchNode,
    patterns: Sequence[Pattern],
    constraint: Constraint,
    lists: Optional[SectionLists] = None,
) -> DriverReport:
    """对 patterns 中每个模式判定 (Γ₀, θ) 是否充足，并给出存活的代表"""
    ordered = sorted(set(patterns), key=_pattern_order)
    start = extender.nodes_evaluated
    verdicts: Dict[Pattern, PatternVerdict] = {}
    if not ordered:
        return DriverReport(verdicts)

    if lists is None:
        kinds = {k for p in ordered for k in pattern_kinds(p)}
        with_pairs = any(len(pattern_kinds(p)) > 1 for p in ordered)
        lists = extender.precompute_section_sets(node, constraint, kinds, with_pairs=with_pairs)

    run = _MultiPatternRun(extender, constraint)
    root_key = node.key(constraint)
    for pattern in ordered:
        propagated = run.known_ample(root_key, pattern)
        survivors = run.solve(node, lists, pattern)
        verdicts[pattern] = PatternVerdict(
            pattern=pattern,
            ample=survivors is None,
            survivors=survivors or [],
            decided_by=PROPAGATED if propagated else COMPUTED,
        )

    report = DriverReport(
        verdicts=verdicts,
        nodes_evaluated=extender.nodes_evaluated - start,
        memo_hits=run.memo_hits,
        propagated=run.propagated,
    )
    logger.info(
        "multi-pattern run finished",
        patterns=len(ordered),
        ample=len(report.ample_patterns),
        nodes=report.nodes_evaluated,
        propagated=report.propagated,
    )
    return report


# ==================== 截线递归 ====================


@dataclass
class SectionSearch:
    """一个束（及 σ₁ 等）的后续截线搜索结果

    certificate 记录每个充足的叶子 (相容集合, 添加的截线模式)；
    unresolved 为深度已满或未继续展开的存活图。
    """

    collection: CompatibleCollection
    certificate: List[Dict[str, Any]] = field(default_factory=list)
    unresolved: List[Tuple[CompatibleCollection, SearchNode]] = field(default_factory=list)
    nodes_evaluated: int = 0

    @property
    def ruled_out(self) -> bool:
        return not self.unresolved

    def merge(self, other: "SectionSearch") -> None:
        self.certificate.extend(other.certificate)
        self.unresolved.extend(other.unresolved)
        self.nodes_evaluated += other.nodes_evaluated

    def to_json(self) -> Dict[str, Any]:
        return {
            "collection": self.collection.to_json(),
            "ruled_out": self.ruled_out,
            "certificate": self.certificate,
            "unresolved": [
                {"collection": c.to_json(), "graph": n.graph.to_json()} for c, n in self.unresolved
            ],
            "nodes_evaluated": self.nodes_evaluated,
        }


Preparer = Callable[[SearchNode, int], List[SearchNode]]


def keep_nodes(node: SearchNode, depth: int) -> List[SearchNode]:
    return [node.rebase()]


def rule_out_sections(
    extender: TriangularExtender,
    node: SearchNode,
    collection: CompatibleCollection,
    sets: Sequence[Pattern],
    max_sections: int = 3,
    blocked: Sequence[int] = (),
    prepare: Preparer = keep_nodes,
    options: Optional[Sequence[Pattern]] = None,
    aggressive: bool = False,
) -> SectionSearch:
    """node 实现 collection；对每个相容的下一个截线模式 σ 以 fixed = {c_(n+1)} 扩张

    没有相容 σ 时（线数不可能达到阈值）该分支直接排除。
    prepare 在每一层扩张前变换存活图（光滑情形换成饱和中的并集）。
    options 给出时只考虑其中的 σ（仅作用于当前一层）。
    aggressive 为真时，σ₂ 及以后各层中秩 18、19 的图改用激进模式，其饱和全部采集。
    """
    result = SectionSearch(collection)
    depth = collection.depth
    if depth >= max_sections:
        result.unresolved.append((collection, node))
        return result
    pool = sets if options is None else options
    candidates = sorted((s for s in pool if collection.accepts(s)), key=_pattern_order)
    if not candidates:
        result.certificate.append({"collection": collection.to_json(), "reason": "threshold"})
        return result
    if depth >= len(node.fiber):
        raise PatternError("截线层数超过纤维顶点数", {"depth": depth})

    constraint = Constraint.for_fixed(node.fiber, (node.fiber[depth],), blocked)
    for base in prepare(node, depth):
        if aggressive and depth >= 1 and graph_rank(base.graph) in (18, 19):
            outcome = extender.aggressive_extend(base, constraint)
            result.nodes_evaluated += outcome.nodes_evaluated
            result.certificate.append(
                {
                    "collection": collection.to_json(),
                    "reason": "aggressive",
                    "harvested": len(outcome.harvested),
                    "intermediate": len(outcome.intermediate),
                }
            )
            continue
        report = multi_pattern_driver(extender, base, candidates, constraint)
        result.nodes_evaluated += report.nodes_evaluated
        for sigma in candidates:
            verdict = report.verdicts[sigma]
            extended = collection.extend(sigma)
            if verdict.ample:
                result.certificate.append(
                    {"collection": extended.to_json(), "reason": "ample", "decided_by": verdict.decided_by}
                )
                continue
            for survivor in verdict.survivors:
                result.merge(
                    rule_out_sections(
                        extender,
                        survivor,
                        extended,
                        sets,
                        max_sections,
                        blocked,
                        prepare,
                        aggressive=aggressive,
                    )
                )
    logger.debug(
        "section search finished",
        collection=str(collection),
        ruled_out=result.ruled_out,
        unresolved=len(result.unresolved),
    )
    return result


def largest_first(patterns: Sequence[Pattern]) -> List[Pattern]:
    """按 ≺ 从大到小"""

    def compare(a: Pattern, b: Pattern) -> int:
        if a == b:
            return 0
        return 1 if pattern_less(a, b) else -1

    return sorted(patterns, key=cmp_to_key(compare))


__all__ = [
    "PatternVerdict",
    "DriverReport",
    "SectionSearch",
    "multi_pattern_driver",
    "rule_out_sections",
    "largest_first",
    "keep_nodes",
    "Preparer",
    "COMPUTED",
    "PROPAGATED",
]
