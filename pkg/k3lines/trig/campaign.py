#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
三角纤维战役模块

奇异情形（阈值 52）：
- 步骤 1：对每个 σ₁，在 Γ₀ = Ã₂ ∪₁ σ₁ 上以 fixed = ∅ 扩张出 Pencils⁻(σ₁) 中的束，
  再以 fixed = {c₂} 继续
- 步骤 2：对每个 π ∈ Pencils₁₄，以 fixed = {c₁} 扩张步骤 1 未覆盖的 σ₁，再以 {c₂} 继续
- σ₂ 之后秩 18、19 的图转入激进模式

光滑情形（阈值 48，另加三重截线 c₀）：
- 束优先；Γ₀ = P ∪ c₀，模式中不允许 A₂、A₃ 分支
- 每一层扩张前把图换成其光滑 Fano 图中的 P ∪ sec₁ ∪ … ∪ secᵢ₋₁ ∪ c₀

每个 σ₁（步骤 1）或 π（步骤 2、光滑情形）是一个工作单元，完成后写入检查点。

Author: K3 Lines Team
Date: 2024
"""

from functools import partial
from typing import Callable, List, Optional, Sequence, Set, Tuple

from k3lines.admiss import BatteryMode, SaturationRecord, kernel_saturations, test_battery
from k3lines.checkpoint import CheckpointManager
from k3lines.core.exceptions import PreconditionError
from k3lines.fano import ConfigGraph, Pattern, canonical_form, decompose_pencil
from k3lines.report import CampaignReport, UnitFragment, UnitRunner
from k3lines.trig.driver import (
    Preparer,
    SectionSearch,
    keep_nodes,
    largest_first,
    multi_pattern_driver,
    rule_out_sections,
)
from k3lines.trig.extend import (
    ACCEPT,
    HARVEST,
    Constraint,
    Harvester,
    SearchNode,
    TriangularExtender,
    triage,
)
from k3lines.trig.patterns import (
    CompatibleCollection,
    ExclusionTable,
    PatternUniverse,
    build_universes,
    complete_three_section,
    pencil_graph,
    pencils_minus,
    triangle_union,
)
from shared.config.campaign_config import CampaignConfig
from shared.utils.logger import get_logger

logger = get_logger(__name__)

FIBER = (0, 1, 2)
SINGULAR_PENCIL_BOUND = 14
SMOOTH_PENCIL_BOUND = 15
_FIBER_PATTERN = Pattern(1, 0, 0, 0)


def _unit_name(prefix: str, pattern: Pattern) -> str:
    return f"{prefix}:{','.join(str(x) for x in pattern.quadruple)}"


# ==================== 光滑情形的约化 ====================


def reduce_to_union(
    node: SearchNode, upto: int, c0: int, mode: BatteryMode = BatteryMode.SMOOTH
) -> List[SearchNode]:
    """把图换成 sat(Γ, K) 中 P ∪ sec₁ ∪ … ∪ sec_upto ∪ c₀ 的诱导子图，每个几何核一个

    饱和保持原顶点的编号，纤维与 c₀ 的位置不变。
    """
    if upto == 0:
        return [node.rebase()]
    seen: Set[bytes] = set()
    result: List[SearchNode] = []
    for _, saturated in kernel_saturations(node.graph, mode):
        pencil = decompose_pencil(saturated, node.fiber)
        keep = set(pencil.pencil) | {c0}
        for members in pencil.sec[:upto]:
            keep.update(members)
        vertices = sorted(keep)
        if vertices.index(c0) != c0:
            raise PreconditionError("约化后 c₀ 的位置改变", {"c0": c0})
        reduced = saturated.induced(vertices)
        key = canonical_form(reduced, setwise=[node.fiber], pointwise=(node.fiber[0], c0)).certificate
        if key in seen:
            continue
        seen.add(key)
        result.append(SearchNode.root(reduced, node.fiber))
    return result


# ==================== 战役 ====================


class TriangularCampaign:
    """三角纤维战役（奇异与光滑两种情形）

    Args:
        config: 战役配置
        checkpoint: 检查点管理器（None 时只在内存中记录）
        sink: 采集记录的去处（结果存储）
        universe: 预先计算的模式全集（None 时按配置计算）
    """

    def __init__(
        self,
        config: CampaignConfig,
        checkpoint: Optional[CheckpointManager] = None,
        sink: Optional[Callable[[SaturationRecord], None]] = None,
        universe: Optional[PatternUniverse] = None,
    ):
        if config.kind not in ("triangular", "smooth"):
            raise PreconditionError("不是三角纤维战役", {"kind": config.kind})
        self.config = config
        self.smooth = config.smooth_mode
        self.mode = BatteryMode.SMOOTH if self.smooth else BatteryMode.SINGULAR
        self.threshold = int(config.threshold or 0)
        self.max_sections = 3 if config.run_third_section else 2
        self.harvester = Harvester(
            self.mode, config.harvest.min_lines, config.harvest.min_exceptional, sink
        )
        self.extender = TriangularExtender(
            mode=self.mode,
            harvester=self.harvester,
            max_support=config.max_support,
            workers=config.workers,
        )
        self.checkpoint = checkpoint or CheckpointManager(None, config.config_hash(), config.campaign_id)
        self.report = CampaignReport(config.kind, config.campaign_id, config.config_hash())
        self.runner = UnitRunner(self.report, self.checkpoint, self.harvester, lambda: self.extender.nodes_evaluated)
        self._universe = universe

    # ---------- 输入 ----------

    @property
    def universe(self) -> PatternUniverse:
        if self._universe is None:
            self._universe = build_universes(
                self.config.max_pattern_size, self.mode, self.config.valency_cap, self.config.workers
            )
        return self._universe

    def pencils(self) -> List[Pattern]:
        """满足大小下界的束模式；非 toy 配置下界不低于 14（光滑情形 15）"""
        minimum = int(self.config.min_pencil_size or 0)
        if not self.config.toy:
            minimum = max(minimum, SMOOTH_PENCIL_BOUND if self.smooth else SINGULAR_PENCIL_BOUND)
        return largest_first(self.universe.pencils_at_least(minimum))

    def sets(self) -> List[Pattern]:
        return largest_first(self.universe.sets)

    def collection(self, pencil: Pattern, sections: Sequence[Pattern] = ()) -> CompatibleCollection:
        return CompatibleCollection(pencil, tuple(sections), self.threshold, self.smooth)

    # ---------- 公共步骤 ----------

    def _check_base(self, graph: ConfigGraph) -> str:
        outcome = triage(test_battery(graph, self.mode))
        if outcome == HARVEST:
            self.harvester.harvest(graph)
        return outcome

    @staticmethod
    def _absorb(fragment: UnitFragment, search: SectionSearch) -> None:
        fragment.ruled_out.extend(search.certificate)
        for collection, node in search.unresolved:
            fragment.unresolved.append(
                {
                    "collection": collection.to_json(),
                    "lines": node.graph.n,
                    "key": canonical_form(node.graph).key,
                    "graph": node.graph.to_json(),
                }
            )

    def _base_rejected(self, fragment: UnitFragment, collections: Sequence[CompatibleCollection], outcome: str) -> None:
        for collection in collections:
            fragment.ruled_out.append({"collection": collection.to_json(), "reason": f"base:{outcome}"})

    # ---------- 奇异情形 ----------

    def _sections_first(self, sigma: Pattern, minus: List[Pattern], fragment: UnitFragment) -> None:
        """步骤 1：Γ₀ = Ã₂ ∪₁ σ₁，fixed = ∅ 扩张出 π − Ã₂"""
        graph = triangle_union(sigma, 1)
        collections = [self.collection(pi, (sigma,)) for pi in minus]
        outcome = self._check_base(graph)
        if outcome != ACCEPT:
            self._base_rejected(fragment, collections, outcome)
            return
        node = SearchNode.root(graph, FIBER)
        constraint = Constraint.for_fixed(FIBER, ())
        report = multi_pattern_driver(self.extender, node, [pi - _FIBER_PATTERN for pi in minus], constraint)
        for pi, collection in zip(minus, collections):
            verdict = report.verdicts[pi - _FIBER_PATTERN]
            if verdict.ample:
                fragment.ruled_out.append(
                    {"collection": collection.to_json(), "reason": "ample", "decided_by": verdict.decided_by}
                )
                continue
            search = SectionSearch(collection)
            for survivor in verdict.survivors:
                search.merge(
                    rule_out_sections(
                        self.extender,
                        survivor,
                        collection,
                        self.sets(),
                        self.max_sections,
                        aggressive=True,
                    )
                )
            self._absorb(fragment, search)

    def _pencil_first(self, pencil: Pattern, remaining: List[Pattern], blocked: Tuple[int, ...], fragment: UnitFragment) -> None:
        """步骤 2 与光滑情形：Γ₀ = P（光滑时加 c₀），fixed = {c₁} 扩张 σ₁"""
        graph = pencil_graph(pencil)
        if self.smooth:
            graph = complete_three_section(graph, FIBER)
        outcome = self._check_base(graph)
        if outcome != ACCEPT:
            self._base_rejected(fragment, [self.collection(pencil, (s,)) for s in remaining], outcome)
            return
        prepare: Preparer = keep_nodes
        if self.smooth:
            prepare = partial(reduce_to_union, c0=graph.n - 1, mode=self.mode)

        search = rule_out_sections(
            self.extender,
            SearchNode.root(graph, FIBER),
            self.collection(pencil),
            self.sets(),
            self.max_sections,
            blocked=blocked,
            options=remaining,
            prepare=prepare,
            aggressive=True,
        )
        self._absorb(fragment, search)

    def _run_singular(self) -> None:
        table = ExclusionTable.load(self.config.exclusion_table)
        pencils = self.pencils()
        sets = self.sets()
        handled: Set[Tuple[Pattern, Pattern]] = set()
        step_one: List[Tuple[Pattern, List[Pattern]]] = []
        for sigma in sets:
            minus = pencils_minus(sigma, pencils, table, self.threshold)
            handled.update((pi, sigma) for pi in minus)
            if minus:
                step_one.append((sigma, minus))
        logger.info(
            "triangular schedule prepared",
            pencils=len(pencils),
            sets=len(sets),
            step_one_units=len(step_one),
            handled_pairs=len(handled),
        )
        for sigma, minus in step_one:
            self.runner.run(
                _unit_name("s1", sigma),
                lambda fragment, sigma=sigma, minus=minus: self._sections_first(sigma, minus, fragment),
            )
        for pencil in pencils:
            base = self.collection(pencil)
            remaining = [s for s in sets if base.accepts(s) and (pencil, s) not in handled]
            if not remaining:
                continue
            self.runner.run(
                _unit_name("s2", pencil),
                lambda fragment, pencil=pencil, remaining=remaining: self._pencil_first(
                    pencil, remaining, (), fragment
                ),
            )

    # ---------- 光滑情形 ----------

    def _run_smooth(self) -> None:
        pencils = self.pencils()
        sets = self.sets()
        logger.info("smooth schedule prepared", pencils=len(pencils), sets=len(sets))
        for pencil in pencils:
            base = self.collection(pencil)
            remaining = [s for s in sets if base.accepts(s)]
            if not remaining:
                continue
            # c₀ 是 P ∪ c₀ 的最后一个顶点
            c0 = pencil.size
            self.runner.run(
                _unit_name("p", pencil),
                lambda fragment, pencil=pencil, remaining=remaining, c0=c0: self._pencil_first(
                    pencil, remaining, (c0,), fragment
                ),
            )

    # ---------- 入口 ----------

    def run(self, resume: bool = True) -> CampaignReport:
        self.checkpoint.load(resume)
        if self.smooth:
            self._run_smooth()
        else:
            self._run_singular()
        self.report.finish()
        summary = self.report.summary()
        logger.info("triangular campaign finished", kind=self.config.kind, **summary)
        if self.config.assert_expected:
            self.report.assert_expected(self.config.expected)
        elif self.config.expected:
            for mismatch in self.report.check_expected(self.config.expected):
                logger.warning("expected outcome mismatch", mismatch=mismatch)
        return self.report


def campaign_triangular(
    config: CampaignConfig,
    checkpoint: Optional[CheckpointManager] = None,
    sink: Optional[Callable[[SaturationRecord], None]] = None,
    resume: bool = True,
) -> CampaignReport:
    """奇异三角纤维战役"""
    if config.kind != "triangular":
        raise PreconditionError("配置类型不是 triangular", {"kind": config.kind})
    return TriangularCampaign(config, checkpoint, sink).run(resume)


def campaign_smooth(
    config: CampaignConfig,
    checkpoint: Optional[CheckpointManager] = None,
    sink: Optional[Callable[[SaturationRecord], None]] = None,
    resume: bool = True,
) -> CampaignReport:
    """光滑三角纤维战役"""
    if config.kind != "smooth":
        raise PreconditionError("配置类型不是 smooth", {"kind": config.kind})
    return TriangularCampaign(config, checkpoint, sink).run(resume)


__all__ = [
    "TriangularCampaign",
    "campaign_triangular",
    "campaign_smooth",
    "reduce_to_union",
    "SINGULAR_PENCIL_BOUND",
    "SMOOTH_PENCIL_BOUND",
]
