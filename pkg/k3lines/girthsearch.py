#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
非三角形图的搜索模块

围长 ≥ 4 的图按纤维类型分三类处理：
- 四边形（纤维 Ã₃）：sec*₁₃ ∩ sec*₂₄ = ∅，每个 sec*ᵢ 离散，sec*ᵢ ∖ secᵢ 为双截线
- 五边形（纤维 Ã₄）：全部截线为单截线，每个 secᵢ 离散
- 星形（纤维 D̃₄，中心 c₁ 的度数最大）：sec* 离散，sec₁ 为双截线

每一类都从束出发，按阶段依次添加离散的截线集合。每一阶段所需的最小规模由
completion 上界决定：达不到目标大小的分支立即剪掉。局部椭圆图的界 29 是引用值，
不做搜索。

Author: K3 Lines Team
Date: 2024
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from k3lines.admiss import BatteryMode, SaturationRecord, kernel_saturations, test_battery
from k3lines.catalog import PencilRecord, generate_small_pencils, load_catalog, parse_label
from k3lines.checkpoint import CheckpointManager
from k3lines.core.exceptions import (
    BoundViolationError,
    ConfigError,
    GraphError,
    LemmaViolationError,
    PreconditionError,
)
from k3lines.core.executor import parallel_map
from k3lines.fano import ConfigGraph, canonical_form, decompose_pencil, girth, girth_class, kappa
from k3lines.report import CampaignReport, UnitFragment, UnitRunner
from k3lines.trig.extend import (
    HARVEST,
    REJECT,
    Harvester,
    Support,
    orbit_representatives,
    pencil_components,
    triage,
)
from shared.config.campaign_config import CampaignConfig
from shared.utils.logger import get_logger

logger = get_logger(__name__)

# |secᵢ| = p 时 |sec*ᵢ ∖ secᵢ| 的上界
QUAD_TABLE = (8, 7, 6, 5, 5, 4, 4, 3, 2, 1, 0)
QUAD_SEC_BOUND = 10
QUAD_PAIR_BOUND = 20
QUAD_SECTIONS_BOUND = 32
QUAD_BOUND = 48

PENTAGONAL_SECTIONS_BOUND = 16
PENTAGONAL_LARGE_SECTIONS = 14
PENTAGONAL_LARGE_BOUND = 29
PENTAGONAL_BOUND = 30

ASTRAL_SECTIONS_BOUND = 12
ASTRAL_LARGE_SECTIONS = 11
ASTRAL_LARGE_BOUND = 27
ASTRAL_BOUND = 27

LOCALLY_ELLIPTIC_BOUND = 29


# ==================== 四边形表 ====================


def quad_table_check(p: int, q: int) -> bool:
    """(|secᵢ|, |sec*ᵢ ∖ secᵢ|) 是否在允许表内"""
    if not 0 <= p <= QUAD_SEC_BOUND:
        raise PreconditionError("|secᵢ| 至多为 10", {"p": p})
    if q < 0:
        raise PreconditionError("q 必须非负", {"q": q})
    return q <= QUAD_TABLE[p]


@lru_cache(maxsize=None)
def _triple_sums(fixed: Tuple[Optional[int], ...], lower: Tuple[int, ...]) -> FrozenSet[int]:
    """(p, q, r) 满足表约束与 p ≥ r 时 p + q + r 的全部可能值"""
    sums = set()
    for p in range(QUAD_SEC_BOUND + 1):
        for q in range(QUAD_TABLE[p] + 1):
            for r in range(p + 1):
                values = (p, q, r)
                if any(f is not None and v != f for v, f in zip(values, fixed)):
                    continue
                if any(v < low for v, low in zip(values, lower)):
                    continue
                sums.add(p + q + r)
    return frozenset(sums)


def quad_max_completion(
    base: int,
    fixed: Sequence[Optional[int]],
    lower: Sequence[int] = (0, 0, 0, 0, 0, 0),
) -> int:
    """Γ = base ∪ sec₁ ∪ (sec*₁∖sec₁) ∪ sec₃ ∪ sec₂ ∪ (sec*₂∖sec₂) ∪ sec₄ 可能达到的最大大小

    fixed 与 lower 按 (p₁, q₁, p₃, p₂, q₂, p₄) 排列；约束为表、|sec₁| ≥ |sec₃|、
    |sec₂| ≥ |sec₄|、|sec*₁₃| ≥ |sec*₂₄| 与 |sec*| ≤ 32。不可行时返回 −1。
    """
    fixed = tuple(fixed)
    lower = tuple(lower)
    first = _triple_sums(fixed[:3], lower[:3])
    second = _triple_sums(fixed[3:], lower[3:])
    best = -1
    for a in first:
        for b in second:
            if b <= a and a + b <= QUAD_SECTIONS_BOUND:
                best = max(best, a + b)
    return base + best if best >= 0 else -1


def _capped_completion(
    base: int,
    fixed: Sequence[Optional[int]],
    lower: Sequence[int],
    total_bound: int,
    large: int,
    large_bound: int,
) -> int:
    """|sec*| ≤ total_bound，且 |sec*| ≥ large 时 |Γ| ≤ large_bound"""
    low = sum(f if f is not None else low for f, low in zip(fixed, lower))
    if low > total_bound:
        return -1
    options = [low] if all(f is not None for f in fixed) else range(low, total_bound + 1)
    return max(base + s if s < large else min(base + s, large_bound) for s in options)


def pentagonal_max_completion(
    base: int, fixed: Sequence[Optional[int]], lower: Sequence[int] = (0,) * 5
) -> int:
    return _capped_completion(
        base, fixed, lower, PENTAGONAL_SECTIONS_BOUND, PENTAGONAL_LARGE_SECTIONS, PENTAGONAL_LARGE_BOUND
    )


def astral_max_completion(
    base: int, fixed: Sequence[Optional[int]], lower: Sequence[int] = (0,) * 5
) -> int:
    return _capped_completion(
        base, fixed, lower, ASTRAL_SECTIONS_BOUND, ASTRAL_LARGE_SECTIONS, ASTRAL_LARGE_BOUND
    )


# ==================== 纤维上下文与引理检查 ====================


@dataclass(frozen=True)
class QuadFiberContext:
    """四边形纤维 (c₁, c₂, c₃, c₄)：pᵢ = |secᵢ|，qᵢ = |sec*ᵢ ∖ secᵢ|"""

    fiber: Tuple[int, ...]
    p: Tuple[int, ...]
    q: Tuple[int, ...]
    sec_star_13: Tuple[int, ...]
    sec_star_24: Tuple[int, ...]
    simple: Tuple[int, ...]
    double: Tuple[int, ...]
    violations: Tuple[str, ...] = ()

    @classmethod
    def from_graph(cls, graph: ConfigGraph, fiber: Sequence[int]) -> "QuadFiberContext":
        fiber = tuple(fiber)
        if len(fiber) != 4 or any(graph.adj[fiber[i]][fiber[(i + 1) % 4]] != 1 for i in range(4)):
            raise GraphError("四边形纤维必须按循环顺序给出", {"fiber": list(fiber)})
        if graph.adj[fiber[0]][fiber[2]] or graph.adj[fiber[1]][fiber[3]]:
            raise GraphError("四边形纤维的对角顶点不能相邻", {"fiber": list(fiber)})
        pencil = decompose_pencil(graph, fiber)
        star = pencil.sec_star_i
        p = tuple(len(s) for s in pencil.sec)
        q = tuple(len(star[i]) - p[i] for i in range(4))
        star_13 = tuple(sorted(set(star[0]) | set(star[2])))
        star_24 = tuple(sorted(set(star[1]) | set(star[3])))
        violations = []
        if set(star_13) & set(star_24):
            violations.append("sec*_13 meets sec*_24")
        for i, members in enumerate(star):
            if any(graph.adj[u][v] for u, v in itertools.combinations(members, 2)):
                violations.append(f"sec*_{i + 1} is not discrete")
        simple = tuple(v for v in pencil.sec_star if pencil.multiplicity[v] == 1)
        double = tuple(v for v in pencil.sec_star if pencil.multiplicity[v] == 2)
        return cls(fiber, p, q, star_13, star_24, simple, double, tuple(violations))

    @property
    def table_ok(self) -> bool:
        return all(p <= QUAD_SEC_BOUND and quad_table_check(p, q) for p, q in zip(self.p, self.q))

    def to_json(self) -> Dict[str, Any]:
        return {
            "fiber": list(self.fiber),
            "p": list(self.p),
            "q": list(self.q),
            "sec_star_13": len(self.sec_star_13),
            "sec_star_24": len(self.sec_star_24),
            "violations": list(self.violations),
        }


def quad_lemma_check(graph: ConfigGraph, fiber: Sequence[int]) -> None:
    """|secᵢ|, |sec*ᵢ| ≤ 10，|sec*ᵢⱼ| ≤ 20，|sec*| ≤ 32，以及围长给出的结构"""
    context = QuadFiberContext.from_graph(graph, fiber)
    witness = graph.to_json()
    if context.violations:
        raise LemmaViolationError("四边形纤维的截线结构不成立", witness, context.to_json())
    for i in range(4):
        if context.p[i] > QUAD_SEC_BOUND or context.p[i] + context.q[i] > QUAD_SEC_BOUND:
            raise LemmaViolationError(
                "|secᵢ| 或 |sec*ᵢ| 超过 10", witness, {"index": i + 1, **context.to_json()}
            )
    for name, members in (("13", context.sec_star_13), ("24", context.sec_star_24)):
        if len(members) > QUAD_PAIR_BOUND:
            raise LemmaViolationError(
                "|sec*ᵢⱼ| 超过 20", witness, {"pair": name, "size": len(members)}
            )
    total = len(context.sec_star_13) + len(context.sec_star_24)
    if total > QUAD_SECTIONS_BOUND:
        raise LemmaViolationError("|sec*| 超过 32", witness, {"size": total})


def _sections_lemma_check(graph: ConfigGraph, fiber: Sequence[int], bound: int, name: str) -> None:
    pencil = decompose_pencil(graph, fiber)
    if len(pencil.sec_star) > bound:
        raise LemmaViolationError(
            f"{name}纤维的 |sec*| 超过 {bound}", graph.to_json(), {"size": len(pencil.sec_star)}
        )


def pentagonal_lemma_check(graph: ConfigGraph, fiber: Sequence[int]) -> None:
    _sections_lemma_check(graph, fiber, PENTAGONAL_SECTIONS_BOUND, "五边形")


def astral_lemma_check(graph: ConfigGraph, fiber: Sequence[int]) -> None:
    _sections_lemma_check(graph, fiber, ASTRAL_SECTIONS_BOUND, "星形")


# ==================== 围长饱和 ====================


def _girth_at_least(graph: ConfigGraph, min_girth: int) -> bool:
    return graph.n == 0 or girth(graph) >= min_girth


def girth_saturations(
    graph: ConfigGraph, min_girth: int, mode: BatteryMode = BatteryMode.SINGULAR
) -> List[ConfigGraph]:
    """几何核给出的饱和中围长 ≥ min_girth 的那些"""
    return [sat for _, sat in kernel_saturations(graph, mode) if _girth_at_least(sat, min_girth)]


def admits_triangle_free_saturation(graph: ConfigGraph, mode: BatteryMode = BatteryMode.SINGULAR) -> bool:
    """检验组合的四边形版本：某个几何核的饱和不含三角形"""
    return bool(girth_saturations(graph, 4, mode))


def girth_task(task: Tuple[ConfigGraph, str, int]) -> Tuple[str, int]:
    """(结果, 满足围长条件的饱和的最大线数)"""
    graph, mode, min_girth = task
    outcome = triage(test_battery(graph, BatteryMode(mode)))
    if outcome == REJECT:
        return REJECT, 0
    saturations = girth_saturations(graph, min_girth, BatteryMode(mode))
    if not saturations:
        return REJECT, 0
    return outcome, max(s.n for s in saturations)


# ==================== 局部椭圆图 ====================


@dataclass(frozen=True)
class CitedBound:
    value: int
    graph_class: str
    provenance: str
    searched: bool = False

    def to_json(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "graph_class": self.graph_class,
            "provenance": self.provenance,
            "searched": self.searched,
        }


def is_locally_elliptic(graph: ConfigGraph) -> bool:
    """围长 ≥ 6 且每个顶点的度数 ≤ 3"""
    return girth_class(graph) == "locally elliptic"


def locally_elliptic_bound() -> CitedBound:
    return CitedBound(
        value=LOCALLY_ELLIPTIC_BOUND,
        graph_class="locally elliptic",
        provenance="cited from the published classification of locally elliptic line configurations; not recomputed",
    )


# ==================== 离散扩张 ====================


@dataclass(frozen=True)
class Stage:
    """一个截线阶段：新顶点恰与纤维位置 contact 上的顶点相交"""

    name: str
    contact: Tuple[int, ...]


CompletionBound = Callable[[int, Sequence[Optional[int]], Sequence[int]], int]


@dataclass(frozen=True)
class GirthPlan:
    kind: str
    fiber_type: str
    min_girth: int
    stages: Tuple[Stage, ...]
    completion: CompletionBound
    lemma_check: Callable[[ConfigGraph, Sequence[int]], None]
    full_bound: int
    # 星形纤维：中心在 sec₁ 完成后须保持最大度数
    valency_center: Optional[int] = None


QUAD_STAGES = (
    Stage("sec1", (0,)),
    Stage("double13", (0, 2)),
    Stage("sec3", (2,)),
    Stage("sec2", (1,)),
    Stage("double24", (1, 3)),
    Stage("sec4", (3,)),
)

PLANS: Dict[str, GirthPlan] = {
    "quadrangular": GirthPlan(
        "quadrangular", "~A3", 4, QUAD_STAGES, quad_max_completion, quad_lemma_check, QUAD_BOUND
    ),
    "pentagonal": GirthPlan(
        "pentagonal",
        "~A4",
        5,
        tuple(Stage(f"sec{i + 1}", (i,)) for i in range(5)),
        pentagonal_max_completion,
        pentagonal_lemma_check,
        PENTAGONAL_BOUND,
    ),
    "astral": GirthPlan(
        "astral",
        "~D4",
        6,
        tuple(Stage(f"sec{i + 1}", (i,)) for i in range(5)),
        astral_max_completion,
        astral_lemma_check,
        ASTRAL_BOUND,
        valency_center=0,
    ),
}


@dataclass
class GirthNode:
    graph: ConfigGraph
    sizes: Tuple[int, ...]
    best_saturation: int = 0


@dataclass
class DiscreteSearchResult:
    survivors: List[GirthNode] = field(default_factory=list)
    nodes_evaluated: int = 0
    max_size: int = 0
    initial_bound: int = 0

    @property
    def ruled_out(self) -> bool:
        return not self.survivors


def _far_subsets(
    candidates: Sequence[int], near: Dict[int, Set[int]], base: FrozenSet[int], limit: int
) -> Iterator[FrozenSet[int]]:
    """candidates 的子集 S，使 S ∪ base 中任意两点距离足够远，|S| ≤ limit"""

    def far(v: int, chosen: Iterator[int]) -> bool:
        return all(v not in near[u] for u in chosen)

    def recurse(start: int, chosen: List[int]) -> Iterator[FrozenSet[int]]:
        yield frozenset(chosen)
        if len(chosen) >= limit:
            return
        for i in range(start, len(candidates)):
            v = candidates[i]
            if far(v, iter(base)) and far(v, iter(chosen)):
                chosen.append(v)
                yield from recurse(i + 1, chosen)
                chosen.pop()

    yield from recurse(0, [])


def discrete_supports(
    graph: ConfigGraph,
    fiber: Sequence[int],
    contact: Sequence[int],
    min_girth: int,
    max_support: Optional[int] = None,
) -> List[Support]:
    """与纤维恰交于 contact 的新顶点的全部支撑，加入后围长仍 ≥ min_girth

    新顶点的任意两个邻点在原图中的距离必须 ≥ min_girth − 2；对束中每个抛物分支
    κ 加权交数等于截线重数，椭圆分支至多交于重数个顶点。
    """
    fiber = tuple(fiber)
    contact_set = frozenset(fiber[i] for i in contact)
    weights = dict(zip(fiber, kappa(graph.induced(fiber))))
    m = sum(weights[c] for c in contact_set)
    reach = max(min_girth - 3, 0)
    nxg = graph.to_networkx()
    near = {v: set(nx.single_source_shortest_path_length(nxg, v, cutoff=reach)) for v in range(graph.n)}
    if any(b in near[a] for a, b in itertools.combinations(sorted(contact_set), 2)):
        return []
    limit = max_support if max_support is not None else graph.n

    rest, components = pencil_components(graph, fiber)
    sections = [v for v in range(graph.n) if v not in contact_set and v not in fiber and v not in rest]
    choices: List[List[FrozenSet[int]]] = []
    for vertices, comp_weights in components:
        index = {v: i for i, v in enumerate(vertices)}
        options = []
        for subset in _far_subsets(vertices, near, contact_set, len(vertices)):
            if comp_weights is not None:
                if sum(comp_weights[index[v]] for v in subset) == m:
                    options.append(subset)
            elif len(subset) <= m:
                options.append(subset)
        if not options:
            return []
        choices.append(options)

    result: Set[Support] = set()
    for combo in itertools.product(*choices):
        core: Set[int] = set(contact_set)
        ok = True
        for part in combo:
            if any(v in near[u] for u in core for v in part):
                ok = False
                break
            core.update(part)
        if not ok or len(core) > limit:
            continue
        for extra in _far_subsets(sections, near, frozenset(core), limit - len(core)):
            result.add(frozenset(core) | extra)
    return sorted(result, key=lambda s: (len(s), tuple(sorted(s))))


def _act(support: Support, gamma: Tuple[int, ...]) -> Support:
    return frozenset(gamma[u] for u in support)


class DiscreteExtender:
    """按阶段添加离散截线集合的扩张器

    Args:
        plan: 纤维类型、围长与完成上界
        harvester: 秩 20 图的采集器
        mode: 检验组合模式
        max_support: 支撑大小上限（度数上限）
        workers: 并行进程数
        prune_orbits: 是否按约束自同构群的轨道剪枝
        check_lemmas: 对接受的图运行引理检查
    """

    def __init__(
        self,
        plan: GirthPlan,
        harvester: Optional[Harvester] = None,
        mode: BatteryMode = BatteryMode.SINGULAR,
        max_support: Optional[int] = None,
        workers: Optional[int] = None,
        prune_orbits: bool = True,
        check_lemmas: bool = True,
    ):
        self.plan = plan
        self.mode = mode
        self.harvester = harvester or Harvester(mode)
        self.max_support = max_support
        self.workers = workers
        self.prune_orbits = prune_orbits
        self.check_lemmas = check_lemmas
        self.nodes_evaluated = 0

    def _key(self, graph: ConfigGraph, fiber: Sequence[int]) -> bytes:
        return canonical_form(graph, pointwise=tuple(fiber)).certificate

    def _bound(self, base: int, sizes: Tuple[int, ...], stage: int, closed: bool) -> int:
        count = len(self.plan.stages)
        fixed: List[Optional[int]] = [sizes[i] if i < stage or (i == stage and closed) else None for i in range(count)]
        lower = [sizes[i] if i == stage and not closed else 0 for i in range(count)]
        return self.plan.completion(base, fixed, lower)

    def _valency_ok(self, graph: ConfigGraph, fiber: Sequence[int]) -> bool:
        center = self.plan.valency_center
        if center is None:
            return True
        limit = graph.valency(fiber[center])
        return all(graph.valency(v) <= limit for v in range(graph.n))

    def children(self, node: GirthNode, fiber: Sequence[int], stage: int) -> List[ConfigGraph]:
        """node 在阶段 stage 再加一个顶点的全部结果（去重前）"""
        supports = discrete_supports(
            node.graph, fiber, self.plan.stages[stage].contact, self.plan.min_girth, self.max_support
        )
        if self.prune_orbits:
            generators = canonical_form(node.graph, pointwise=tuple(fiber)).generators
            supports = [rep for rep, _ in orbit_representatives(supports, generators, _act)]
        return [node.graph.add_vertex(sorted(s)) for s in supports]

    def evaluate(self, graphs: Sequence[ConfigGraph]) -> List[Tuple[str, int]]:
        results = parallel_map(
            girth_task, [(g, self.mode.value, self.plan.min_girth) for g in graphs], self.workers
        )
        self.nodes_evaluated += len(graphs)
        return results

    def search(
        self,
        graph: ConfigGraph,
        fiber: Sequence[int],
        base: int,
        target: int,
        start_stage: int = 0,
        sizes: Optional[Sequence[int]] = None,
    ) -> DiscreteSearchResult:
        """从 graph 出发依次完成 start_stage 之后的各阶段，返回达到 target 的存活图"""
        fiber = tuple(fiber)
        count = len(self.plan.stages)
        start_sizes = tuple(sizes) if sizes is not None else (0,) * count
        result = DiscreteSearchResult(max_size=graph.n)
        start = self.nodes_evaluated
        result.initial_bound = self._bound(base, start_sizes, start_stage, closed=False)
        frontier = [GirthNode(graph, start_sizes)]
        if result.initial_bound < target:
            frontier = []

        for stage in range(start_stage, count):
            closed: Dict[bytes, GirthNode] = {}
            level = frontier
            while level:
                proposals: Dict[bytes, Tuple[ConfigGraph, Tuple[int, ...]]] = {}
                for node in level:
                    if self._bound(base, node.sizes, stage, closed=True) >= target and (
                        stage != 0 or self._valency_ok(node.graph, fiber)
                    ):
                        closed.setdefault(self._key(node.graph, fiber), node)
                    grown = node.sizes[:stage] + (node.sizes[stage] + 1,) + node.sizes[stage + 1:]
                    if self._bound(base, grown, stage, closed=False) < target:
                        continue
                    for child in self.children(node, fiber, stage):
                        if stage > 0 and not self._valency_ok(child, fiber):
                            continue
                        proposals.setdefault(self._key(child, fiber), (child, grown))
                level = []
                keys = sorted(proposals)
                outcomes = self.evaluate([proposals[k][0] for k in keys])
                for key, (outcome, best) in zip(keys, outcomes):
                    child, grown = proposals[key]
                    if outcome == REJECT:
                        continue
                    result.max_size = max(result.max_size, child.n)
                    if outcome == HARVEST:
                        self.harvester.harvest(child)
                        if best >= target:
                            result.survivors.append(GirthNode(child, grown, best))
                        continue
                    if self.check_lemmas:
                        self.plan.lemma_check(child, fiber)
                    level.append(GirthNode(child, grown, best))
                logger.debug(
                    "discrete stage step",
                    kind=self.plan.kind,
                    stage=self.plan.stages[stage].name,
                    proposals=len(proposals),
                    kept=len(level),
                )
            frontier = [closed[k] for k in sorted(closed)]
            if not frontier:
                break

        result.survivors.extend(node for node in frontier if node.graph.n >= target)
        result.survivors.sort(key=lambda node: (-node.graph.n, self._key(node.graph, fiber)))
        result.nodes_evaluated = self.nodes_evaluated - start
        return result


# ==================== 战役 ====================


_DIHEDRAL_4 = tuple(
    tuple((s * i + r) % 4 for i in range(4)) for r in range(4) for s in (1, -1)
)


def quad_standard_graph(p: int, q: int) -> ConfigGraph:
    """F ∪ sec*₁：四边形 (0, 1, 2, 3)，p 条只交 c₁ 的单截线与 q 条交 c₁、c₃ 的双截线"""
    if not quad_table_check(p, q):
        raise PreconditionError("(p, q) 不在四边形表内", {"p": p, "q": q})
    graph = ConfigGraph.cycle(4)
    for _ in range(p):
        graph = graph.add_vertex([0])
    for _ in range(q):
        graph = graph.add_vertex([0, 2])
    return graph


def _fiber_labelings(graph: ConfigGraph, fiber_size: int, kind: str) -> List[ConfigGraph]:
    """四边形束按纤维的二面体重标号展开（在逐点固定纤维的同构下去重）"""
    if kind != "quadrangular":
        return [graph]
    rest = list(range(fiber_size, graph.n))
    seen = set()
    result = []
    for perm in _DIHEDRAL_4:
        relabeled = graph.induced(list(perm) + rest)
        key = canonical_form(relabeled, pointwise=tuple(range(fiber_size))).certificate
        if key not in seen:
            seen.add(key)
            result.append(relabeled)
    return result


def _survivor_entry(node: GirthNode, fiber: Sequence[int]) -> Dict[str, Any]:
    return {
        "lines": node.graph.n,
        "sizes": list(node.sizes),
        "best_saturation": node.best_saturation,
        "key": canonical_form(node.graph, pointwise=tuple(fiber)).key,
        "graph": node.graph.to_json(),
    }


class GirthCampaign:
    """四边形、五边形与星形战役

    Args:
        config: 战役配置
        checkpoint: 检查点管理器
        sink: 采集记录的去处
        pencils: 预先给出的束（None 时按配置读取目录或生成）
    """

    def __init__(
        self,
        config: CampaignConfig,
        checkpoint: Optional[CheckpointManager] = None,
        sink: Optional[Callable[[SaturationRecord], None]] = None,
        pencils: Optional[Sequence[PencilRecord]] = None,
    ):
        if config.kind not in PLANS:
            raise PreconditionError("不是围长 ≥ 4 的战役", {"kind": config.kind})
        self.config = config
        self.plan = PLANS[config.kind]
        self.mode = BatteryMode.SINGULAR
        self.harvester = Harvester(self.mode, config.harvest.min_lines, config.harvest.min_exceptional, sink)
        self.extender = DiscreteExtender(
            self.plan, self.harvester, self.mode, config.max_support or config.valency_cap, config.workers
        )
        self.checkpoint = checkpoint or CheckpointManager(None, config.config_hash(), config.campaign_id)
        self.report = CampaignReport(config.kind, config.campaign_id, config.config_hash())
        self.runner = UnitRunner(self.report, self.checkpoint, self.harvester, lambda: self.extender.nodes_evaluated)
        self._pencils = list(pencils) if pencils is not None else None

    @property
    def target(self) -> int:
        return int(self.config.target_size or 0)

    def pencils(self) -> List[PencilRecord]:
        """纤维类型相符且大小 ≥ min_pencil_size 的束"""
        records = self._pencils
        if records is None:
            if self.config.catalog_path:
                records = load_catalog(self.config.catalog_path, self.mode)
            elif self.config.toy:
                records = generate_small_pencils(self.plan.fiber_type, self.config.generated_pencil_size, self.mode)
            else:
                raise ConfigError("围长战役需要 catalog_path", {"kind": self.config.kind})
        label = parse_label(self.plan.fiber_type)
        minimum = int(self.config.min_pencil_size or 0)
        return [r for r in records if r.label == label and r.size >= minimum]

    def _violation(self, witness: ConfigGraph, unit: str, bound: int) -> None:
        if not self.config.toy:
            raise BoundViolationError(
                "搜索找到了超过界的图", witness.to_json(), {"kind": self.config.kind, "unit": unit, "bound": bound}
            )

    def _run_search(
        self,
        fragment: UnitFragment,
        graph: ConfigGraph,
        fiber: Tuple[int, ...],
        base: int,
        target: int,
        describe: Dict[str, Any],
        start_stage: int = 0,
        sizes: Optional[Sequence[int]] = None,
    ) -> None:
        outcome = self.extender.search(graph, fiber, base, target, start_stage, sizes)
        fragment.max_size = max(fragment.max_size, outcome.max_size)
        if outcome.ruled_out:
            reason = "bound" if outcome.initial_bound < target else "exhausted"
            fragment.ruled_out.append({**describe, "reason": reason, "initial_bound": outcome.initial_bound})
            return
        for node in outcome.survivors:
            fragment.survivors.append({**describe, **_survivor_entry(node, fiber)})
        self._violation(outcome.survivors[0].graph, fragment.unit, target - 1)

    def _run_pencil(self, fragment: UnitFragment, record: PencilRecord) -> None:
        graph, fiber = record.normalized()
        for index, labeled in enumerate(_fiber_labelings(graph, len(fiber), self.config.kind)):
            describe = {"pencil": record.source, "size": graph.n, "labeling": index}
            self._run_search(fragment, labeled, fiber, labeled.n, self.target, describe)

    def _run_seed(self, fragment: UnitFragment, p: int, q: int) -> None:
        graph = quad_standard_graph(p, q)
        sizes = (p, q, 0, 0, 0, 0)
        describe = {"seed": [p, q]}
        self._run_search(fragment, graph, (0, 1, 2, 3), 4, self.config.seed_target_size, describe, 2, sizes)

    def run(self, resume: bool = True) -> CampaignReport:
        self.checkpoint.load(resume)
        if self.config.kind == "quadrangular":
            for seed in self.config.seeds or []:
                self.runner.run(
                    f"seed:{seed.p1},{seed.q1}",
                    lambda fragment, seed=seed: self._run_seed(fragment, seed.p1, seed.q1),
                )
        pencils = self.pencils()
        logger.info("girth schedule prepared", kind=self.config.kind, pencils=len(pencils), target=self.target)
        for record in pencils:
            graph, fiber = record.normalized()
            unit = f"pencil:{canonical_form(graph, setwise=[list(fiber)]).key[:16]}"
            self.runner.run(unit, lambda fragment, record=record: self._run_pencil(fragment, record))
        self.report.finish()
        summary = self.report.summary()
        logger.info("girth campaign finished", kind=self.config.kind, **summary)
        if self.config.assert_expected:
            self.report.assert_expected(self.config.expected)
        elif self.config.expected:
            for mismatch in self.report.check_expected(self.config.expected):
                logger.warning("expected outcome mismatch", mismatch=mismatch)
        return self.report


def campaign_quadrangular(
    config: CampaignConfig,
    checkpoint: Optional[CheckpointManager] = None,
    sink: Optional[Callable[[SaturationRecord], None]] = None,
    pencils: Optional[Sequence[PencilRecord]] = None,
    resume: bool = True,
) -> CampaignReport:
    """四边形战役：标准图起点（目标 seed_target_size）与 |P| ≥ 17 的束（目标 49）"""
    if config.kind != "quadrangular":
        raise PreconditionError("配置类型不是 quadrangular", {"kind": config.kind})
    return GirthCampaign(config, checkpoint, sink, pencils).run(resume)


def campaign_pentagonal(
    config: CampaignConfig,
    checkpoint: Optional[CheckpointManager] = None,
    sink: Optional[Callable[[SaturationRecord], None]] = None,
    pencils: Optional[Sequence[PencilRecord]] = None,
    resume: bool = True,
) -> CampaignReport:
    if config.kind != "pentagonal":
        raise PreconditionError("配置类型不是 pentagonal", {"kind": config.kind})
    return GirthCampaign(config, checkpoint, sink, pencils).run(resume)


def campaign_astral(
    config: CampaignConfig,
    checkpoint: Optional[CheckpointManager] = None,
    sink: Optional[Callable[[SaturationRecord], None]] = None,
    pencils: Optional[Sequence[PencilRecord]] = None,
    resume: bool = True,
) -> CampaignReport:
    if config.kind != "astral":
        raise PreconditionError("配置类型不是 astral", {"kind": config.kind})
    return GirthCampaign(config, checkpoint, sink, pencils).run(resume)


__all__ = [
    "QUAD_TABLE",
    "quad_table_check",
    "quad_max_completion",
    "pentagonal_max_completion",
    "astral_max_completion",
    "QuadFiberContext",
    "quad_lemma_check",
    "pentagonal_lemma_check",
    "astral_lemma_check",
    "girth_saturations",
    "admits_triangle_free_saturation",
    "CitedBound",
    "is_locally_elliptic",
    "locally_elliptic_bound",
    "Stage",
    "GirthPlan",
    "PLANS",
    "GirthNode",
    "DiscreteSearchResult",
    "discrete_supports",
    "DiscreteExtender",
    "quad_standard_graph",
    "GirthCampaign",
    "campaign_quadrangular",
    "campaign_pentagonal",
    "campaign_astral",
]
