#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
多截线扩张模块

用给定模式 θ 扩张次几何图 Γ₀：
- 截线以其支撑 supp v = {u ∈ Γ₀ : u·v = 1} 表示
- 预先计算 Sec₁ 与 A₂、Ã₂、2A₁、A₃ 各类多截线列表
- 按 Ã₂ > A₃ > A₂ > A₁ 的顺序逐个添加整条多截线，每步只保留可接受图，
  每个约束自同构轨道只检验一个代表元，步末按同构类去重
- 秩 20 的中间图转入饱和列表采集，不再留在前沿
- 激进模式：只添加提升秩的两两不交顶点

Author: K3 Lines Team
Date: 2024
"""

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
)

import networkx as nx

from k3lines.admiss import (
    BatteryMode,
    BatteryVerdict,
    SaturationRecord,
    interesting_predicate,
    saturation_list,
    test_battery,
    triangular_lemma_check,
)
from k3lines.canon import Permutation
from k3lines.core.exceptions import PatternError, PreconditionError
from k3lines.core.executor import parallel_map
from k3lines.fano import (
    PARABOLIC,
    ConfigGraph,
    Pattern,
    canonical_form,
    classify_graph,
    decompose_pencil,
    graph_rank,
    kappa,
)
from shared.utils.logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")

Support = FrozenSet[int]
PairKey = Tuple[Tuple[int, ...], Tuple[int, ...]]

TILDE_A2 = "~A2"
A3 = "A3"
A2 = "A2"
A1 = "A1"
KINDS: Tuple[str, ...] = (TILDE_A2, A3, A2, A1)
_DISJOINT_PAIR = "2A1"

_KIND_EDGES: Dict[str, Tuple[Tuple[int, int], ...]] = {
    TILDE_A2: ((0, 1), (1, 2), (0, 2)),
    A3: ((0, 1), (1, 2)),
    A2: ((0, 1),),
    A1: (),
    _DISJOINT_PAIR: (),
}
_KIND_UNIT: Dict[str, Pattern] = {
    TILDE_A2: Pattern(1, 0, 0, 0),
    A3: Pattern(0, 1, 0, 0),
    A2: Pattern(0, 0, 1, 0),
    A1: Pattern(0, 0, 0, 1),
}

ACCEPT = "accept"
HARVEST = "harvest"
REJECT = "reject"


def _support_key(support: Iterable[int]) -> Tuple[int, ...]:
    return tuple(sorted(support))


def pair_key(s: Support, t: Support) -> PairKey:
    a, b = _support_key(s), _support_key(t)
    return (a, b) if a <= b else (b, a)


def pattern_kinds(pattern: Pattern) -> List[str]:
    """模式的分支类型序列，按 Ã₂, A₃, A₂, A₁ 排列"""
    return [kind for kind, count in zip(KINDS, pattern.quadruple) for _ in range(count)]


def next_kind(pattern: Pattern) -> Optional[str]:
    for kind, count in zip(KINDS, pattern.quadruple):
        if count:
            return kind
    return None


def kind_unit(kind: str) -> Pattern:
    return _KIND_UNIT[kind]


# ==================== 多截线 ====================


@dataclass(frozen=True)
class Polysection:
    """一条多截线：类型与各顶点的支撑（已规范化顺序）"""

    kind: str
    supports: Tuple[Support, ...]

    @classmethod
    def make(cls, kind: str, supports: Sequence[Iterable[int]]) -> "Polysection":
        keys = [_support_key(s) for s in supports]
        if kind in (TILDE_A2, A2, _DISJOINT_PAIR):
            keys.sort()
        elif kind == A3:
            keys = min(keys, keys[::-1])
        expected = 3 if kind in (TILDE_A2, A3) else 2 if kind in (A2, _DISJOINT_PAIR) else 1
        if len(keys) != expected:
            raise PatternError("多截线顶点数与类型不符", {"kind": kind, "size": len(keys)})
        return cls(kind, tuple(frozenset(k) for k in keys))

    def image(self, gamma: Permutation) -> "Polysection":
        return Polysection.make(self.kind, [[gamma[u] for u in s] for s in self.supports])

    def attach(self, graph: ConfigGraph) -> ConfigGraph:
        base = graph.n
        result = graph
        for k, support in enumerate(self.supports):
            mults = {u: 1 for u in support}
            for a, b in _KIND_EDGES[self.kind]:
                if b == k:
                    mults[base + a] = 1
            result = result.add_vertex(mults)
        return result

    @property
    def sort_key(self) -> Tuple[str, Tuple[Tuple[int, ...], ...]]:
        return (self.kind, tuple(_support_key(s) for s in self.supports))

    def to_json(self) -> Dict[str, object]:
        return {"kind": self.kind, "supports": [list(_support_key(s)) for s in self.supports]}


# ==================== 约束与搜索节点 ====================


@dataclass(frozen=True)
class Constraint:
    """约束同构：纤维整体不变，pointwise 中的边逐点固定；fixed 为 s ∩ F"""

    fiber: Tuple[int, ...]
    fixed: Tuple[int, ...] = ()
    pointwise: Tuple[int, ...] = ()
    blocked: Tuple[int, ...] = ()

    @classmethod
    def for_fixed(
        cls, fiber: Sequence[int], fixed: Sequence[int] = (), blocked: Sequence[int] = ()
    ) -> "Constraint":
        """blocked 中的顶点（如光滑情形的 c₀）不出现在支撑中且逐点固定"""
        fiber = tuple(fiber)
        fixed = tuple(fixed)
        blocked = tuple(blocked)
        if any(c not in fiber for c in fixed):
            raise PreconditionError("fixed 必须是纤维的子集", {"fiber": list(fiber), "fixed": list(fixed)})
        pointwise = tuple(dict.fromkeys((fiber[0],) + fixed + blocked))
        return cls(fiber, fixed, pointwise, blocked)


@dataclass(frozen=True)
class SearchNode:
    """搜索中的图：前 base_size 个顶点为 Γ₀，其后为已添加的多截线"""

    graph: ConfigGraph
    fiber: Tuple[int, ...]
    base_size: int
    provenance: Tuple[Polysection, ...] = ()

    @classmethod
    def root(cls, graph: ConfigGraph, fiber: Sequence[int] = (0, 1, 2)) -> "SearchNode":
        return cls(graph, tuple(fiber), graph.n)

    @property
    def added_supports(self) -> List[Support]:
        return [s for poly in self.provenance for s in poly.supports]

    @property
    def added_pattern(self) -> Pattern:
        total = Pattern()
        for poly in self.provenance:
            total = total + _KIND_UNIT[poly.kind]
        return total

    def child(self, poly: Polysection, graph: Optional[ConfigGraph] = None) -> "SearchNode":
        return SearchNode(
            graph if graph is not None else poly.attach(self.graph),
            self.fiber,
            self.base_size,
            self.provenance + (poly,),
        )

    def rebase(self) -> "SearchNode":
        """把当前图作为新的 Γ₀"""
        return SearchNode(self.graph, self.fiber, self.graph.n)

    def canonical(self, constraint: Constraint):  # type: ignore[no-untyped-def]
        return canonical_form(
            self.graph,
            setwise=[self.fiber, list(range(self.base_size))],
            pointwise=constraint.pointwise,
        )

    def key(self, constraint: Constraint) -> bytes:
        return self.canonical(constraint).certificate


# ==================== 轨道 ====================


def orbit_representatives(
    items: Sequence[T],
    generators: Sequence[Permutation],
    act: Callable[[T, Permutation], T],
) -> List[Tuple[T, List[T]]]:
    """每个轨道给出 (代表元, 轨道在 items 中的部分)"""
    pool = set(items)
    seen: Set[T] = set()
    result: List[Tuple[T, List[T]]] = []
    for item in items:
        if item in seen:
            continue
        orbit = {item}
        queue = deque([item])
        while queue:
            current = queue.popleft()
            for gamma in generators:
                image = act(current, gamma)
                if image not in orbit:
                    orbit.add(image)
                    queue.append(image)
        seen |= orbit
        members = [x for x in items if x in orbit and x in pool]
        result.append((item, members))
    return result


def _act_on_support(support: Support, gamma: Permutation) -> Support:
    return frozenset(gamma[u] for u in support)


# ==================== 截线支撑 ====================


def pencil_components(graph: ConfigGraph, fiber: Sequence[int]) -> Tuple[Set[int], List[Tuple[List[int], Optional[Tuple[int, ...]]]]]:
    """束中纤维以外的分支；抛物分支附带 κ"""
    decomposition = decompose_pencil(graph, fiber)
    rest = [v for v in decomposition.pencil if v not in fiber]
    components: List[Tuple[List[int], Optional[Tuple[int, ...]]]] = []
    if rest:
        nxg = graph.induced(rest).to_networkx()
        for comp in sorted(nx.connected_components(nxg), key=min):
            vertices = [rest[i] for i in sorted(comp)]
            sub = graph.induced(vertices)
            weights = kappa(sub) if classify_graph(sub) == PARABOLIC else None
            components.append((vertices, weights))
    return set(rest), components


def candidate_supports(
    graph: ConfigGraph,
    fiber: Sequence[int],
    fixed: Sequence[int] = (),
    max_support: Optional[int] = None,
    extra_blocked: Sequence[int] = (),
) -> List[Support]:
    """CS(Γ₀) = {s ⊂ Γ₀ : s ∩ F = fixed}

    fixed 为空时新顶点属于束，不与束中已有顶点相交；否则新顶点是
    重数 m = Σ κ(c)（c ∈ fixed）的截线，不与已有的同类截线相交，并且对束的
    每个抛物分支 κ 加权交数恰为 m，对椭圆分支至多 m 个顶点。
    """
    fiber = tuple(fiber)
    fixed_set = set(fixed)
    weights = dict(zip(fiber, kappa(graph.induced(fiber))))
    m = sum(weights[c] for c in fixed_set)
    decomposition = decompose_pencil(graph, fiber)
    pencil_rest, components = pencil_components(graph, fiber)

    if not fixed_set:
        blocked = pencil_rest
        choices: List[List[Tuple[int, ...]]] = []
    else:
        # 已有的同类截线
        same = {
            v
            for v in decomposition.sec_star
            if {c for c in fiber if graph.adj[v][c]} == fixed_set
            and all(graph.adj[v][c] == 1 for c in fixed_set)
        }
        blocked = pencil_rest | same
        choices = []
        for vertices, comp_weights in components:
            options: List[Tuple[int, ...]] = []
            index = {v: i for i, v in enumerate(vertices)}
            for r in range(len(vertices) + 1):
                for subset in itertools.combinations(vertices, r):
                    if comp_weights is not None:
                        if sum(comp_weights[index[v]] for v in subset) == m:
                            options.append(subset)
                    elif r <= m:
                        options.append(subset)
            choices.append(options)

    blocked = set(blocked) | set(extra_blocked)
    free = [v for v in range(graph.n) if v not in fiber and v not in blocked]
    limit = max_support if max_support is not None else graph.n
    result: List[Support] = []
    for combo in itertools.product(*choices) if choices else [()]:
        core = set(fixed_set)
        for part in combo:
            core.update(part)
        room = limit - len(core)
        if room < 0:
            continue
        for r in range(min(room, len(free)) + 1):
            for extra in itertools.combinations(free, r):
                result.append(frozenset(core.union(extra)))
    result.sort(key=lambda s: (len(s), _support_key(s)))
    return result


def section_supports(
    graph: ConfigGraph,
    constraint: Constraint,
    max_support: Optional[int] = None,
) -> List[Tuple[Support, List[Support]]]:
    """CS(Γ₀) 在约束自同构群下的轨道代表元及其轨道"""
    supports = candidate_supports(graph, constraint.fiber, constraint.fixed, max_support, constraint.blocked)
    generators = canonical_form(graph, setwise=[constraint.fiber], pointwise=constraint.pointwise).generators
    return orbit_representatives(supports, generators, _act_on_support)


# ==================== 采集 ====================


class Harvester:
    """饱和列表采集，按规范键去重

    harvest() 处理秩 20 的图；observe() 处理激进模式中秩较低的中间图，
    其饱和单独记录。begin_unit() 之后 unit_keys 记录当前工作单元触及的记录，
    与此前的单元是否已经见过无关。
    """

    def __init__(
        self,
        mode: BatteryMode = BatteryMode.SINGULAR,
        min_lines: Optional[int] = None,
        min_exceptional: Optional[int] = None,
        sink: Optional[Callable[[SaturationRecord], None]] = None,
    ):
        self.mode = mode
        self.predicate = interesting_predicate(min_lines, min_exceptional)
        self.sink = sink
        self.records: Dict[str, SaturationRecord] = {}
        self.intermediate: Dict[str, SaturationRecord] = {}
        self._by_graph: Dict[str, List[SaturationRecord]] = {}
        self.unit_keys: Set[str] = set()
        self.unit_intermediate: Set[str] = set()

    def begin_unit(self) -> None:
        self.unit_keys = set()
        self.unit_intermediate = set()

    def _saturations(self, graph: ConfigGraph, full_rank: bool) -> List[SaturationRecord]:
        key = canonical_form(graph).key + (":20" if full_rank else ":low")
        cached = self._by_graph.get(key)
        if cached is None:
            cached = saturation_list(graph, self.predicate, self.mode, require_full_rank=full_rank)
            self._by_graph[key] = cached
        return cached

    def harvest(self, graph: ConfigGraph) -> List[SaturationRecord]:
        """秩 20 图的全部有趣饱和"""
        records = self._saturations(graph, True)
        fresh = 0
        for record in records:
            self.unit_keys.add(record.key)
            if record.key in self.records:
                continue
            self.records[record.key] = record
            fresh += 1
            if self.sink is not None:
                self.sink(record)
        if fresh:
            logger.info(
                "saturations harvested",
                new=fresh,
                max_lines=max(r.line_count for r in records),
                total=len(self.records),
            )
        return records

    def observe(self, graph: ConfigGraph) -> List[SaturationRecord]:
        """秩低于 20 的中间图的饱和"""
        records = self._saturations(graph, False)
        for record in records:
            self.unit_intermediate.add(record.key)
            self.intermediate.setdefault(record.key, record)
        return records

    def sorted_records(self, keys: Optional[Iterable[str]] = None) -> List[SaturationRecord]:
        pool = self.records.values() if keys is None else [self.records[k] for k in keys]
        return sorted(pool, key=lambda r: (-r.line_count, -r.exceptional_count, r.key))

    def sorted_intermediate(self, keys: Optional[Iterable[str]] = None) -> List[SaturationRecord]:
        pool = self.intermediate.values() if keys is None else [self.intermediate[k] for k in keys]
        return sorted(pool, key=lambda r: (-r.line_count, -r.exceptional_count, r.key))


def battery_task(task: Tuple[ConfigGraph, str]) -> BatteryVerdict:
    graph, mode = task
    return test_battery(graph, BatteryMode(mode))


def triage(verdict: BatteryVerdict) -> str:
    if verdict.acceptable:
        return ACCEPT
    if verdict.subgeometric and verdict.rank == 20:
        return HARVEST
    return REJECT


# ==================== 截线列表 ====================


@dataclass(frozen=True)
class SectionLists:
    """Sec₁(Γ₀) 及各类多截线列表；2A₁ 对用于不同多截线之间的相容检查"""

    sec1: Tuple[Support, ...]
    pairs_a2: FrozenSet[PairKey] = frozenset()
    pairs_2a1: Optional[FrozenSet[PairKey]] = None
    polysections: Mapping[str, Tuple[Polysection, ...]] = field(default_factory=dict)

    def restrict(self, kind: str, members: Iterable[Polysection]) -> "SectionLists":
        updated = dict(self.polysections)
        updated[kind] = tuple(sorted(set(members), key=lambda p: p.sort_key))
        return SectionLists(self.sec1, self.pairs_a2, self.pairs_2a1, updated)

    def compatible(self, added: Sequence[Support], poly: Polysection) -> bool:
        if self.pairs_2a1 is None or not added:
            return True
        return all(pair_key(u, v) in self.pairs_2a1 for u in added for v in poly.supports)


@dataclass
class ExtensionResult:
    """extend_by_set 的结果；ample 为真表示 (Γ₀, θ) 无可接受代表"""

    pattern: Pattern
    survivors: List[SearchNode]
    ample: bool
    failed_step: Optional[int] = None
    nodes_evaluated: int = 0

    def to_json(self) -> Dict[str, object]:
        return {
            "pattern": self.pattern.to_json(),
            "ample": self.ample,
            "failed_step": self.failed_step,
            "survivors": len(self.survivors),
            "nodes_evaluated": self.nodes_evaluated,
        }


@dataclass
class AggressiveResult:
    harvested: List[SaturationRecord]
    intermediate: List[SaturationRecord]
    nodes_evaluated: int = 0


# ==================== 扩张器 ====================


class TriangularExtender:
    """三角纤维的多截线扩张器

    Args:
        mode: 检验组合模式
        harvester: 秩 20 图的采集器
        max_support: 截线支撑大小上限（None 为不限）
        workers: 候选检验的并行进程数
        check_lemmas: 对接受的图运行三角形引理检查
    """

    def __init__(
        self,
        mode: BatteryMode = BatteryMode.SINGULAR,
        harvester: Optional[Harvester] = None,
        max_support: Optional[int] = None,
        workers: Optional[int] = None,
        check_lemmas: bool = True,
    ):
        self.mode = mode
        self.harvester = harvester or Harvester(mode)
        self.max_support = max_support
        self.workers = workers
        self.check_lemmas = check_lemmas
        self.nodes_evaluated = 0

    # ---------- 检验 ----------

    def evaluate(self, graphs: Sequence[ConfigGraph]) -> List[str]:
        verdicts = parallel_map(battery_task, [(g, self.mode.value) for g in graphs], self.workers)
        self.nodes_evaluated += len(graphs)
        outcomes = []
        for graph, verdict in zip(graphs, verdicts):
            outcome = triage(verdict)
            if outcome == HARVEST:
                self.harvester.harvest(graph)
            outcomes.append(outcome)
        return outcomes

    def _check(self, node: SearchNode) -> None:
        if self.check_lemmas and len(node.fiber) == 3:
            triangular_lemma_check(node.graph, node.fiber)

    def _filter(
        self, graph: ConfigGraph, candidates: Sequence[T], build: Callable[[T], ConfigGraph], act: Callable[[T, Permutation], T], constraint: Constraint
    ) -> List[T]:
        """在 Γ₀ 上检验候选的轨道代表元，返回通过者的完整轨道"""
        generators = canonical_form(graph, setwise=[constraint.fiber], pointwise=constraint.pointwise).generators
        reps = orbit_representatives(candidates, generators, act)
        outcomes = self.evaluate([build(rep) for rep, _ in reps])
        accepted: List[T] = []
        for (_, orbit), outcome in zip(reps, outcomes):
            if outcome == ACCEPT:
                accepted.extend(orbit)
        return accepted

    # ---------- 预计算 ----------

    def precompute_section_sets(
        self,
        node: SearchNode,
        constraint: Constraint,
        kinds: Iterable[str] = KINDS,
        with_pairs: bool = True,
    ) -> SectionLists:
        """Sec₁(Γ₀) 以及所需类型的多截线列表"""
        graph = node.graph
        kinds = set(kinds)
        supports = candidate_supports(
            graph, constraint.fiber, constraint.fixed, self.max_support, constraint.blocked
        )

        def single(s: Support) -> ConfigGraph:
            return graph.add_vertex(s)

        sec1 = self._filter(graph, supports, single, _act_on_support, constraint)
        sec1.sort(key=lambda s: (len(s), _support_key(s)))
        polysections: Dict[str, Tuple[Polysection, ...]] = {}
        if A1 in kinds:
            polysections[A1] = tuple(Polysection.make(A1, [s]) for s in sec1)

        def act(p: Polysection, gamma: Permutation) -> Polysection:
            return p.image(gamma)

        def build(p: Polysection) -> ConfigGraph:
            return p.attach(graph)

        need_a2 = bool(kinds & {A2, TILDE_A2, A3})
        pairs_a2: FrozenSet[PairKey] = frozenset()
        if need_a2:
            candidates = sorted(
                {Polysection.make(A2, [s, t]) for s, t in itertools.combinations_with_replacement(sec1, 2)},
                key=lambda p: p.sort_key,
            )
            accepted = self._filter(graph, candidates, build, act, constraint)
            polysections[A2] = tuple(sorted(accepted, key=lambda p: p.sort_key))
            pairs_a2 = frozenset(pair_key(*p.supports) for p in accepted)

        pairs_2a1: Optional[FrozenSet[PairKey]] = None
        if with_pairs or A3 in kinds:
            candidates = sorted(
                {
                    Polysection.make(_DISJOINT_PAIR, [s, t])
                    for s, t in itertools.combinations_with_replacement(sec1, 2)
                },
                key=lambda p: p.sort_key,
            )
            accepted = self._filter(graph, candidates, build, act, constraint)
            pairs_2a1 = frozenset(pair_key(*p.supports) for p in accepted)

        if TILDE_A2 in kinds:
            candidates = sorted(
                {
                    Polysection.make(TILDE_A2, triple)
                    for triple in itertools.combinations_with_replacement(sec1, 3)
                    if all(pair_key(a, b) in pairs_a2 for a, b in itertools.combinations(triple, 2))
                },
                key=lambda p: p.sort_key,
            )
            polysections[TILDE_A2] = tuple(
                sorted(self._filter(graph, candidates, build, act, constraint), key=lambda p: p.sort_key)
            )

        if A3 in kinds:
            assert pairs_2a1 is not None
            found = set()
            for s, t, u in itertools.product(sec1, repeat=3):
                if (
                    pair_key(s, t) in pairs_a2
                    and pair_key(t, u) in pairs_a2
                    and pair_key(s, u) in pairs_2a1
                ):
                    found.add(Polysection.make(A3, [s, t, u]))
            candidates = sorted(found, key=lambda p: p.sort_key)
            polysections[A3] = tuple(
                sorted(self._filter(graph, candidates, build, act, constraint), key=lambda p: p.sort_key)
            )

        logger.debug(
            "section sets computed",
            base=graph.n,
            sec1=len(sec1),
            **{k: len(v) for k, v in polysections.items()},
        )
        return SectionLists(tuple(sec1), pairs_a2, pairs_2a1, polysections)

    # ---------- 单步 ----------

    def expand(
        self, node: SearchNode, kind: str, lists: SectionLists, constraint: Constraint
    ) -> Tuple[List[SearchNode], SectionLists]:
        """Γₙ₋₁ 添加一条 kind 型多截线的全部可接受结果（每个轨道一个）"""
        added = node.added_supports
        candidates = [p for p in lists.polysections.get(kind, ()) if lists.compatible(added, p)]
        if not candidates:
            return [], lists.restrict(kind, ())
        generators = node.canonical(constraint).generators

        def act(p: Polysection, gamma: Permutation) -> Polysection:
            return p.image(gamma)

        reps = orbit_representatives(candidates, generators, act)
        graphs = [rep.attach(node.graph) for rep, _ in reps]
        outcomes = self.evaluate(graphs)
        children: List[SearchNode] = []
        accepted: List[Polysection] = []
        for (rep, orbit), graph, outcome in zip(reps, graphs, outcomes):
            if outcome != ACCEPT:
                continue
            child = node.child(rep, graph)
            self._check(child)
            children.append(child)
            accepted.extend(orbit)
        return children, lists.restrict(kind, accepted)

    # ---------- 整个模式 ----------

    def extend_by_set(
        self,
        node: SearchNode,
        pattern: Pattern,
        constraint: Constraint,
        lists: Optional[SectionLists] = None,
    ) -> ExtensionResult:
        kinds = pattern_kinds(pattern)
        start = self.nodes_evaluated
        if not kinds:
            return ExtensionResult(pattern, [node], ample=False)
        if lists is None:
            lists = self.precompute_section_sets(node, constraint, set(kinds), with_pairs=len(kinds) > 1)
        for kind in set(kinds):
            if not lists.polysections.get(kind):
                return ExtensionResult(
                    pattern, [], ample=True, failed_step=1, nodes_evaluated=self.nodes_evaluated - start
                )

        frontier: List[Tuple[SearchNode, SectionLists]] = [(node, lists)]
        for step, kind in enumerate(kinds, 1):
            merged: Dict[bytes, Tuple[SearchNode, SectionLists]] = {}
            for current, current_lists in frontier:
                children, child_lists = self.expand(current, kind, current_lists, constraint)
                for child in children:
                    merged.setdefault(child.key(constraint), (child, child_lists))
            frontier = [merged[k] for k in sorted(merged)]
            logger.debug("extension step finished", pattern=str(pattern), step=step, frontier=len(frontier))
            if not frontier:
                return ExtensionResult(
                    pattern,
                    [],
                    ample=True,
                    failed_step=step,
                    nodes_evaluated=self.nodes_evaluated - start,
                )
        return ExtensionResult(
            pattern,
            [n for n, _ in frontier],
            ample=False,
            nodes_evaluated=self.nodes_evaluated - start,
        )

    # ---------- 激进模式 ----------

    def aggressive_extend(
        self, node: SearchNode, constraint: Constraint, budget: Optional[int] = None
    ) -> AggressiveResult:
        """只添加两两不交且提升秩的顶点，检查所有中间图（含 Γ₀）的饱和列表"""
        rank = graph_rank(node.graph)
        if rank not in (18, 19):
            raise PreconditionError("激进模式要求秩 18 或 19", {"rank": rank})
        budget = budget if budget is not None else 20 - rank
        start = self.nodes_evaluated
        harvested: Dict[str, SaturationRecord] = {}
        intermediate: Dict[str, SaturationRecord] = {}

        for rec in self.harvester.observe(node.graph):
            intermediate.setdefault(rec.key, rec)
        supports = candidate_supports(
            node.graph, constraint.fiber, constraint.fixed, self.max_support, constraint.blocked
        )
        candidates = [Polysection.make(A1, [s]) for s in supports]
        frontier: List[Tuple[SearchNode, int]] = [(node, rank)]
        for _ in range(budget):
            merged: Dict[bytes, Tuple[SearchNode, int]] = {}
            for current, current_rank in frontier:
                generators = current.canonical(constraint).generators
                reps = orbit_representatives(candidates, generators, lambda p, g: p.image(g))
                raised = []
                for rep, _ in reps:
                    graph = rep.attach(current.graph)
                    new_rank = graph_rank(graph)
                    if new_rank > current_rank:
                        raised.append((rep, graph, new_rank))
                outcomes = self.evaluate([g for _, g, _ in raised])
                for (rep, graph, new_rank), outcome in zip(raised, outcomes):
                    if outcome == HARVEST:
                        for rec in self.harvester.harvest(graph):
                            harvested.setdefault(rec.key, rec)
                    elif outcome == ACCEPT:
                        child = current.child(rep, graph)
                        for rec in self.harvester.observe(graph):
                            intermediate.setdefault(rec.key, rec)
                        merged.setdefault(child.key(constraint), (child, new_rank))
            frontier = [merged[k] for k in sorted(merged)]
            if not frontier:
                break
        return AggressiveResult(
            harvested=sorted(harvested.values(), key=lambda r: (-r.line_count, -r.exceptional_count, r.key)),
            intermediate=sorted(intermediate.values(), key=lambda r: (-r.line_count, -r.exceptional_count, r.key)),
            nodes_evaluated=self.nodes_evaluated - start,
        )


def extend_by_set(
    graph: ConfigGraph,
    pattern: Pattern,
    fiber: Sequence[int] = (0, 1, 2),
    fixed: Sequence[int] = (),
    mode: BatteryMode = BatteryMode.SINGULAR,
    max_support: Optional[int] = None,
) -> ExtensionResult:
    """便捷入口：以 graph 为 Γ₀、fixed ⊂ F 为 s ∩ F 扩张"""
    extender = TriangularExtender(mode=mode, max_support=max_support)
    constraint = Constraint.for_fixed(fiber, fixed)
    return extender.extend_by_set(SearchNode.root(graph, fiber), pattern, constraint)


__all__ = [
    "KINDS",
    "TILDE_A2",
    "A3",
    "A2",
    "A1",
    "Polysection",
    "Constraint",
    "SearchNode",
    "SectionLists",
    "ExtensionResult",
    "AggressiveResult",
    "Harvester",
    "TriangularExtender",
    "candidate_supports",
    "pencil_components",
    "battery_task",
    "section_supports",
    "orbit_representatives",
    "pattern_kinds",
    "next_kind",
    "kind_unit",
    "pair_key",
    "triage",
    "extend_by_set",
]
