#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
束目录模块

外部束列表（椭圆纤维化表）的读取与校验，以及 CI 用的小规模束生成：
- PencilRecord：纤维类型、束图、纤维顶点与来源
- load_catalog() / save_catalog()：JSONL 目录读写，读取时逐条重新校验
- generate_small_pencils()：按连通分支的多重集穷举小束

目录格式（每行一条记录）：
    {"version": 1, "fiber_type": "~A3", "graph": {"n": ..., "edges": [...]},
     "fiber": [0, 1, 2, 3], "source": "..."}

fiber 缺省时取第一个类型匹配的连通分支，按约定顺序排列（圈按循环顺序，星形以中心为首）。

Author: K3 Lines Team
Date: 2024
"""

import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, Field, ValidationError

from k3lines.admiss import BatteryMode, test_battery
from k3lines.core.exceptions import CatalogValidationError, GraphError, PreconditionError
from k3lines.fano import (
    PARABOLIC,
    ConfigGraph,
    DynkinLabel,
    canonical_form,
    classify_graph,
    dynkin_type,
    ordered_fiber,
)
from shared.utils.logger import get_logger

logger = get_logger(__name__)

CATALOG_VERSION = 1
SMALL_PENCIL_CAP = 14

_LABEL_RE = re.compile(r"^(~?)([ADE])(\d+)$")


# ==================== Dynkin 图 ====================


def parse_label(text: str) -> DynkinLabel:
    """"~A3" → 仿射 A₃，"D5" → D₅"""
    match = _LABEL_RE.match(text.strip())
    if match is None:
        raise GraphError("无法解析 Dynkin 类型", {"label": text})
    tilde, family, n = match.groups()
    label = DynkinLabel(family, int(n), affine=bool(tilde))
    minimum = {"A": 1, "D": 4, "E": 6}[family]
    if label.n < minimum or (family == "E" and label.n > 8) or (label.affine and family == "A" and label.n < 2):
        raise GraphError("Dynkin 类型不存在或不是简单图", {"label": text})
    return label


def _arms_graph(arms: Sequence[int]) -> ConfigGraph:
    """中心为顶点 0，各臂依次编号"""
    edges = []
    n = 1
    for length in arms:
        previous = 0
        for _ in range(length):
            edges.append((previous, n))
            previous = n
            n += 1
    return ConfigGraph.from_edges(n, edges)


def dynkin_graph(label: DynkinLabel) -> ConfigGraph:
    """类型 label 的标准实现（简单图；不含 ~A1）"""
    n = label.n
    if label.family == "A":
        return ConfigGraph.cycle(n + 1) if label.affine else ConfigGraph.path(n)
    if label.family == "D":
        if label.affine:
            if n == 4:
                return ConfigGraph.star(4)
            # 链 v₀…v_(n−2)，在 v₁ 与 v_(n−3) 各挂一片叶子
            edges = [(i, i + 1) for i in range(n - 2)] + [(1, n - 1), (n - 3, n)]
            return ConfigGraph.from_edges(n + 1, edges)
        return _arms_graph((1, 1, n - 3))
    arms = {
        (6, False): (1, 2, 2),
        (7, False): (1, 2, 3),
        (8, False): (1, 2, 4),
        (6, True): (2, 2, 2),
        (7, True): (1, 3, 3),
        (8, True): (1, 2, 5),
    }[(n, label.affine)]
    return _arms_graph(arms)


def _graph_size(label: DynkinLabel) -> int:
    return label.n + 1 if label.affine else label.n


def _component_labels(max_size: int) -> List[DynkinLabel]:
    labels = []
    for n in range(1, max_size + 1):
        labels.append(DynkinLabel("A", n))
        if n >= 4:
            labels.append(DynkinLabel("D", n))
        if 6 <= n <= 8:
            labels.append(DynkinLabel("E", n))
        if n >= 2:
            labels.append(DynkinLabel("A", n, affine=True))
        if n >= 4:
            labels.append(DynkinLabel("D", n, affine=True))
        if 6 <= n <= 8:
            labels.append(DynkinLabel("E", n, affine=True))
    fitting = [label for label in labels if _graph_size(label) <= max_size]
    return sorted(fitting, key=lambda label: (_graph_size(label), label.affine, str(label)))


# ==================== 记录 ====================


class PencilRecord(BaseModel):
    """一个束：纤维类型、束图（纤维与其正交顶点）、纤维顶点与来源"""

    version: int = Field(default=CATALOG_VERSION, description="目录格式版本")
    fiber_type: str = Field(..., description="纤维的仿射 Dynkin 类型，如 ~A3")
    graph: Dict[str, Any] = Field(..., description="束图 JSON")
    fiber: Optional[List[int]] = Field(default=None, description="纤维顶点（约定顺序）")
    source: str = Field(default="", description="数据来源标记")

    @property
    def label(self) -> DynkinLabel:
        return parse_label(self.fiber_type)

    @property
    def config_graph(self) -> ConfigGraph:
        return ConfigGraph.from_json(self.graph)

    @property
    def size(self) -> int:
        return int(self.graph.get("n", 0))

    def normalized(self) -> Tuple[ConfigGraph, Tuple[int, ...]]:
        """纤维顶点重新编号为 0, 1, …（保持约定顺序），其余顶点依次排在后面"""
        graph = self.config_graph
        fiber = list(self.fiber if self.fiber is not None else _derive_fiber(graph, self.label))
        rest = [v for v in range(graph.n) if v not in set(fiber)]
        return graph.induced(fiber + rest), tuple(range(len(fiber)))

    def validated(self, mode: BatteryMode = BatteryMode.SINGULAR, where: str = "<record>") -> "PencilRecord":
        """检查束图抛物、纤维类型与次几何性；返回补全 fiber 的记录"""
        context = {"record": where, "source": self.source}
        if self.version != CATALOG_VERSION:
            raise CatalogValidationError(
                "目录版本不匹配", {**context, "check": "version", "found": self.version}
            )
        try:
            label = self.label
            graph = self.config_graph
        except GraphError as exc:
            raise CatalogValidationError(f"记录无法解析: {exc.message}", {**context, "check": "parse"}) from exc
        if not label.affine:
            raise CatalogValidationError("纤维类型必须是仿射的", {**context, "check": "fiber_type"})
        try:
            kind = classify_graph(graph)
        except GraphError as exc:
            raise CatalogValidationError("束图不是抛物的", {**context, "check": "parabolic"}) from exc
        if kind != PARABOLIC:
            raise CatalogValidationError("束图不是抛物的", {**context, "check": "parabolic", "class": kind})

        fiber = list(self.fiber) if self.fiber is not None else _derive_fiber(graph, label)
        _check_fiber(graph, fiber, label, context)

        verdict = test_battery(graph, mode)
        if not verdict.subgeometric:
            raise CatalogValidationError(
                "束的极化实现不是次几何的",
                {**context, "check": "subgeometric", "failed_test": verdict.failed_test},
            )
        return self.model_copy(update={"fiber": fiber})


def _derive_fiber(graph: ConfigGraph, label: DynkinLabel) -> List[int]:
    for comp in sorted(nx.connected_components(graph.to_networkx()), key=min):
        vertices = sorted(comp)
        try:
            if dynkin_type(graph.induced(vertices)) == label:
                return ordered_fiber(graph, vertices)
        except GraphError:
            continue
    raise CatalogValidationError("束图中没有所述类型的纤维", {"check": "fiber", "fiber_type": str(label)})


def _check_fiber(graph: ConfigGraph, fiber: Sequence[int], label: DynkinLabel, context: Dict[str, Any]) -> None:
    members = set(fiber)
    if len(members) != len(fiber) or not all(0 <= v < graph.n for v in fiber):
        raise CatalogValidationError("纤维顶点非法", {**context, "check": "fiber", "fiber": list(fiber)})
    try:
        found = dynkin_type(graph.induced(list(fiber)))
    except GraphError as exc:
        raise CatalogValidationError("纤维不是仿射 Dynkin 图", {**context, "check": "fiber"}) from exc
    if found != label:
        raise CatalogValidationError(
            "纤维类型与声明不符", {**context, "check": "fiber", "declared": str(label), "found": str(found)}
        )
    # 束中其余顶点与纤维正交
    if any(graph.adj[v][c] for v in range(graph.n) if v not in members for c in fiber):
        raise CatalogValidationError("束中有顶点与纤维相交", {**context, "check": "fiber"})


# ==================== 读写 ====================


def load_catalog(
    path: Union[str, Path], mode: BatteryMode = BatteryMode.SINGULAR
) -> List[PencilRecord]:
    """读取 JSONL 目录并逐条校验"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogValidationError(f"无法读取目录: {exc}", {"path": str(path), "check": "io"}) from exc
    records: List[PencilRecord] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        where = f"{path.name}:{lineno}"
        try:
            record = PencilRecord.model_validate_json(line)
        except ValidationError as exc:
            raise CatalogValidationError(
                "目录记录格式错误",
                {"record": where, "check": "parse", "errors": exc.errors(include_url=False, include_context=False)},
            ) from exc
        records.append(record.validated(mode, where))
    logger.info("catalog loaded", path=str(path), records=len(records))
    return records


def save_catalog(path: Union[str, Path], records: Iterable[PencilRecord]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record.model_dump_json() + "\n")
            count += 1
    logger.info("catalog saved", path=str(path), records=count)
    return count


# ==================== 小规模生成 ====================


def _multisets(labels: List[DynkinLabel], budget: int, start: int = 0) -> Iterable[Tuple[DynkinLabel, ...]]:
    yield ()
    for i in range(start, len(labels)):
        size = _graph_size(labels[i])
        if size > budget:
            continue
        for rest in _multisets(labels, budget - size, i):
            yield (labels[i],) + rest


def generate_small_pencils(
    fiber_type: Union[str, DynkinLabel],
    max_size: int,
    mode: BatteryMode = BatteryMode.SINGULAR,
) -> List[PencilRecord]:
    """纤维类型固定、至多 max_size 个顶点的全部束（同构去重并逐个校验）

    其余分支取椭圆或仿射 Dynkin 图；~A1 不是简单图，不出现。
    """
    label = parse_label(fiber_type) if isinstance(fiber_type, str) else fiber_type
    if max_size > SMALL_PENCIL_CAP:
        raise PreconditionError("小规模束生成的大小上限为 14", {"max_size": max_size})
    if not label.affine:
        raise PreconditionError("纤维类型必须是仿射的", {"fiber_type": str(label)})
    fiber_graph = dynkin_graph(label)
    fiber = ordered_fiber(fiber_graph, list(range(fiber_graph.n)))
    budget = max_size - fiber_graph.n
    if budget < 0:
        return []

    seen = set()
    records: List[PencilRecord] = []
    for combo in _multisets(_component_labels(budget), budget):
        graph = fiber_graph.induced(fiber)
        for component in combo:
            graph = graph.disjoint_union(dynkin_graph(component))
        key = canonical_form(graph, setwise=[list(range(len(fiber)))]).certificate
        if key in seen:
            continue
        seen.add(key)
        if not test_battery(graph, mode).subgeometric:
            continue
        source = "generated:" + "+".join([str(label)] + [str(c) for c in combo])
        records.append(
            PencilRecord(fiber_type=str(label), graph=graph.to_json(), fiber=list(range(len(fiber))), source=source)
        )
    logger.info("small pencils generated", fiber_type=str(label), max_size=max_size, pencils=len(records))
    return records


__all__ = [
    "CATALOG_VERSION",
    "PencilRecord",
    "load_catalog",
    "save_catalog",
    "generate_small_pencils",
    "parse_label",
    "dynkin_graph",
]
