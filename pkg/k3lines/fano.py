#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
配置图模块

直线配置图 Γ 及其格论不变量：
- ConfigGraph：带边重数、可双着色的多重图，JSON 读写
- fano_lattice()：Fano(Γ) = (ZΓ + Zh)/ker 及各顶点的像
- classify_graph()：椭圆 / 抛物 / 双曲
- dynkin_type()：Dynkin 与仿射 Dynkin 图的识别
- kappa()、decompose_pencil()：纤维的核向量、束与截线集合
- pattern_of_delta_set()：Δ-集合的系数四元组
- canonical_form()：带约束的规范形与自同构群

Author: K3 Lines Team
Date: 2024
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx

from k3lines.canon import CanonicalForm
from k3lines.canon import canonical_form as _canonical_form
from k3lines.core.exceptions import (
    GraphError,
    NotHyperbolicError,
    NotParabolicError,
    PatternError,
)
from k3lines.intlat import (
    GramLattice,
    IntVector,
    PolarizedLattice,
    kernel_basis,
    signature,
    smith_normal_form,
)

ELLIPTIC = "elliptic"
PARABOLIC = "parabolic"
HYPERBOLIC = "hyperbolic"

_FAMILY_ORDER = {"A": 0, "D": 1, "E": 2}


# ==================== 配置图 ====================


@dataclass(frozen=True)
class ConfigGraph:
    """直线配置图：adj 为边重数矩阵，colors 中 1 为直线、0 为例外除子"""

    n: int
    adj: Tuple[Tuple[int, ...], ...]
    colors: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        adj = tuple(tuple(int(x) for x in row) for row in self.adj)
        object.__setattr__(self, "adj", adj)
        if len(adj) != self.n or any(len(row) != self.n for row in adj):
            raise GraphError("邻接矩阵维数与顶点数不符", {"n": self.n})
        for i in range(self.n):
            if adj[i][i]:
                raise GraphError("邻接矩阵对角元必须为零", {"vertex": i})
            for j in range(i):
                if adj[i][j] != adj[j][i] or adj[i][j] < 0:
                    raise GraphError("邻接矩阵必须对称且非负", {"edge": [j, i]})
        if self.colors is not None:
            colors = tuple(int(c) for c in self.colors)
            if len(colors) != self.n or any(c not in (0, 1) for c in colors):
                raise GraphError("顶点颜色必须取 0 或 1")
            object.__setattr__(self, "colors", None if all(colors) else colors)

    # ---------- 构造 ----------

    @classmethod
    def empty(cls) -> "ConfigGraph":
        return cls(0, ())

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        colors: Optional[Sequence[int]] = None,
    ) -> "ConfigGraph":
        adj = [[0] * n for _ in range(n)]
        for edge in edges:
            i, j = int(edge[0]), int(edge[1])
            mult = int(edge[2]) if len(edge) > 2 else 1
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise GraphError("非法的边", {"edge": list(edge)})
            adj[i][j] = adj[j][i] = mult
        return cls(n, tuple(tuple(r) for r in adj), tuple(colors) if colors is not None else None)

    @classmethod
    def cycle(cls, k: int) -> "ConfigGraph":
        return cls.from_edges(k, [(i, (i + 1) % k) for i in range(k)])

    @classmethod
    def path(cls, k: int) -> "ConfigGraph":
        return cls.from_edges(k, [(i, i + 1) for i in range(k - 1)])

    @classmethod
    def star(cls, leaves: int) -> "ConfigGraph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete(cls, k: int) -> "ConfigGraph":
        return cls.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])

    @classmethod
    def from_json(cls, data: Union[str, Mapping[str, Any]]) -> "ConfigGraph":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls.from_edges(int(data["n"]), data.get("edges", []), data.get("colors"))
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"无法解析图 JSON: {exc}") from exc

    @classmethod
    def load(cls, path: Union[str, Path]) -> "ConfigGraph":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.colors is not None:
            data["colors"] = list(self.colors)
        return data

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(json.dumps(self.to_json()), encoding="utf-8")

    # ---------- 查询 ----------

    def color(self, v: int) -> int:
        return 1 if self.colors is None else self.colors[v]

    def edges(self) -> List[Tuple[int, int, int]]:
        return [
            (i, j, self.adj[i][j])
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.adj[i][j]
        ]

    def neighbors(self, v: int) -> List[int]:
        return [w for w in range(self.n) if self.adj[v][w]]

    def valency(self, v: int) -> int:
        return sum(1 for x in self.adj[v] if x)

    def is_simple(self) -> bool:
        return all(x <= 1 for row in self.adj for x in row)

    @property
    def line_count(self) -> int:
        return sum(1 for v in range(self.n) if self.color(v) == 1)

    @property
    def exceptional_count(self) -> int:
        return self.n - self.line_count

    # ---------- 变换 ----------

    def induced(self, vertices: Sequence[int]) -> "ConfigGraph":
        vs = list(vertices)
        colors = tuple(self.color(v) for v in vs) if self.colors is not None else None
        return ConfigGraph(
            len(vs), tuple(tuple(self.adj[a][b] for b in vs) for a in vs), colors
        )

    def add_vertex(
        self,
        neighbors: Union[Iterable[int], Mapping[int, int]],
        color: int = 1,
    ) -> "ConfigGraph":
        """添加一个顶点，neighbors 为邻点集合或 {邻点: 重数}"""
        mults = dict(neighbors) if isinstance(neighbors, Mapping) else {v: 1 for v in neighbors}
        new_row = tuple(mults.get(v, 0) for v in range(self.n))
        adj = tuple(row + (new_row[i],) for i, row in enumerate(self.adj)) + (new_row + (0,),)
        colors = None
        if self.colors is not None or color != 1:
            colors = tuple(self.color(v) for v in range(self.n)) + (color,)
        return ConfigGraph(self.n + 1, adj, colors)

    def disjoint_union(self, other: "ConfigGraph") -> "ConfigGraph":
        n = self.n + other.n
        adj = [[0] * n for _ in range(n)]
        for i, j, m in self.edges():
            adj[i][j] = adj[j][i] = m
        for i, j, m in other.edges():
            adj[self.n + i][self.n + j] = adj[self.n + j][self.n + i] = m
        colors = [self.color(v) for v in range(self.n)] + [other.color(v) for v in range(other.n)]
        return ConfigGraph(n, tuple(tuple(r) for r in adj), tuple(colors))

    def relabel(self, perm: Sequence[int]) -> "ConfigGraph":
        """perm[v] 为顶点 v 的新编号"""
        inverse = [0] * self.n
        for v, w in enumerate(perm):
            inverse[w] = v
        return self.induced(inverse)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from((v, {"color": self.color(v)}) for v in range(self.n))
        graph.add_edges_from((i, j, {"mult": m}) for i, j, m in self.edges())
        return graph

    def z_gram(self) -> GramLattice:
        """ZΓ：v² = −2，u·v 为边重数"""
        return GramLattice(
            tuple(
                tuple(-2 if i == j else self.adj[i][j] for j in range(self.n))
                for i in range(self.n)
            )
        )

    def canonical(
        self,
        setwise: Sequence[Sequence[int]] = (),
        pointwise: Sequence[int] = (),
    ) -> CanonicalForm:
        return canonical_form(self, setwise, pointwise)


# ==================== Fano 格 ====================


@dataclass(frozen=True)
class FanoLattice:
    """Fano(Γ)：非退化带极化格，images[v] 为顶点 v 的像"""

    polarized: PolarizedLattice
    images: Tuple[IntVector, ...]
    projection: Tuple[Tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def rank(self) -> int:
        return self.polarized.rank

    @property
    def h(self) -> IntVector:
        return self.polarized.h

    def project(self, coords: Sequence[int]) -> IntVector:
        """(h, v₁, …, vₙ) 坐标下的向量在 Fano(Γ) 中的像"""
        return tuple(sum(row[k] * coords[k] for k in range(len(coords))) for row in self.projection)


def fano_lattice(graph: ConfigGraph, require_hyperbolic: bool = False) -> FanoLattice:
    """Fano(Γ)：基 (h, v₁, …, vₙ)，h² = 4，h·v = 颜色，v² = −2，再商去根基"""
    n = graph.n + 1
    gram = [[0] * n for _ in range(n)]
    gram[0][0] = 4
    for v in range(graph.n):
        gram[0][v + 1] = gram[v + 1][0] = graph.color(v)
        gram[v + 1][v + 1] = -2
        for w in range(graph.n):
            if w != v:
                gram[v + 1][w + 1] = graph.adj[v][w]

    snf = smith_normal_form(gram)
    r = snf.rank
    if r == n:
        # 非退化时保留原基
        quotient = tuple(tuple(row) for row in gram)
        projection = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    else:
        columns = [[snf.right[k][i] for k in range(n)] for i in range(r)]
        quotient = tuple(
            tuple(
                sum(
                    columns[i][a] * gram[a][b] * columns[j][b]
                    for a in range(n)
                    for b in range(n)
                    if gram[a][b]
                )
                for j in range(r)
            )
            for i in range(r)
        )
        projection = tuple(tuple(snf.right_inverse[i]) for i in range(r))
    h = tuple(row[0] for row in projection)
    images = tuple(tuple(row[v + 1] for row in projection) for v in range(graph.n))
    polarized = PolarizedLattice(GramLattice(quotient), h)
    if require_hyperbolic and not polarized.is_hyperbolic:
        raise NotHyperbolicError("Fano 格不是双曲的", {"signature": list(signature(polarized.lattice))})
    return FanoLattice(polarized, images, projection)


def graph_rank(graph: ConfigGraph) -> int:
    """rank Γ := rank Fano(Γ)"""
    return fano_lattice(graph).rank


# ==================== 分类 ====================


def classify_graph(graph: ConfigGraph) -> str:
    """按 ZΓ 的惯性指数分类"""
    if graph.n == 0:
        return ELLIPTIC
    plus, _, zero = signature(graph.z_gram())
    if plus >= 2:
        raise GraphError("σ₊(ZΓ) ≥ 2，不可能在双曲格中实现", {"sigma_plus": plus})
    if plus == 1:
        return HYPERBOLIC
    return PARABOLIC if zero else ELLIPTIC


def is_elliptic_or_parabolic(graph: ConfigGraph) -> bool:
    try:
        return classify_graph(graph) != HYPERBOLIC
    except GraphError:
        return False


@dataclass(frozen=True)
class DynkinLabel:
    """Dynkin 类型，n 为 Milnor 数"""

    family: str
    n: int
    affine: bool = False

    @property
    def milnor(self) -> int:
        return self.n

    @property
    def key(self) -> Tuple[int, int]:
        return (self.n, _FAMILY_ORDER[self.family])

    def __str__(self) -> str:
        return f"{'~' if self.affine else ''}{self.family}{self.n}"

    def __lt__(self, other: "DynkinLabel") -> bool:
        return self.key < other.key


def dynkin_key(label: DynkinLabel) -> Tuple[int, int]:
    """仿射图排序：先比较 Milnor 数，再按 A < D < E"""
    return label.key


def _arms(graph: ConfigGraph, center: int) -> List[int]:
    lengths = []
    for start in graph.neighbors(center):
        prev, cur, size = center, start, 1
        while True:
            nxt = [w for w in graph.neighbors(cur) if w != prev]
            if len(nxt) != 1:
                break
            prev, cur = cur, nxt[0]
            size += 1
        lengths.append(size)
    return sorted(lengths)


def dynkin_type(graph: ConfigGraph) -> DynkinLabel:
    """连通椭圆或抛物图的 (仿射) Dynkin 类型"""
    if graph.n == 0 or not nx.is_connected(graph.to_networkx()):
        raise GraphError("Dynkin 识别要求非空连通图")
    kind = classify_graph(graph)
    if kind == HYPERBOLIC:
        raise GraphError("图既非椭圆也非抛物", {"n": graph.n})
    n = graph.n
    if n == 2 and graph.adj[0][1] == 2:
        return DynkinLabel("A", 1, affine=True)
    if not graph.is_simple():
        raise GraphError("Dynkin 识别要求简单图")

    degrees = sorted(graph.valency(v) for v in range(n))
    edges = len(graph.edges())
    if edges == n:
        return DynkinLabel("A", n - 1, affine=True)
    if degrees[-1] <= 2:
        return DynkinLabel("A", n)
    branches = [v for v in range(n) if graph.valency(v) >= 3]
    if len(branches) == 1:
        center = branches[0]
        if graph.valency(center) == 4:
            return DynkinLabel("D", 4, affine=True)
        arms = tuple(_arms(graph, center))
        table = {
            (1, 2, 2): DynkinLabel("E", 6),
            (1, 2, 3): DynkinLabel("E", 7),
            (1, 2, 4): DynkinLabel("E", 8),
            (2, 2, 2): DynkinLabel("E", 6, affine=True),
            (1, 3, 3): DynkinLabel("E", 7, affine=True),
            (1, 2, 5): DynkinLabel("E", 8, affine=True),
        }
        if arms[:2] == (1, 1):
            return DynkinLabel("D", n)
        if arms in table:
            return table[arms]
    if len(branches) == 2:
        return DynkinLabel("D", n - 1, affine=True)
    raise GraphError("无法识别 Dynkin 类型", {"n": n, "degrees": degrees})


def kappa(fiber: ConfigGraph) -> IntVector:
    """连通抛物图 ZΓ 核中唯一的最小正向量"""
    if classify_graph(fiber) != PARABOLIC:
        raise NotParabolicError("纤维不是抛物型")
    kernel = kernel_basis(fiber.z_gram().gram)
    if len(kernel) != 1:
        raise NotParabolicError("纤维不连通", {"kernel_rank": len(kernel)})
    vec = kernel[0]
    if vec[0] < 0:
        vec = tuple(-x for x in vec)
    if any(x <= 0 for x in vec):
        raise NotParabolicError("核向量不是正的", {"kappa": list(vec)})
    return vec


def girth(graph: ConfigGraph) -> float:
    """最短圈的长度，森林的围长为 ∞"""
    if not graph.is_simple():
        raise GraphError("围长只对简单图定义")
    return float(nx.girth(graph.to_networkx()))


def girth_class(graph: ConfigGraph) -> str:
    g = girth(graph)
    if g == 3:
        return "triangular"
    if g == 4:
        return "quadrangular"
    if g == 5:
        return "pentagonal"
    if any(graph.valency(v) >= 4 for v in range(graph.n)):
        return "astral"
    return "locally elliptic"


def _cyclic_order(graph: ConfigGraph, vertices: Sequence[int]) -> List[int]:
    sub = set(vertices)
    start = min(sub)
    order = [start]
    prev = None
    cur = start
    while len(order) < len(sub):
        nxt = sorted(w for w in graph.neighbors(cur) if w in sub and w != prev and w not in order)
        prev, cur = cur, nxt[0]
        order.append(cur)
    return order


def ordered_fiber(graph: ConfigGraph, vertices: Sequence[int]) -> List[int]:
    """纤维顶点的约定顺序：圈按循环顺序，星形以中心为首"""
    sub = graph.induced(vertices)
    label = dynkin_type(sub)
    if label.family == "A" and label.affine and len(vertices) >= 3:
        return _cyclic_order(graph, vertices)
    if label.family == "D" and label.n == 4 and label.affine:
        center = max(vertices, key=lambda v: (sum(1 for w in vertices if graph.adj[v][w]), -v))
        return [center] + sorted(v for v in vertices if v != center)
    return sorted(vertices)


def connected_subsets(graph: ConfigGraph, size: int) -> List[Tuple[int, ...]]:
    """全部大小为 size 的连通诱导顶点集"""
    layer = {frozenset([v]) for v in range(graph.n)}
    for _ in range(size - 1):
        grown = set()
        for subset in layer:
            for v in subset:
                for w in graph.neighbors(v):
                    if w not in subset:
                        grown.add(subset | {w})
        layer = grown
    return sorted(tuple(sorted(s)) for s in layer)


def minimal_fibers(graph: ConfigGraph, max_size: int = 9) -> List[Tuple[DynkinLabel, List[int]]]:
    """最小仿射类型的全部纤维（连通抛物诱导子图）"""
    for size in range(2, max_size + 1):
        found: List[Tuple[DynkinLabel, List[int]]] = []
        for subset in connected_subsets(graph, size):
            sub = graph.induced(subset)
            if not is_elliptic_or_parabolic(sub) or classify_graph(sub) != PARABOLIC:
                continue
            try:
                label = dynkin_type(sub)
            except GraphError:
                continue
            found.append((label, ordered_fiber(graph, subset)))
        if found:
            best = min(label.key for label, _ in found)
            return [item for item in found if item[0].key == best]
    return []


# ==================== 束与截线 ====================


@dataclass(frozen=True)
class PencilDecomposition:
    """纤维 F 的束 P 与截线集合 sec*, secᵢ, sec*ᵢ"""

    graph: ConfigGraph
    fiber: Tuple[int, ...]
    kappa: IntVector
    pencil: Tuple[int, ...]
    sec_star: Tuple[int, ...]
    sec: Tuple[Tuple[int, ...], ...]
    sec_star_i: Tuple[Tuple[int, ...], ...]
    multiplicity: Mapping[int, int]
    violations: Tuple[str, ...] = ()

    @property
    def multiple_sections(self) -> List[int]:
        return [v for v in self.sec_star if self.multiplicity[v] >= 2]

    def to_json(self) -> Dict[str, Any]:
        return {
            "fiber": list(self.fiber),
            "kappa": list(self.kappa),
            "pencil": list(self.pencil),
            "sec_star": list(self.sec_star),
            "sec": [list(s) for s in self.sec],
            "sec_star_i": [list(s) for s in self.sec_star_i],
            "multiplicity": {str(v): m for v, m in sorted(self.multiplicity.items())},
            "violations": list(self.violations),
        }


def decompose_pencil(graph: ConfigGraph, fiber: Sequence[int]) -> PencilDecomposition:
    fiber = tuple(fiber)
    sub = graph.induced(fiber)
    if graph.n == 0 or not nx.is_connected(sub.to_networkx()):
        raise NotParabolicError("纤维必须连通", {"fiber": list(fiber)})
    weights = kappa(sub)
    in_fiber = set(fiber)
    pencil: List[int] = list(fiber)
    sec_star: List[int] = []
    for v in range(graph.n):
        if v in in_fiber:
            continue
        if all(graph.adj[v][c] == 0 for c in fiber):
            pencil.append(v)
        else:
            sec_star.append(v)
    multiplicity = {
        v: sum(w * graph.adj[v][c] for w, c in zip(weights, fiber)) for v in sec_star
    }
    sec_star_i = tuple(
        tuple(v for v in sec_star if graph.adj[v][c]) for c in fiber
    )
    sec = tuple(
        tuple(
            v
            for v in sec_star
            if graph.adj[v][c] == 1 and all(graph.adj[v][d] == 0 for d in fiber if d != c)
        )
        for c in fiber
    )
    violations = []
    for i, members in enumerate(sec_star_i):
        if not is_elliptic_or_parabolic(graph.induced(members)):
            violations.append(f"sec*_{i + 1} is hyperbolic")
    return PencilDecomposition(
        graph=graph,
        fiber=fiber,
        kappa=weights,
        pencil=tuple(sorted(pencil)),
        sec_star=tuple(sec_star),
        sec=sec,
        sec_star_i=sec_star_i,
        multiplicity=multiplicity,
        violations=tuple(violations),
    )


# ==================== Δ-集合与模式 ====================


@dataclass(frozen=True, order=False)
class Pattern:
    """Δ-集合的系数四元组 (ã₂, a₃, a₂, a₁)"""

    t2: int = 0
    a3: int = 0
    a2: int = 0
    a1: int = 0

    def __post_init__(self) -> None:
        if min(self.quadruple) < 0:
            raise PatternError("模式系数必须非负", {"pattern": list(self.quadruple)})

    @property
    def quadruple(self) -> Tuple[int, int, int, int]:
        return (self.t2, self.a3, self.a2, self.a1)

    @property
    def size(self) -> int:
        return 3 * self.t2 + 3 * self.a3 + 2 * self.a2 + self.a1

    def __len__(self) -> int:
        return self.size

    def __add__(self, other: "Pattern") -> "Pattern":
        return Pattern(*(a + b for a, b in zip(self.quadruple, other.quadruple)))

    def __sub__(self, other: "Pattern") -> "Pattern":
        return Pattern(*(a - b for a, b in zip(self.quadruple, other.quadruple)))

    def primed(self) -> "Pattern":
        """σ′ := Ã₂ ⊔ σ"""
        return Pattern(self.t2 + 1, self.a3, self.a2, self.a1)

    def is_elliptic(self) -> bool:
        return self.t2 == 0

    def graph(self) -> ConfigGraph:
        """模式的标准实现：各分支依次为 Ã₂, A₃, A₂, A₁"""
        result = ConfigGraph.empty()
        for count, piece in (
            (self.t2, ConfigGraph.cycle(3)),
            (self.a3, ConfigGraph.path(3)),
            (self.a2, ConfigGraph.path(2)),
            (self.a1, ConfigGraph.path(1)),
        ):
            for _ in range(count):
                result = result.disjoint_union(piece)
        return result

    def to_json(self) -> List[int]:
        return list(self.quadruple)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Pattern":
        return cls(*(int(x) for x in data))

    def __str__(self) -> str:
        parts = [
            f"{c if c > 1 else ''}{name}"
            for c, name in zip(self.quadruple, ("~A2", "A3", "A2", "A1"))
            if c
        ]
        return "+".join(parts) or "0"


def pattern_of_delta_set(graph: ConfigGraph) -> Pattern:
    """Δ-集合的模式；出现其它分支时报错"""
    counts = [0, 0, 0, 0]
    nxg = graph.to_networkx()
    for component in sorted(nx.connected_components(nxg), key=min):
        vertices = sorted(component)
        sub = graph.induced(vertices)
        edges = len(sub.edges())
        simple = sub.is_simple()
        if len(vertices) == 3 and edges == 3 and simple:
            counts[0] += 1
        elif len(vertices) == 3 and edges == 2 and simple:
            counts[1] += 1
        elif len(vertices) == 2 and edges == 1 and simple:
            counts[2] += 1
        elif len(vertices) == 1:
            counts[3] += 1
        else:
            try:
                name = str(dynkin_type(sub))
            except GraphError:
                name = "hyperbolic"
            raise PatternError(
                f"Δ-集合包含不允许的分支 {name}", {"component": vertices, "type": name}
            )
    return Pattern(*counts)


# ==================== 规范形 ====================


def canonical_form(
    graph: ConfigGraph,
    setwise: Sequence[Sequence[int]] = (),
    pointwise: Sequence[int] = (),
) -> CanonicalForm:
    """带约束的规范字节与约束自同构群生成元"""
    colors = [graph.color(v) for v in range(graph.n)]
    return _canonical_form(graph.n, graph.adj, colors, setwise, pointwise)


def canonical_key(
    graph: ConfigGraph,
    setwise: Sequence[Sequence[int]] = (),
    pointwise: Sequence[int] = (),
) -> bytes:
    return canonical_form(graph, setwise, pointwise).certificate


__all__ = [
    "ELLIPTIC",
    "PARABOLIC",
    "HYPERBOLIC",
    "ConfigGraph",
    "FanoLattice",
    "DynkinLabel",
    "PencilDecomposition",
    "Pattern",
    "fano_lattice",
    "graph_rank",
    "classify_graph",
    "is_elliptic_or_parabolic",
    "dynkin_type",
    "dynkin_key",
    "kappa",
    "girth",
    "girth_class",
    "ordered_fiber",
    "connected_subsets",
    "minimal_fibers",
    "decompose_pencil",
    "pattern_of_delta_set",
    "canonical_form",
    "canonical_key",
]
