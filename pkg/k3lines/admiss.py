#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
可容许性检验模块

该模块实现配置图的格论检验组合，包括：
- 根集合 root₀、root₁ 的精确枚举
- 可容许性、光滑性、分离根与相容 Weyl 室
- 饱和与扩充饱和
- 几何核 GK(Γ) 与检验组合（双曲 → 可容许 → 可扩展 → 次几何 → 秩）
- 秩 20 图的饱和列表
- 三角纤维的引理检查

判定缓存是模块内唯一的共享可变状态，由锁保护。

Author: K3 Lines Team
Date: 2024
"""

import threading
from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Generic, Hashable, List, Optional, Sequence, Tuple, TypeVar

from k3lines.core.config import settings
from k3lines.core.exceptions import (
    ChamberError,
    DegenerateLatticeError,
    LatticeError,
    LemmaViolationError,
    NotExtensibleError,
    NotHyperbolicError,
    PatternError,
    PreconditionError,
)
from k3lines.discform import (
    FiniteQuadraticForm,
    IsotropicSubgroup,
    discriminant_form,
    is_geometric_lattice,
    iter_isotropic_subgroups,
)
from k3lines.fano import (
    ConfigGraph,
    FanoLattice,
    canonical_form,
    classify_graph,
    decompose_pencil,
    fano_lattice,
    pattern_of_delta_set,
    ELLIPTIC,
)
from k3lines.intlat import (
    GramLattice,
    IntVector,
    PolarizedLattice,
    Sublattice,
    enumerate_vectors_in_coset,
    orthogonal_complement,
    overlattice,
    signature,
    smith_normal_form,
    solve_rational,
)
from shared.utils.logger import get_logger

logger = get_logger(__name__)

K = TypeVar("K", bound=Hashable)
V = TypeVar("V")


class BatteryMode(str, Enum):
    """singular：可容许格；smooth：光滑格（无例外除子）"""

    SINGULAR = "singular"
    SMOOTH = "smooth"


# ==================== 缓存 ====================


class SyncCache(Generic[K, V]):
    """加锁的 LRU 缓存"""

    def __init__(self, capacity: Optional[int] = None):
        self.capacity = capacity or settings.K3LINES_CACHE_SIZE
        self._data: "OrderedDict[K, V]" = OrderedDict()
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self, key: K) -> Optional[V]:
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                self.hits += 1
                return self._data[key]
            self.misses += 1
            return None

    def put(self, key: K, value: V) -> None:
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            while len(self._data) > self.capacity:
                self._data.popitem(last=False)

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self.hits = self.misses = 0

    def __len__(self) -> int:
        with self._lock:
            return len(self._data)


# ==================== 根集合 ====================


@dataclass(frozen=True)
class RootSystemSlice:
    """root₀ = {r² = −2, r·h = 0}，root₁ = {r² = −2, r·h = 1}"""

    lattice: PolarizedLattice
    roots0: Tuple[IntVector, ...]
    roots1: Tuple[IntVector, ...]


@dataclass(frozen=True)
class _Complement:
    sublattice: Sublattice
    gram: GramLattice


def _h_complement(lattice: PolarizedLattice) -> _Complement:
    if not lattice.is_hyperbolic:
        raise NotHyperbolicError(
            "根集合要求双曲格", {"signature": list(signature(lattice.lattice))}
        )
    sub = orthogonal_complement(lattice.lattice, [lattice.h])
    gram = sub.lattice
    if signature(gram) != (0, gram.rank, 0):
        raise DegenerateLatticeError("h⊥ 不是负定的")
    return _Complement(sub, gram)


def _vectors_of_degree(
    lattice: PolarizedLattice, comp: _Complement, degree: int, square: Fraction
) -> List[IntVector]:
    """{x : x·h = degree, x² = square}，化为 h⊥ 中的陪集枚举"""
    g = lattice.lattice
    n = g.rank
    row = [g.dot(lattice.h, [int(i == j) for j in range(n)]) for i in range(n)]
    snf = smith_normal_form([row])
    d = snf.diagonal[0]
    if d == 0 or degree % d:
        return []
    factor = snf.left[0][0] * (degree // d)
    x0 = [snf.right[k][0] * factor for k in range(n)]
    shift = [Fraction(x0[k]) - Fraction(degree * lattice.h[k], 4) for k in range(n)]
    basis = comp.sublattice.basis
    coords = solve_rational(basis, shift) if basis else ()
    if coords is None:
        raise LatticeError("平移向量不在 h⊥ 中")
    target = Fraction(square) - Fraction(degree * degree, 4)
    result = []
    for y in enumerate_vectors_in_coset(comp.gram, coords, target):
        vec = list(x0)
        for c, b in zip(y, basis):
            if c:
                for k in range(n):
                    vec[k] += c * b[k]
        result.append(tuple(vec))
    return sorted(result)


def compute_roots(lattice: PolarizedLattice) -> RootSystemSlice:
    comp = _h_complement(lattice)
    roots0 = _vectors_of_degree(lattice, comp, 0, Fraction(-2))
    roots1 = _vectors_of_degree(lattice, comp, 1, Fraction(-2))
    return RootSystemSlice(lattice, tuple(roots0), tuple(roots1))


def is_admissible(lattice: PolarizedLattice) -> bool:
    """不存在 ι² = 0、ι·h = 2 的向量"""
    comp = _h_complement(lattice)
    basis = comp.sublattice.basis
    n = lattice.rank
    for y in enumerate_vectors_in_coset(comp.gram, None, -4):
        v = [sum(c * b[k] for c, b in zip(y, basis)) for k in range(n)]
        if all((v[k] + lattice.h[k]) % 2 == 0 for k in range(n)):
            return False
    return True


def is_smooth_lattice(lattice: PolarizedLattice, roots: Optional[RootSystemSlice] = None) -> bool:
    """root₀ 为空且可容许"""
    roots = roots or compute_roots(lattice)
    return not roots.roots0 and is_admissible(lattice)


def separating_roots(
    lattice: PolarizedLattice,
    lines: Sequence[IntVector],
    roots: Optional[RootSystemSlice] = None,
) -> List[IntVector]:
    """分离某一对直线的全部 r ∈ root₀（两种符号都列出）"""
    roots = roots or compute_roots(lattice)
    g = lattice.lattice
    result = []
    for r in roots.roots0:
        values = [g.dot(r, line) for line in lines]
        if any(x > 0 for x in values) and any(x < 0 for x in values):
            result.append(r)
    return result


# ==================== Weyl 室 ====================


@dataclass(frozen=True)
class ChamberOrientation:
    """与直线相容的正根系及其单根"""

    roots: RootSystemSlice
    positive_roots: Tuple[IntVector, ...]
    simple_roots: Tuple[IntVector, ...]


def _orientation_key(g: GramLattice, lines: Sequence[IntVector], r: IntVector) -> Tuple[int, Tuple[int, ...]]:
    return (sum(int(g.dot(line, r)) for line in lines), tuple(r))


def choose_chamber(
    lattice: PolarizedLattice,
    lines: Sequence[IntVector],
    roots: Optional[RootSystemSlice] = None,
) -> ChamberOrientation:
    """唯一的相容 Weyl 室

    正根由 φ(r) = (Σ l·r, r 的坐标) 的字典序符号确定。
    """
    roots = roots or compute_roots(lattice)
    separating = separating_roots(lattice, lines, roots)
    if separating:
        raise NotExtensibleError("存在分离根", {"count": len(separating)})
    g = lattice.lattice
    zero = (0, tuple(0 for _ in range(lattice.rank)))
    positive = tuple(r for r in roots.roots0 if _orientation_key(g, lines, r) > zero)
    pos_set = set(positive)
    simple = tuple(
        r
        for r in positive
        if not any(tuple(a - b for a, b in zip(r, s)) in pos_set for s in positive)
    )
    if len(positive) * 2 != len(roots.roots0) or len(simple) > lattice.rank - 1:
        raise ChamberError(
            "Weyl 室定向不一致",
            {"positive": len(positive), "roots": len(roots.roots0), "simple": len(simple)},
        )
    for line in lines:
        if any(g.dot(line, e) < 0 for e in simple):
            raise ChamberError("直线不在相容 Weyl 室的 Fano 集合中", {"line": list(line)})
    return ChamberOrientation(roots, positive, simple)


# ==================== 有限指数扩张与饱和 ====================


@dataclass(frozen=True)
class KernelExtension:
    """Fano(Γ, K) 及其中各顶点的像"""

    kernel: Optional[IsotropicSubgroup]
    polarized: PolarizedLattice
    images: Tuple[IntVector, ...]
    line_images: Tuple[IntVector, ...]
    roots: RootSystemSlice

    @property
    def kernel_order(self) -> int:
        return self.kernel.order if self.kernel is not None else 1


def extend_by_kernel(
    graph: ConfigGraph, fano: FanoLattice, kernel: Optional[IsotropicSubgroup] = None
) -> KernelExtension:
    if kernel is None or kernel.is_trivial():
        polarized = fano.polarized
        images = fano.images
    else:
        ext = overlattice(fano.polarized.lattice, kernel)
        polarized = PolarizedLattice(ext.lattice, ext.integral_coordinates(fano.h))
        images = tuple(ext.integral_coordinates(v) for v in fano.images)
    lines = tuple(images[v] for v in range(graph.n) if graph.color(v) == 1)
    return KernelExtension(kernel, polarized, images, lines, compute_roots(polarized))


def _lines_graph(
    g: GramLattice, first: Sequence[IntVector], others: Sequence[IntVector], colors: Sequence[int]
) -> ConfigGraph:
    vectors = list(first) + list(others)
    n = len(vectors)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            value = int(g.dot(vectors[i], vectors[j]))
            if value < 0:
                raise LatticeError("Fano 集合中出现负交数", {"pair": [i, j], "value": value})
            adj[i][j] = adj[j][i] = value
    return ConfigGraph(n, tuple(tuple(r) for r in adj), tuple(colors))


def _saturation_lines(ext: KernelExtension, chamber: ChamberOrientation) -> List[IntVector]:
    g = ext.polarized.lattice
    return [line for line in ext.roots.roots1 if all(g.dot(line, e) >= 0 for e in chamber.simple_roots)]


def saturate(
    graph: ConfigGraph, kernel: Optional[IsotropicSubgroup] = None, extended: bool = False
) -> ConfigGraph:
    """sat(Γ, K)；extended 为真时附加单根作为颜色 0 的顶点

    原图的直线排在最前面，其余直线按坐标排序。
    """
    fano, _ = _fano_with_form(graph)
    ext = extend_by_kernel(graph, fano, kernel)
    return _saturate(ext, extended)


def _saturate(ext: KernelExtension, extended: bool) -> ConfigGraph:
    chamber = choose_chamber(ext.polarized, ext.line_images, ext.roots)
    lines = _saturation_lines(ext, chamber)
    present = set(lines)
    missing = [line for line in ext.line_images if line not in present]
    if missing:
        raise ChamberError("原图的直线不在饱和中", {"missing": [list(line) for line in missing]})
    original = set(ext.line_images)
    others = sorted(line for line in lines if line not in original)
    first = list(ext.line_images)
    colors = [1] * (len(first) + len(others))
    extra: List[IntVector] = []
    if extended:
        extra = sorted(chamber.simple_roots)
        colors += [0] * len(extra)
    return _lines_graph(ext.polarized.lattice, first, others + extra, colors)


# ==================== 几何核与检验组合 ====================


@dataclass(frozen=True)
class KernelSearch:
    """GK(Γ) 的搜索结果；complete 为假表示预算用尽时仍有子群未检验"""

    extensions: Tuple[KernelExtension, ...]
    complete: bool
    evaluated: int


class _BudgetExhausted(Exception):
    pass


_FANO_CACHE: SyncCache[ConfigGraph, Tuple[FanoLattice, FiniteQuadraticForm]] = SyncCache()
_KERNEL_CACHE: SyncCache[Tuple[ConfigGraph, str], KernelSearch] = SyncCache()
_VERDICT_CACHE: SyncCache[Tuple[bytes, str, bool], "BatteryVerdict"] = SyncCache()


def clear_caches() -> None:
    _FANO_CACHE.clear()
    _KERNEL_CACHE.clear()
    _VERDICT_CACHE.clear()


def _fano_with_form(graph: ConfigGraph) -> Tuple[FanoLattice, FiniteQuadraticForm]:
    """Fano(Γ) 与其判别形式，按图缓存"""
    cached = _FANO_CACHE.get(graph)
    if cached is None:
        fano = fano_lattice(graph)
        cached = (fano, discriminant_form(fano.polarized.lattice))
        _FANO_CACHE.put(graph, cached)
    return cached


def _lattice_passes(ext: KernelExtension, mode: BatteryMode) -> bool:
    if mode is BatteryMode.SMOOTH:
        return not ext.roots.roots0 and is_admissible(ext.polarized)
    return is_admissible(ext.polarized) and not separating_roots(
        ext.polarized, ext.line_images, ext.roots
    )


def kernel_search(
    graph: ConfigGraph,
    mode: BatteryMode = BatteryMode.SINGULAR,
    budget: Optional[int] = None,
) -> KernelSearch:
    """在迷向子群格上搜索几何核

    可容许性与可扩展性的障碍向量在更大的超格中仍然存在，
    因此未通过的子群不再向上生长。预算限制被检验的子群个数。
    """
    key = (graph, mode.value)
    cached = _KERNEL_CACHE.get(key)
    if cached is not None:
        return cached
    budget = budget if budget is not None else settings.K3LINES_KERNEL_BUDGET
    fano, q = _fano_with_form(graph)
    if not fano.polarized.is_hyperbolic:
        raise NotHyperbolicError("Fano 格不是双曲的", {"rank": fano.rank})

    found: List[KernelExtension] = []
    evaluated = 0

    def passes(kernel: IsotropicSubgroup) -> bool:
        nonlocal evaluated
        if evaluated >= budget:
            raise _BudgetExhausted()
        evaluated += 1
        ext = extend_by_kernel(graph, fano, kernel)
        if not _lattice_passes(ext, mode):
            return False
        if is_geometric_lattice(ext.polarized):
            found.append(ext)
        return True

    complete = True
    try:
        for _ in iter_isotropic_subgroups(q, accept=passes):
            pass
    except _BudgetExhausted:
        complete = False
        logger.warning(
            "kernel search budget exhausted",
            vertices=graph.n,
            discriminant=q.order,
            budget=budget,
            found=len(found),
        )
    found.sort(key=lambda ext: (ext.kernel_order, ext.kernel.generators if ext.kernel else ()))
    result = KernelSearch(tuple(found), complete, evaluated)
    _KERNEL_CACHE.put(key, result)
    return result


def geometric_kernel_extensions(
    graph: ConfigGraph, mode: BatteryMode = BatteryMode.SINGULAR
) -> Tuple[KernelExtension, ...]:
    search = kernel_search(graph, mode)
    if not search.complete:
        logger.warning("geometric kernels are incomplete", vertices=graph.n, found=len(search.extensions))
    return search.extensions


def geometric_kernels(
    graph: ConfigGraph, mode: BatteryMode = BatteryMode.SINGULAR
) -> List[IsotropicSubgroup]:
    """GK(Γ)：Fano(Γ, K) 可容许、可扩展且可嵌入 2E8⊕3U 的核 K"""
    return [ext.kernel for ext in geometric_kernel_extensions(graph, mode) if ext.kernel is not None]


def kernel_saturations(
    graph: ConfigGraph, mode: BatteryMode = BatteryMode.SINGULAR, extended: bool = False
) -> List[Tuple[KernelExtension, ConfigGraph]]:
    """对 GK(Γ) 中每个核给出 sat(Γ, K)"""
    return [(ext, _saturate(ext, extended)) for ext in geometric_kernel_extensions(graph, mode)]


@dataclass(frozen=True)
class BatteryVerdict:
    """检验组合结果；短路后未执行的检验为 None

    核搜索在预算内未走完且未找到几何核时 subgeometric 为 None，
    此时 acceptable 只看秩，不据此剪枝。
    """

    hyperbolic: bool
    admissible: Optional[bool] = None
    extensible: Optional[bool] = None
    subgeometric: Optional[bool] = None
    rank: Optional[int] = None
    acceptable: bool = False
    geometric: Optional[bool] = None
    kernel_count: int = 0
    kernels_complete: bool = True
    failed_test: Optional[str] = None
    mode: str = BatteryMode.SINGULAR.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "hyperbolic": self.hyperbolic,
            "admissible": self.admissible,
            "extensible": self.extensible,
            "subgeometric": self.subgeometric,
            "rank": self.rank,
            "acceptable": self.acceptable,
            "geometric": self.geometric,
            "kernel_count": self.kernel_count,
            "kernels_complete": self.kernels_complete,
            "failed_test": self.failed_test,
            "mode": self.mode,
        }


def _is_saturated(graph: ConfigGraph, ext: KernelExtension) -> bool:
    extended = graph.exceptional_count > 0
    sat = _saturate(ext, extended)
    if sat.n != graph.n:
        return False
    return canonical_form(sat).certificate == canonical_form(graph).certificate


def test_battery(
    graph: ConfigGraph,
    mode: BatteryMode = BatteryMode.SINGULAR,
    check_geometric: bool = False,
    use_cache: bool = True,
) -> BatteryVerdict:
    """检验组合：双曲 → 可容许 → 可扩展 → 次几何 → 秩 ≤ 19"""
    cache_key = None
    if use_cache:
        cache_key = (canonical_form(graph).certificate, mode.value, check_geometric)
        cached = _VERDICT_CACHE.get(cache_key)
        if cached is not None:
            return cached

    verdict = _run_battery(graph, mode, check_geometric)
    if cache_key is not None:
        _VERDICT_CACHE.put(cache_key, verdict)
    return verdict


# 名称以 test_ 开头，避免被 pytest 收集
test_battery.__test__ = False  # type: ignore[attr-defined]


def _run_battery(graph: ConfigGraph, mode: BatteryMode, check_geometric: bool) -> BatteryVerdict:
    try:
        fano, _ = _fano_with_form(graph)
    except DegenerateLatticeError:
        return BatteryVerdict(hyperbolic=False, failed_test="hyperbolic", mode=mode.value)
    rank = fano.rank
    if not fano.polarized.is_hyperbolic:
        return BatteryVerdict(hyperbolic=False, rank=rank, failed_test="hyperbolic", mode=mode.value)

    base = extend_by_kernel(graph, fano)
    if mode is BatteryMode.SMOOTH:
        admissible = not base.roots.roots0 and is_admissible(base.polarized)
    else:
        admissible = is_admissible(base.polarized)
    if not admissible:
        return BatteryVerdict(
            hyperbolic=True, admissible=False, rank=rank, failed_test="admissible", mode=mode.value
        )
    extensible = not separating_roots(base.polarized, base.line_images, base.roots)
    if not extensible:
        return BatteryVerdict(
            hyperbolic=True,
            admissible=True,
            extensible=False,
            rank=rank,
            failed_test="extensible",
            mode=mode.value,
        )

    search = kernel_search(graph, mode)
    kernels = search.extensions
    subgeometric: Optional[bool] = bool(kernels)
    if not kernels and not search.complete:
        subgeometric = None
    acceptable = subgeometric is not False and rank <= 19
    failed = None if acceptable else ("subgeometric" if subgeometric is False else "rank")
    geometric: Optional[bool] = None
    if check_geometric:
        geometric = any(_is_saturated(graph, ext) for ext in kernels)
        if not geometric and not search.complete:
            geometric = None
    return BatteryVerdict(
        hyperbolic=True,
        admissible=True,
        extensible=True,
        subgeometric=subgeometric,
        rank=rank,
        acceptable=acceptable,
        geometric=geometric,
        kernel_count=len(kernels),
        kernels_complete=search.complete,
        failed_test=failed,
        mode=mode.value,
    )


def is_acceptable(graph: ConfigGraph, mode: BatteryMode = BatteryMode.SINGULAR) -> bool:
    return test_battery(graph, mode).acceptable


# ==================== 饱和列表 ====================


@dataclass(frozen=True)
class SaturationRecord:
    """秩 20 图的一个几何扩图"""

    graph: ConfigGraph
    extended: ConfigGraph
    kernel_order: int
    key: str

    @property
    def line_count(self) -> int:
        return self.graph.n

    @property
    def exceptional_count(self) -> int:
        return self.extended.exceptional_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            "key": self.key,
            "line_count": self.line_count,
            "exceptional_count": self.exceptional_count,
            "kernel_order": self.kernel_order,
            "graph": self.graph.to_json(),
            "extended": self.extended.to_json(),
        }


InterestingPredicate = Callable[[int, int], bool]


def interesting_predicate(min_lines: Optional[int], min_exceptional: Optional[int]) -> InterestingPredicate:
    """线数 ≥ min_lines 或例外除子数 ≥ min_exceptional"""

    def predicate(lines: int, exceptional: int) -> bool:
        if min_lines is None and min_exceptional is None:
            return True
        return (min_lines is not None and lines >= min_lines) or (
            min_exceptional is not None and exceptional >= min_exceptional
        )

    return predicate


def saturation_list(
    graph: ConfigGraph,
    interesting: Optional[InterestingPredicate] = None,
    mode: BatteryMode = BatteryMode.SINGULAR,
    require_full_rank: bool = True,
) -> List[SaturationRecord]:
    """秩 20 图在全部几何核下的饱和，按规范形去重

    require_full_rank 为假时也接受较低秩的图（激进模式检查中间图），
    此时列表只包含与 Γ 同秩的几何扩图。
    """
    rank = _fano_with_form(graph)[0].rank
    if require_full_rank and rank != 20:
        raise PreconditionError("饱和列表要求秩 20", {"rank": rank})
    seen = set()
    records = []
    for ext in geometric_kernel_extensions(graph, mode):
        extended = _saturate(ext, extended=True)
        plain = extended.induced([v for v in range(extended.n) if extended.color(v) == 1])
        key = canonical_form(extended).key
        if key in seen:
            continue
        seen.add(key)
        record = SaturationRecord(plain, extended, ext.kernel_order, key)
        if interesting is None or interesting(record.line_count, record.exceptional_count):
            records.append(record)
    records.sort(key=lambda r: (-r.line_count, -r.exceptional_count, r.key))
    logger.debug("saturation list computed", rank=rank, records=len(records))
    return records


def harvest_interesting(
    records: Sequence[SaturationRecord],
    min_lines: Optional[int] = None,
    min_exceptional: Optional[int] = None,
) -> List[SaturationRecord]:
    predicate = interesting_predicate(min_lines, min_exceptional)
    return [r for r in records if predicate(r.line_count, r.exceptional_count)]


# ==================== 三角纤维引理检查 ====================

SEC_BOUND = 18
ELLIPTIC_SEC_BOUND = 15


def triangular_lemma_check(graph: ConfigGraph, fiber: Sequence[int]) -> None:
    """三角纤维：至多一条重截线且与各 secᵢ 不交，各 secᵢ 为 Δ-集合且满足基数界"""
    pencil = decompose_pencil(graph, fiber)
    witness = graph.to_json()
    multiple = pencil.multiple_sections
    if len(multiple) > 1:
        raise LemmaViolationError(
            "三角纤维有多于一条重截线", witness, {"fiber": list(fiber), "sections": multiple}
        )
    for i, members in enumerate(pencil.sec):
        for m in multiple:
            if any(graph.adj[m][v] for v in members):
                raise LemmaViolationError(
                    "重截线与 secᵢ 相交", witness, {"fiber": list(fiber), "index": i + 1}
                )
        sub = graph.induced(members)
        try:
            pattern_of_delta_set(sub)
        except PatternError as exc:
            raise LemmaViolationError(
                "secᵢ 不是 Δ-集合", witness, {"index": i + 1, **exc.details}
            ) from exc
        bound = ELLIPTIC_SEC_BOUND if classify_graph(sub) == ELLIPTIC else SEC_BOUND
        if len(members) > bound:
            raise LemmaViolationError(
                "secᵢ 超出基数界", witness, {"index": i + 1, "size": len(members), "bound": bound}
            )


__all__ = [
    "BatteryMode",
    "SyncCache",
    "RootSystemSlice",
    "ChamberOrientation",
    "KernelExtension",
    "BatteryVerdict",
    "SaturationRecord",
    "compute_roots",
    "is_admissible",
    "is_smooth_lattice",
    "separating_roots",
    "choose_chamber",
    "extend_by_kernel",
    "saturate",
    "geometric_kernels",
    "geometric_kernel_extensions",
    "KernelSearch",
    "kernel_search",
    "kernel_saturations",
    "test_battery",
    "is_acceptable",
    "saturation_list",
    "interesting_predicate",
    "harvest_interesting",
    "triangular_lemma_check",
    "clear_caches",
    "SEC_BOUND",
    "ELLIPTIC_SEC_BOUND",
]
