#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
规范标号模块

带约束的图规范形与自同构群生成元：
- 初始划分由颜色、集合约束成员关系与逐点固定的顶点给出
- 按边重数加权的等价划分细化
- 个体化回溯，利用已发现自同构的轨道剪枝
- 首叶路径上的轨道长度之积给出约束自同构群的阶

规范字节以 b"K3CF1" 开头，格式带版本号，跨运行保持稳定。

Author: K3 Lines Team
Date: 2024
"""

import hashlib
import struct
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

CERTIFICATE_HEADER = b"K3CF1"

Permutation = Tuple[int, ...]
Partition = List[List[int]]


@dataclass(frozen=True)
class CanonicalForm:
    """规范字节、规范标号（位置 → 顶点）与约束自同构群"""

    certificate: bytes
    labeling: Tuple[int, ...]
    generators: Tuple[Permutation, ...]
    group_order: int

    @property
    def key(self) -> str:
        return hashlib.sha256(self.certificate).hexdigest()


class _Refiner:
    def __init__(
        self,
        n: int,
        adj: Sequence[Sequence[int]],
        colors: Sequence[int],
        setwise: Sequence[FrozenSet[int]],
        pointwise: Sequence[int],
    ):
        self.n = n
        self.adj = adj
        self.neighbors = [[w for w in range(n) if adj[v][w]] for v in range(n)]
        fixed_index = {v: i for i, v in enumerate(pointwise)}
        self.invariant = [
            (
                colors[v],
                tuple(int(v in s) for s in setwise),
                fixed_index.get(v, -1),
            )
            for v in range(n)
        ]

    def initial(self) -> Partition:
        groups: Dict[Tuple, List[int]] = {}
        for v in range(self.n):
            groups.setdefault(self.invariant[v], []).append(v)
        return [groups[key] for key in sorted(groups)]

    def refine(self, partition: Partition) -> Partition:
        while True:
            cell_of = [0] * self.n
            for i, cell in enumerate(partition):
                for v in cell:
                    cell_of[v] = i
            refined: Partition = []
            for cell in partition:
                if len(cell) == 1:
                    refined.append(cell)
                    continue
                groups: Dict[Tuple, List[int]] = {}
                for v in cell:
                    sig = tuple(sorted((cell_of[w], self.adj[v][w]) for w in self.neighbors[v]))
                    groups.setdefault(sig, []).append(v)
                refined.extend(groups[key] for key in sorted(groups))
            if len(refined) == len(partition):
                return refined
            partition = refined

    def certificate(self, order: Sequence[int]) -> bytes:
        parts = [CERTIFICATE_HEADER, struct.pack(">H", self.n)]
        for v in order:
            color, bits, fixed = self.invariant[v]
            parts.append(bytes([color, fixed + 1]) + bytes(bits))
        for v in order:
            row = self.adj[v]
            parts.append(bytes(row[w] for w in order))
        return b"".join(parts)


def _orbits(n: int, generators: Sequence[Permutation]) -> List[int]:
    """并查集表示的轨道：返回每个顶点的代表元"""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in generators:
        for v in range(n):
            a, b = find(v), find(gamma[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(n)]


def canonical_form(
    n: int,
    adj: Sequence[Sequence[int]],
    colors: Optional[Sequence[int]] = None,
    setwise: Sequence[Sequence[int]] = (),
    pointwise: Sequence[int] = (),
) -> CanonicalForm:
    """带约束的规范形：setwise 中各集合整体不变，pointwise 中各顶点逐点固定"""
    colors = list(colors) if colors is not None else [1] * n
    refiner = _Refiner(n, adj, colors, [frozenset(s) for s in setwise], list(pointwise))

    first_path: List[int] = []
    first: Optional[Tuple[Tuple[int, ...], bytes]] = None
    best: Optional[Tuple[Tuple[int, ...], bytes]] = None
    generators: List[Permutation] = []

    def record(source: Sequence[int], target: Sequence[int]) -> None:
        gamma = [0] * n
        for a, b in zip(source, target):
            gamma[a] = b
        perm = tuple(gamma)
        if perm != tuple(range(n)) and perm not in generators:
            generators.append(perm)

    def stabilizer(prefix: Sequence[int]) -> List[Permutation]:
        return [g for g in generators if all(g[v] == v for v in prefix)]

    def search(partition: Partition, prefix: List[int]) -> Optional[int]:
        nonlocal first, best
        target = None
        for cell in partition:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = tuple(cell[0] for cell in partition)
            cert = refiner.certificate(order)
            if first is None:
                first = best = (order, cert)
                first_path.extend(prefix)
                return None
            if cert == first[1]:
                record(first[0], order)
                common = 0
                while common < len(prefix) and prefix[common] == first_path[common]:
                    common += 1
                return common
            assert best is not None
            if cert == best[1]:
                record(best[0], order)
            elif cert > best[1]:
                best = (order, cert)
            return None

        explored: List[int] = []
        for v in sorted(target):
            if explored:
                orbit = _orbits(n, stabilizer(prefix))
                if any(orbit[v] == orbit[u] for u in explored):
                    continue
            idx = partition.index(target)
            child = (
                partition[:idx]
                + [[v], [w for w in target if w != v]]
                + partition[idx + 1 :]
            )
            result = search(refiner.refine(child), prefix + [v])
            explored.append(v)
            if result is not None and result < len(prefix):
                return result
        return None

    search(refiner.refine(refiner.initial()), [])
    assert first is not None and best is not None

    group_order = 1
    for level, v in enumerate(first_path):
        orbit = _orbits(n, stabilizer(first_path[:level]))
        group_order *= sum(1 for w in range(n) if orbit[w] == orbit[v])

    return CanonicalForm(
        certificate=best[1],
        labeling=best[0],
        generators=tuple(generators),
        group_order=group_order,
    )


__all__ = ["CERTIFICATE_HEADER", "CanonicalForm", "canonical_form"]
