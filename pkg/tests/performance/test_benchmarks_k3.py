# K3 Lines - 性能基准测试
# 测试根枚举、判定电池、规范形与模式宇宙构造的耗时

import statistics
import time
from dataclasses import dataclass
from typing import Callable, List

import pytest

from k3lines.admiss import BatteryMode, clear_caches, test_battery
from k3lines.fano import ConfigGraph, canonical_form
from k3lines.girthsearch import quad_standard_graph
from k3lines.intlat import enumerate_vectors_in_coset, root_lattice
from k3lines.trig.patterns import build_universes


@dataclass
class BenchmarkResult:
    """基准测试结果数据类"""

    operation_name: str
    runs: int
    avg_time: float
    max_time: float


def _benchmark(name: str, fn: Callable[[], object], runs: int = 3) -> BenchmarkResult:
    times: List[float] = []
    for _ in range(runs):
        clear_caches()
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return BenchmarkResult(name, runs, statistics.mean(times), max(times))


@pytest.mark.performance
class TestLatticeBenchmarks:
    """格运算性能基准测试"""

    def test_e8_root_enumeration(self):
        """E8 的 240 个根的枚举耗时"""
        lattice = root_lattice("E", 8)
        assert len(enumerate_vectors_in_coset(lattice)) == 240
        result = _benchmark("e8_roots", lambda: enumerate_vectors_in_coset(lattice))
        assert result.max_time < 30.0


@pytest.mark.performance
@pytest.mark.slow
class TestSearchBenchmarks:
    """搜索组件性能基准测试"""

    def test_battery_on_quad_standard_graph(self):
        """四边形标准图上判定电池的耗时"""
        graph = quad_standard_graph(10, 0)
        result = _benchmark("battery", lambda: test_battery(graph, BatteryMode.SMOOTH), runs=2)
        assert result.max_time < 600.0

    def test_canonical_form_twenty_vertices(self):
        """20 顶点图的规范形耗时且与重标号无关"""
        graph = ConfigGraph.cycle(20)
        perm = list(range(1, 20)) + [0]
        result = _benchmark("canonical_form", lambda: canonical_form(graph), runs=5)
        assert canonical_form(graph).certificate == canonical_form(graph.relabel(perm)).certificate
        assert result.avg_time < 10.0

    def test_build_small_universes(self):
        """小规模模式宇宙的构造耗时"""
        result = _benchmark("universes", lambda: build_universes(3, BatteryMode.SMOOTH, workers=1), runs=1)
        assert result.max_time < 300.0
