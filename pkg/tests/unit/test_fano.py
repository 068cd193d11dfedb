# K3 Lines - 配置图与 Fano 格单元测试
# 测试 Fano 格、图分类、Dynkin 识别、束分解、规范形与 Δ-集合模式

import math

import pytest

from k3lines.core.exceptions import GraphError, PatternError
from k3lines.fano import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    ConfigGraph,
    DynkinLabel,
    Pattern,
    canonical_form,
    classify_graph,
    decompose_pencil,
    dynkin_type,
    fano_lattice,
    girth,
    girth_class,
    graph_rank,
    kappa,
    minimal_fibers,
    ordered_fiber,
    pattern_of_delta_set,
)
from k3lines.intlat import determinant


class TestConfigGraph:
    """配置图数据结构测试类"""

    def test_json_round_trip(self, triangle):
        """测试 JSON 读写保持图不变"""
        graph = triangle.add_vertex({0: 1}, color=0)
        assert ConfigGraph.from_json(graph.to_json()) == graph

    def test_bad_json(self):
        """测试缺少字段的 JSON 报错"""
        with pytest.raises(GraphError):
            ConfigGraph.from_json({"edges": [[0, 1]]})

    def test_counts(self, triangle):
        """测试直线与例外除子计数"""
        graph = triangle.add_vertex([0], color=0)
        assert graph.line_count == 3
        assert graph.exceptional_count == 1

    def test_relabel_keeps_isomorphism_class(self):
        """测试重新编号后规范字节不变"""
        graph = ConfigGraph.from_edges(
            10, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 3), (1, 5)]
        )
        perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5]
        assert canonical_form(graph).certificate == canonical_form(graph.relabel(perm)).certificate


class TestFanoLattice:
    """Fano 格测试类"""

    def test_single_line(self, single_line):
        """测试单线 Fano 格为 [[4,1],[1,-2]]"""
        fano = fano_lattice(single_line)
        assert fano.polarized.lattice.gram == ((4, 1), (1, -2))
        assert fano.rank == 2

    def test_triangle(self, triangle):
        """测试三角形 Fano 格的秩与行列式"""
        fano = fano_lattice(triangle)
        assert fano.rank == 4
        assert determinant(fano.polarized.lattice) == -27

    def test_fiber_class_is_isotropic(self, triangle):
        """测试 κ = c₁ + c₂ + c₃ 在 Fano 格中迷向"""
        fano = fano_lattice(triangle)
        kappa_vector = tuple(sum(col) for col in zip(*fano.images))
        assert fano.polarized.lattice.square(kappa_vector) == 0
        assert fano.polarized.degree(kappa_vector) == 3

    def test_two_disjoint_triangles_collapse(self):
        """测试两个不交三角形的纤维类相同，秩下降"""
        graph = ConfigGraph.cycle(3).disjoint_union(ConfigGraph.cycle(3))
        assert graph_rank(graph) == 6


class TestClassification:
    """图分类与 Dynkin 识别测试类"""

    def test_classify(self, triangle):
        """测试椭圆、抛物与双曲"""
        assert classify_graph(ConfigGraph.path(3)) == ELLIPTIC
        assert classify_graph(triangle) == PARABOLIC
        assert classify_graph(triangle.add_vertex([0])) == HYPERBOLIC

    def test_dynkin_types(self, square):
        """测试 Dynkin 类型识别"""
        assert dynkin_type(square) == DynkinLabel("A", 3, affine=True)
        assert str(dynkin_type(ConfigGraph.star(4))) == "~D4"
        assert str(dynkin_type(ConfigGraph.path(3))) == "A3"
        assert str(dynkin_type(ConfigGraph.star(3))) == "D4"

    def test_dynkin_requires_connected(self):
        """测试不连通图报错"""
        with pytest.raises(GraphError):
            dynkin_type(ConfigGraph.path(1).disjoint_union(ConfigGraph.path(1)))

    def test_kappa(self, triangle, square):
        """测试纤维的核向量"""
        assert kappa(triangle) == (1, 1, 1)
        assert kappa(square) == (1, 1, 1, 1)
        assert kappa(ConfigGraph.star(4)) == (2, 1, 1, 1, 1)
        assert kappa(ConfigGraph.cycle(5)) == (1, 1, 1, 1, 1)

    def test_girth(self, triangle, square):
        """测试围长"""
        assert girth(triangle) == 3
        assert girth(square) == 4
        assert math.isinf(girth(ConfigGraph.path(4)))

    def test_girth_class(self, triangle, square):
        """测试围长类别"""
        assert girth_class(triangle) == "triangular"
        assert girth_class(square) == "quadrangular"
        assert girth_class(ConfigGraph.cycle(5)) == "pentagonal"
        assert girth_class(ConfigGraph.star(4)) == "astral"
        assert girth_class(ConfigGraph.cycle(6)) == "locally elliptic"

    def test_ordered_fiber_puts_center_first(self):
        """测试 ~D4 纤维以中心为首"""
        graph = ConfigGraph.from_edges(5, [(4, 0), (4, 1), (4, 2), (4, 3)])
        assert ordered_fiber(graph, [0, 1, 2, 3, 4])[0] == 4

    def test_minimal_fibers(self, triangle):
        """测试最小纤维"""
        fibers = minimal_fibers(triangle.add_vertex([0]))
        assert [str(label) for label, _ in fibers] == ["~A2"]
        assert sorted(fibers[0][1]) == [0, 1, 2]


class TestPencilDecomposition:
    """束分解测试类"""

    def test_bare_fiber(self, triangle):
        """测试只有纤维时束为纤维本身"""
        pencil = decompose_pencil(triangle, (0, 1, 2))
        assert pencil.pencil == (0, 1, 2)
        assert pencil.sec_star == ()

    def test_simple_section(self, triangle):
        """测试只与 c₁ 相交的顶点属于 sec₁"""
        graph = triangle.add_vertex([0])
        pencil = decompose_pencil(graph, (0, 1, 2))
        assert pencil.sec[0] == (3,)
        assert pencil.multiplicity[3] == 1
        assert pencil.multiple_sections == []

    def test_double_section(self, triangle):
        """测试与 c₁, c₂ 都相交的顶点是二重截线"""
        graph = triangle.add_vertex([0, 1])
        pencil = decompose_pencil(graph, (0, 1, 2))
        assert pencil.multiplicity[3] == 2
        assert 3 in pencil.sec_star_i[0] and 3 in pencil.sec_star_i[1]
        assert 3 not in pencil.sec[0]
        assert pencil.multiple_sections == [3]

    def test_pencil_members(self, triangle):
        """测试与纤维不交的顶点属于束"""
        graph = triangle.disjoint_union(ConfigGraph.path(2))
        assert decompose_pencil(graph, (0, 1, 2)).pencil == (0, 1, 2, 3, 4)


class TestCanonicalForm:
    """规范形测试类"""

    def test_triangle_automorphisms(self, triangle):
        """测试三角形的自同构群阶为 6"""
        assert canonical_form(triangle).group_order == 6

    def test_pointwise_constraint(self, triangle):
        """测试逐点固定 c₁ 后阶为 2"""
        assert canonical_form(triangle, pointwise=(0,)).group_order == 2

    def test_colors_distinguish(self, triangle):
        """测试颜色参与规范形"""
        plain = triangle.add_vertex([0])
        colored = triangle.add_vertex([0], color=0)
        assert canonical_form(plain).certificate != canonical_form(colored).certificate


class TestDeltaSetPattern:
    """Δ-集合模式测试类"""

    def test_triangle_and_edge(self, triangle):
        """测试 Ã₂ ⊔ A₂ 的模式"""
        graph = triangle.disjoint_union(ConfigGraph.path(2))
        assert pattern_of_delta_set(graph) == Pattern(1, 0, 1, 0)

    def test_chain(self):
        """测试 A₃ 的模式"""
        assert pattern_of_delta_set(ConfigGraph.path(3)) == Pattern(0, 1, 0, 0)

    def test_square_forbidden(self, square):
        """测试 Ã₃ 不能出现在 Δ-集合中"""
        with pytest.raises(PatternError):
            pattern_of_delta_set(square)

    def test_pattern_arithmetic(self):
        """测试模式的大小与加减"""
        assert Pattern(1, 1, 1, 1).size == 9
        assert Pattern(1, 0, 0, 2) - Pattern(1, 0, 0, 0) == Pattern(0, 0, 0, 2)
        assert str(Pattern(2, 0, 0, 1)) == "2~A2+A1"

    def test_negative_pattern_rejected(self):
        """测试负系数被拒绝"""
        with pytest.raises(PatternError):
            Pattern(0, 0, 0, 1) - Pattern(0, 0, 0, 2)
