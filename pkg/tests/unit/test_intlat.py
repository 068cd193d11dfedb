# K3 Lines - 整格运算单元测试
# 测试惯性指数、行列式、Smith 标准形、陪集枚举、正交补与扩格

import itertools
from fractions import Fraction

import pytest
import sympy

from k3lines.core.exceptions import LatticeError, NotIsotropicError, NotNegativeDefiniteError
from k3lines.intlat import (
    GramLattice,
    PolarizedLattice,
    binary,
    determinant,
    enumerate_vectors_in_coset,
    kernel_basis,
    hyperbolic_plane,
    orthogonal_complement,
    overlattice,
    parse_lattice,
    root_lattice,
    scaled,
    signature,
    smith_normal_form,
    solve_rational,
)


class TestGramLattice:
    """Gram 格构造测试类"""

    def test_rejects_odd_diagonal(self):
        """测试奇数对角元被拒绝"""
        with pytest.raises(LatticeError):
            GramLattice(((1, 0), (0, 2)))

    def test_rejects_asymmetric(self):
        """测试非对称矩阵被拒绝"""
        with pytest.raises(LatticeError):
            GramLattice(((2, 1), (0, 2)))

    def test_polarization_requires_degree_four(self):
        """测试极化向量必须满足 h² = 4"""
        with pytest.raises(LatticeError):
            PolarizedLattice(GramLattice(((2,),)), (1,))

    def test_parse_lattice_notation(self):
        """测试格记号解析"""
        assert parse_lattice("U").gram == hyperbolic_plane().gram
        assert parse_lattice("[4]+A1").rank == 2
        assert parse_lattice("U(2)").gram == ((0, 2), (2, 0))
        assert parse_lattice("[2,1,2]").gram == ((2, 1), (1, 2))
        assert parse_lattice("2E8+3U").rank == 22

    def test_parse_lattice_rejects_garbage(self):
        """测试无法解析的记号"""
        with pytest.raises(LatticeError):
            parse_lattice("Q7")


class TestInvariants:
    """惯性指数与行列式测试类"""

    def test_signature_of_hyperbolic_plane(self):
        """测试 U 的惯性指数"""
        assert signature(hyperbolic_plane()) == (1, 1, 0)

    def test_signature_of_a2(self):
        """测试 A₂ 负定"""
        assert signature(root_lattice("A", 2)) == (0, 2, 0)

    def test_signature_of_single_line(self):
        """测试 h 加一条直线的惯性指数"""
        assert signature(binary(4, 1, -2)) == (1, 1, 0)

    def test_signature_of_degenerate(self):
        """测试退化格的零指数"""
        assert signature(GramLattice(((0, 0), (0, -2)))) == (0, 1, 1)

    def test_determinants(self):
        """测试行列式"""
        assert determinant(hyperbolic_plane()) == -1
        assert determinant(binary(4, 1, -2)) == -9
        assert determinant(parse_lattice("2E8+3U")) == -1
        assert determinant(root_lattice("A", 2)) == 3
        assert determinant(root_lattice("D", 4)) == 4

    def test_scaled_determinant(self):
        """测试 L(n) 的行列式"""
        assert determinant(scaled(hyperbolic_plane(), 2)) == -4

    def test_signature_of_k3_lattice(self):
        """测试 2E8⊕3U 的惯性指数为 (3, 19)"""
        assert signature(parse_lattice("2E8+3U")) == (3, 19, 0)

    def test_signature_with_zero_leading_minor(self):
        """测试对角元全为零的不定格"""
        assert signature(GramLattice(((0, 1, 0), (1, 0, 0), (0, 0, 0)))) == (1, 1, 1)

    def test_polarized_lattice_need_not_be_hyperbolic(self):
        """测试 σ₊ = 2 的带极化格可以构造，is_hyperbolic 为假"""
        lattice = PolarizedLattice(parse_lattice("[4]+U"), (1, 0, 0))
        assert not lattice.is_hyperbolic
        assert PolarizedLattice(binary(4, 1, -2), (1, 0)).is_hyperbolic


class TestLinearAlgebra:
    """有理线性代数测试类"""

    def test_kernel_basis_is_primitive(self):
        """测试 (2, 4) 的整数核由 (2, −1) 生成而不是其倍数"""
        assert kernel_basis(((2, 4),)) in ([(2, -1)], [(-2, 1)])

    def test_kernel_basis_of_full_rank(self):
        """测试满秩矩阵的核为空"""
        assert kernel_basis(((1, 0), (0, 3))) == []

    def test_kernel_basis_spans_all_solutions(self):
        """测试秩 1 的 3 列矩阵有两维核且每个基向量都在核中"""
        matrix = ((1, 2, 3),)
        basis = kernel_basis(matrix)
        assert len(basis) == 2
        for v in basis:
            assert sum(a * b for a, b in zip(matrix[0], v)) == 0
        snf = smith_normal_form(basis)
        assert [d for d in snf.diagonal if d] == [1, 1]

    def test_solve_rational(self):
        """测试有理系数表示"""
        assert solve_rational(((2, 0), (0, 3)), (1, 1)) == (Fraction(1, 2), Fraction(1, 3))

    def test_solve_rational_inconsistent(self):
        """测试目标不在张成空间中时返回 None"""
        assert solve_rational(((1, 0),), (0, 1)) is None

    def test_solve_rational_free_variables(self):
        """测试线性相关的行时给出一个解"""
        rows = ((1, 1), (2, 2))
        c = solve_rational(rows, (3, 3))
        assert c is not None
        assert tuple(sum(ci * r[k] for ci, r in zip(c, rows)) for k in range(2)) == (3, 3)


class TestSmithNormalForm:
    """Smith 标准形测试类"""

    def test_identity(self):
        """测试单位矩阵"""
        assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)

    def test_a2(self):
        """测试 A₂ 的不变因子"""
        assert smith_normal_form([[-2, 1], [1, -2]]).diagonal == (1, 3)

    def test_single_line(self):
        """测试 [[4,1],[1,-2]] 的不变因子"""
        assert smith_normal_form([[4, 1], [1, -2]]).diagonal == (1, 9)

    def test_transforms_are_consistent(self):
        """测试 D = U·M·V"""
        m = [[4, 1, 1], [1, -2, 1], [1, 1, -2]]
        snf = smith_normal_form(m)
        n = len(m)
        um = [[sum(snf.left[i][k] * m[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        d = [[sum(um[i][k] * snf.right[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                assert d[i][j] == (snf.diagonal[i] if i == j else 0)


class TestCosetEnumeration:
    """负定格陪集枚举测试类"""

    def test_a2_roots(self):
        """测试 A₂ 有 6 个根"""
        assert len(enumerate_vectors_in_coset(root_lattice("A", 2), None, -2)) == 6

    def test_e8_roots(self):
        """测试 E₈ 有 240 个根"""
        assert len(enumerate_vectors_in_coset(root_lattice("E", 8), None, -2)) == 240

    def test_d4_roots(self):
        """测试 D₄ 有 24 个根"""
        assert len(enumerate_vectors_in_coset(root_lattice("D", 4), None, -2)) == 24

    def test_half_shift_in_a1(self):
        """测试 A₁ 的半整陪集中没有平方 −2 的向量"""
        assert enumerate_vectors_in_coset(root_lattice("A", 1), [Fraction(1, 2)], -2) == []

    def test_half_shift_rational_target(self):
        """测试有理目标平方：A₁ 半整陪集中平方 −1/2 的向量为 ±½"""
        found = enumerate_vectors_in_coset(root_lattice("A", 1), [Fraction(1, 2)], Fraction(-1, 2))
        assert sorted(found) == [(-1,), (0,)]

    def test_requires_negative_definite(self):
        """测试非负定格被拒绝"""
        with pytest.raises(NotNegativeDefiniteError):
            enumerate_vectors_in_coset(hyperbolic_plane(), None, -2)


def _box_root_count(lattice: GramLattice) -> int:
    """在 |xᵢ|² ≤ 2·(−G)⁻¹ᵢᵢ 的盒子内逐点计数平方 −2 的向量"""
    inverse = (-sympy.Matrix(lattice.gram)).inv()
    bounds = [int(sympy.floor(sympy.sqrt(2 * inverse[i, i]))) for i in range(lattice.rank)]
    return sum(
        1
        for x in itertools.product(*(range(-b, b + 1) for b in bounds))
        if lattice.square(x) == -2
    )


def _e8_coordinate_root_count() -> int:
    """E₈ 的坐标模型 D₈ ∪ (D₈ + ½·𝟙) 中范数 2 的向量个数"""
    integral = sum(
        1
        for x in itertools.product((-1, 0, 1), repeat=8)
        if sum(c * c for c in x) == 2
    )
    half = sum(1 for signs in itertools.product((-1, 1), repeat=8) if signs.count(-1) % 2 == 0)
    return integral + half


class TestRootCountOracle:
    """根个数与朴素枚举对照测试类"""

    @pytest.mark.parametrize("family,n,expected", [("A", 2, 6), ("A", 3, 12), ("D", 4, 24)])
    def test_box_enumeration_agrees(self, family, n, expected):
        """测试陪集枚举与盒子内逐点枚举给出相同的根个数"""
        lattice = root_lattice(family, n)
        assert _box_root_count(lattice) == expected
        assert len(enumerate_vectors_in_coset(lattice, None, -2)) == expected

    def test_e8_agrees_with_coordinate_model(self):
        """测试 E₈ 根个数与坐标模型一致"""
        assert _e8_coordinate_root_count() == 240
        assert len(enumerate_vectors_in_coset(root_lattice("E", 8), None, -2)) == 240


class TestSublattices:
    """正交补与扩格测试类"""

    def test_complement_of_isotropic_vector(self):
        """测试 U 中 e₁ 的正交补由 e₁ 张成"""
        sub = orthogonal_complement(hyperbolic_plane(), [(1, 0)])
        assert sub.rank == 1
        assert sub.basis[0] in ((1, 0), (-1, 0))

    def test_complement_of_polarization(self):
        """测试单线 Fano 格中 h 的正交补"""
        sub = orthogonal_complement(binary(4, 1, -2), [(1, 0)])
        assert sub.rank == 1
        generator = sub.basis[0]
        assert binary(4, 1, -2).dot(generator, (1, 0)) == 0
        assert sub.lattice.gram == ((-36,),)

    def test_complement_of_nothing(self):
        """测试空向量组的正交补是整个格"""
        assert orthogonal_complement(root_lattice("A", 2), []).rank == 2

    def test_trivial_overlattice(self):
        """测试平凡胶合不改变格"""
        result = overlattice(root_lattice("A", 2), [])
        assert result.index == 1
        assert result.lattice.gram == root_lattice("A", 2).gram

    def test_index_two_overlattice_of_u2(self):
        """测试 U(2) 经迷向元素 e₁/2 胶合得到 U"""
        u2 = scaled(hyperbolic_plane(), 2)
        result = overlattice(u2, [(Fraction(1, 2), Fraction(0))])
        assert result.index == 2
        assert determinant(result.lattice) == -1
        assert signature(result.lattice) == (1, 1, 0)
        assert determinant(result.lattice) * result.index**2 == determinant(u2)

    def test_odd_glue_rejected(self):
        """测试 q 值为奇数的胶合元素被拒绝"""
        with pytest.raises(NotIsotropicError):
            overlattice(scaled(hyperbolic_plane(), 2), [(Fraction(1, 2), Fraction(1, 2))])
