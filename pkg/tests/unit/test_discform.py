# K3 Lines - 判别形式单元测试
# 测试判别形式、迷向子群、偶格存在性与几何性判定

import json
import random
from fractions import Fraction
from typing import Dict, List

import pytest

from k3lines.core.exceptions import DegenerateLatticeError
from k3lines.discform import (
    FiniteQuadraticForm,
    JordanBlock,
    binary_form_oracle,
    brown_signature,
    discriminant_form,
    even_lattice_exists,
    form_from_blocks,
    is_geometric_lattice,
    is_isomorphic,
    isotropic_subgroups,
    iter_isotropic_subgroups,
    negate,
    normal_form,
)
from k3lines.intlat import (
    GramLattice,
    PolarizedLattice,
    binary,
    determinant,
    hyperbolic_plane,
    overlattice,
    parse_lattice,
    root_lattice,
    signature,
)


@pytest.fixture
def trivial_form():
    return discriminant_form(hyperbolic_plane())


@pytest.fixture
def a2_form():
    return discriminant_form(root_lattice("A", 2))


class TestDiscriminantForm:
    """判别形式构造测试类"""

    def test_unimodular_is_trivial(self, trivial_form):
        """测试幺模格的判别群平凡"""
        assert trivial_form.is_trivial()
        assert discriminant_form(parse_lattice("E8")).is_trivial()

    def test_a2(self, a2_form):
        """测试 A₂ 的判别形式为 Z/3，q ≡ −2/3"""
        assert a2_form.orders == (3,)
        assert a2_form.q((1,)) == Fraction(4, 3)
        assert a2_form.q((2,)) == Fraction(4, 3)

    def test_single_line_fano(self):
        """测试 [[4,1],[1,-2]] 的判别群为 Z/9"""
        assert discriminant_form(binary(4, 1, -2)).orders == (9,)

    def test_degenerate_rejected(self):
        """测试退化格没有判别形式"""
        with pytest.raises(DegenerateLatticeError):
            discriminant_form(GramLattice(((0, 0), (0, -2))))

    def test_brown_signature(self, a2_form, trivial_form):
        """测试判别形式的符号差 mod 8"""
        assert brown_signature(trivial_form) == 0
        assert brown_signature(a2_form) == 6
        assert brown_signature(negate(a2_form)) == 2

    def test_normal_form_is_json(self, a2_form):
        """测试正规形为 p-块列表"""
        blocks = normal_form(a2_form)
        assert len(blocks) == 1
        assert blocks[0]["p"] == 3
        assert blocks[0]["exponent"] == 1
        assert blocks[0]["type"] == "cyclic"

    def test_normal_form_identifies_odd_square_classes(self):
        """测试 ⟨2/3⟩⊕⟨2/3⟩ 与 ⟨4/3⟩⊕⟨4/3⟩ 同构且正规形相同"""
        first = form_from_blocks([JordanBlock(3, 1, "cyclic", Fraction(2, 3))] * 2)
        second = form_from_blocks([JordanBlock(3, 1, "cyclic", Fraction(4, 3))] * 2)
        assert is_isomorphic(first, second)
        assert normal_form(first) == normal_form(second)

    def test_normal_form_separates_odd_determinants(self):
        """测试 ⟨2/3⟩ 与 ⟨4/3⟩ 不同构，正规形不同"""
        first = form_from_blocks([JordanBlock(3, 1, "cyclic", Fraction(2, 3))])
        second = form_from_blocks([JordanBlock(3, 1, "cyclic", Fraction(4, 3))])
        assert normal_form(first) != normal_form(second)

    def test_normal_form_reduces_two_adic_values(self):
        """测试 Z/8 上 q = 9/8 与 q = 1/8 给出相同的块"""
        first = form_from_blocks([JordanBlock(2, 3, "cyclic", Fraction(9, 8))])
        second = form_from_blocks([JordanBlock(2, 3, "cyclic", Fraction(1, 8))])
        assert normal_form(first) == normal_form(second) == [
            {"p": 2, "exponent": 3, "type": "cyclic", "q": "1/8"}
        ]

    def test_isomorphism(self, a2_form):
        """测试同构判定"""
        assert is_isomorphic(a2_form, discriminant_form(root_lattice("A", 2)))
        assert not is_isomorphic(a2_form, negate(a2_form))
        assert not is_isomorphic(a2_form, discriminant_form(binary(4, 1, -2)))


class TestIsotropicSubgroups:
    """迷向子群枚举测试类"""

    def test_trivial_form(self, trivial_form):
        """测试平凡形式只有平凡子群"""
        groups = isotropic_subgroups(trivial_form)
        assert len(groups) == 1
        assert groups[0].is_trivial()

    def test_z3_has_no_isotropic_elements(self, a2_form):
        """测试 Z/3, q = −2/3 只有平凡子群"""
        groups = isotropic_subgroups(a2_form)
        assert [g.order for g in groups] == [1]

    def test_hyperbolic_two_adic_block(self):
        """测试 u(2) 有平凡子群和两个 2 阶迷向子群"""
        u = form_from_blocks([JordanBlock(2, 1, "u")])
        groups = isotropic_subgroups(u)
        assert sorted(g.order for g in groups) == [1, 2, 2]

    def test_subgroups_are_isotropic(self):
        """测试 D₄ ⊕ D₄ 的每个迷向子群确实迷向"""
        q = discriminant_form(parse_lattice("D4+D4"))
        for group in isotropic_subgroups(q):
            for g in group.generators:
                assert q.q(g) == 0
            for g in group.generators:
                for h in group.generators:
                    assert q.b(g, h) == 0

    def test_hyperbolic_plane_sum_count(self):
        """测试 u(2) ⊕ u(2) 有 1 + 9 + 6 个迷向子群"""
        q = form_from_blocks([JordanBlock(2, 1, "u"), JordanBlock(2, 1, "u")])
        groups = isotropic_subgroups(q)
        assert sorted(g.order for g in groups) == [1] + [2] * 9 + [4] * 6
        assert len({g.elements for g in groups}) == 16

    def test_rejected_subgroups_are_not_grown(self):
        """测试被拒绝的子群不产出且不再向上生长"""
        q = form_from_blocks([JordanBlock(2, 1, "u"), JordanBlock(2, 1, "u")])
        groups = list(iter_isotropic_subgroups(q, accept=lambda k: k.order <= 2))
        assert sorted(g.order for g in groups) == [1] + [2] * 9

    def test_walk_is_lazy_on_large_groups(self):
        """测试大判别群上只取前几个子群时无需遍历整个群"""
        lattice = parse_lattice("+".join(["A1"] * 18))
        walk = iter_isotropic_subgroups(discriminant_form(lattice))
        first = [next(walk) for _ in range(3)]
        assert first[0].is_trivial()
        assert [g.order for g in first[1:]] == [2, 4]


class TestExistence:
    """偶格存在性测试类"""

    def test_hyperbolic_plane_exists(self, trivial_form):
        """测试 (1,1) 平凡形式存在（U）"""
        assert even_lattice_exists(1, 1, trivial_form)

    def test_a2_exists(self, a2_form):
        """测试 (0,2) 与 A₂ 的判别形式存在"""
        assert even_lattice_exists(0, 2, a2_form)

    def test_rank_one_unimodular_impossible(self, trivial_form):
        """测试秩 1 偶幺模负定格不存在"""
        assert not even_lattice_exists(0, 1, trivial_form)

    def test_binary_oracle(self, a2_form, trivial_form):
        """测试二元型穷举"""
        assert binary_form_oracle(0, 2, a2_form)
        assert binary_form_oracle(2, 0, discriminant_form(binary(2, 1, 2)))
        assert not binary_form_oracle(0, 2, trivial_form)

    def test_local_criteria_agree_with_oracle(self, a2_form, trivial_form):
        """测试秩 2 时局部判据与二元型穷举一致（cross_check 不抛错）"""
        assert even_lattice_exists(0, 2, a2_form, cross_check=True)
        assert not even_lattice_exists(0, 2, trivial_form, cross_check=True)


class TestGeometricLattice:
    """几何性判定测试类"""

    def test_polarization_alone(self):
        """测试 [4] 可嵌入 K3 格"""
        assert is_geometric_lattice(PolarizedLattice(GramLattice(((4,),)), (1,)))

    def test_single_line(self):
        """测试单线 Fano 格可嵌入 K3 格"""
        assert is_geometric_lattice(PolarizedLattice(binary(4, 1, -2), (1, 0)))

    def test_rank_21_rejected(self):
        """测试秩 21 的格不是几何的"""
        lattice = parse_lattice("[4]+2E8+A2+A2")
        assert lattice.rank == 21
        assert not is_geometric_lattice(PolarizedLattice(lattice, (1,) + (0,) * 20))


def _random_even_lattices(count: int, seed: int = 20240) -> List[GramLattice]:
    rng = random.Random(seed)
    found: List[GramLattice] = []
    while len(found) < count:
        n = rng.randint(1, 6)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = 2 * rng.randint(-4, 4)
            for j in range(i + 1, n):
                gram[i][j] = gram[j][i] = rng.randint(-8, 8)
        lattice = GramLattice(gram)
        if determinant(lattice) != 0:
            found.append(lattice)
    return found


class TestRandomLattices:
    """随机偶格上的判别形式一致性测试类"""

    def test_milgram_signature(self):
        """测试 200 个随机偶格的 Brown 符号差 ≡ σ₊ − σ₋ mod 8"""
        for lattice in _random_even_lattices(200):
            plus, minus, _ = signature(lattice)
            assert brown_signature(discriminant_form(lattice)) == (plus - minus) % 8, lattice.gram

    def test_overlattice_determinants(self):
        """测试每个迷向子群 K 的扩格满足 det(L_K)·|K|² = det(L)"""
        checked = 0
        for lattice in _random_even_lattices(200):
            det = determinant(lattice)
            if abs(det) > 2000:
                continue
            for kernel in isotropic_subgroups(discriminant_form(lattice)):
                ext = overlattice(lattice, kernel)
                assert determinant(ext.lattice) * kernel.order**2 == det, lattice.gram
                checked += 1
        assert checked >= 50


def _binary_forms(max_det: int) -> List[FiniteQuadraticForm]:
    forms: Dict[str, FiniteQuadraticForm] = {}
    for a in range(-12, 13, 2):
        for c in range(-12, 13, 2):
            for b in range(-8, 9):
                det = a * c - b * b
                if det == 0 or abs(det) > max_det:
                    continue
                q = discriminant_form(binary(a, b, c))
                for form in (q, negate(q)):
                    forms.setdefault(json.dumps(normal_form(form), sort_keys=True), form)
    return list(forms.values())


class TestBinaryExistence:
    """秩 2 存在性与二元型穷举对照测试类"""

    @pytest.mark.parametrize("sigma_plus,sigma_minus", [(2, 0), (1, 1), (0, 2)])
    def test_local_criteria_match_oracle(self, sigma_plus, sigma_minus):
        """测试 |det| ≤ 50 的全部二元判别形式上局部判据与穷举一致"""
        for q in _binary_forms(50):
            local = even_lattice_exists(sigma_plus, sigma_minus, q, cross_check=False)
            assert local == binary_form_oracle(sigma_plus, sigma_minus, q), normal_form(q)
