#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
判别形式模块

该模块实现判别群 L*/L 上的有限二次型，包括：
- 由 Gram 矩阵计算判别形式
- p-进 Jordan 分解（奇素数的循环块，2-进的循环块与 u、v 块）
- Brown 符号差（Milgram 公式）与同构判定
- 迷向子群枚举
- 偶格存在性的局部判据与二元型穷举核对
- 嵌入 2E8⊕3U 的几何性判定

Author: K3 Lines Team
Date: 2024
"""

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import gcd, isqrt, lcm
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from sympy.ntheory import factorint, legendre_symbol, multiplicity

from k3lines.core.exceptions import (
    DegenerateLatticeError,
    LatticeError,
    UndecidedError,
)
from k3lines.intlat import (
    GramLattice,
    PolarizedLattice,
    RationalVector,
    binary,
    bilinear,
    determinant,
    smith_normal_form,
)
from shared.utils.logger import get_logger

logger = get_logger(__name__)

Element = Tuple[int, ...]


def _mod(x: Fraction, m: int) -> Fraction:
    """x mod m，取值于 [0, m)"""
    return x - m * (x.numerator // (x.denominator * m))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# ==================== 有限二次型 ====================


@dataclass(frozen=True)
class FiniteQuadraticForm:
    """⊕ Z/dᵢ 上的有限二次型

    q_matrix 的对角元为 q(gᵢ) mod 2，非对角元为 b(gᵢ, gⱼ) mod 1。
    generators 记录各生成元在对偶基下的有理坐标（可为空）。
    """

    orders: Tuple[int, ...]
    q_matrix: Tuple[Tuple[Fraction, ...], ...]
    generators: Tuple[RationalVector, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.orders)
        if len(self.q_matrix) != n or any(len(row) != n for row in self.q_matrix):
            raise LatticeError("二次型矩阵维数与生成元个数不符")
        if self.generators and len(self.generators) != n:
            raise LatticeError("生成元坐标个数不符")
        normalized = tuple(
            tuple(
                _mod(Fraction(x), 2) if i == j else _mod(Fraction(x), 1)
                for j, x in enumerate(row)
            )
            for i, row in enumerate(self.q_matrix)
        )
        object.__setattr__(self, "orders", tuple(int(d) for d in self.orders))
        object.__setattr__(self, "q_matrix", normalized)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        total = 1
        for d in self.orders:
            total *= d
        return total

    @property
    def primes(self) -> List[int]:
        return sorted(factorint(self.order)) if self.order > 1 else []

    def is_trivial(self) -> bool:
        return self.order == 1

    def zero(self) -> Element:
        return (0,) * self.rank

    def reduce(self, x: Sequence[int]) -> Element:
        return tuple(int(xi) % d for xi, d in zip(x, self.orders))

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def scale(self, c: int, x: Sequence[int]) -> Element:
        return tuple((c * a) % d for a, d in zip(x, self.orders))

    def q(self, x: Sequence[int]) -> Fraction:
        """二次型取值 q(x) ∈ Q/2Z"""
        m = self.q_matrix
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            total += xi * xi * m[i][i]
            for j in range(i + 1, len(x)):
                if x[j]:
                    total += 2 * xi * x[j] * m[i][j]
        return _mod(total, 2)

    def b(self, x: Sequence[int], y: Sequence[int]) -> Fraction:
        """双线性型取值 b(x, y) ∈ Q/Z"""
        m = self.q_matrix
        total = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * m[i][j]
        return _mod(total, 1)

    def element_order(self, x: Sequence[int]) -> int:
        result = 1
        for xi, d in zip(x, self.orders):
            result = _lcm(result, d // gcd(xi % d, d))
        return result

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(d) for d in self.orders))

    def dual_vector(self, x: Sequence[int]) -> RationalVector:
        """元素在原格对偶基下的有理坐标"""
        if not self.generators:
            raise LatticeError("该二次型不携带生成元坐标")
        n = len(self.generators[0])
        out = [Fraction(0)] * n
        for xi, g in zip(x, self.generators):
            if xi:
                for k in range(n):
                    out[k] += xi * g[k]
        return tuple(out)

    def to_json(self) -> List[Dict[str, Any]]:
        return normal_form(self)


@dataclass(frozen=True)
class JordanBlock:
    """p-进 Jordan 块：循环块的 q 值为 value，u/v 块 value 为空"""

    p: int
    exponent: int
    kind: str
    value: Optional[Fraction] = None

    @property
    def numerator(self) -> int:
        """循环块 q = numerator / p^exponent"""
        if self.value is None:
            raise LatticeError("u/v 块没有循环 q 值")
        return int(self.value * self.p**self.exponent)

    @property
    def length(self) -> int:
        return 1 if self.kind == "cyclic" else 2

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"p": self.p, "exponent": self.exponent, "type": self.kind}
        if self.value is not None:
            data["q"] = str(self.value)
        return data


@dataclass(frozen=True)
class IsotropicSubgroup:
    """判别群中的迷向子群"""

    parent: FiniteQuadraticForm
    generators: Tuple[Element, ...]
    order: int
    elements: FrozenSet[Element] = field(default=frozenset(), compare=False, repr=False)

    def glue_vectors(self) -> List[RationalVector]:
        return [self.parent.dual_vector(g) for g in self.generators]

    def is_trivial(self) -> bool:
        return self.order == 1

    def to_json(self) -> Dict[str, Any]:
        return {"order": self.order, "generators": [list(g) for g in self.generators]}


# ==================== 构造 ====================


def discriminant_form(lattice: GramLattice) -> FiniteQuadraticForm:
    """L*/L 上的判别形式，经由 Gram 矩阵的 Smith 标准形"""
    if determinant(lattice) == 0:
        raise DegenerateLatticeError("退化格没有判别形式")
    snf = smith_normal_form(lattice.gram)
    n = lattice.rank
    orders: List[int] = []
    gens: List[RationalVector] = []
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            orders.append(d)
            gens.append(tuple(Fraction(snf.right[k][i], d) for k in range(n)))
    g = lattice.gram
    q_matrix = tuple(
        tuple(Fraction(bilinear(g, gi, gj)) for gj in gens) for gi in gens
    )
    return FiniteQuadraticForm(tuple(orders), q_matrix, tuple(gens))


def form_from_blocks(blocks: Sequence[JordanBlock]) -> FiniteQuadraticForm:
    """由 Jordan 块构造有限二次型（不携带生成元坐标）"""
    orders: List[int] = []
    entries: List[Tuple[int, int, Fraction]] = []
    for block in blocks:
        base = len(orders)
        scale = block.p**block.exponent
        if block.kind == "cyclic":
            orders.append(scale)
            entries.append((base, base, Fraction(block.value or 0)))
        elif block.kind in ("u", "v"):
            orders.extend([scale, scale])
            diag = Fraction(0) if block.kind == "u" else Fraction(2, scale)
            entries += [
                (base, base, diag),
                (base + 1, base + 1, diag),
                (base, base + 1, Fraction(1, scale)),
                (base + 1, base, Fraction(1, scale)),
            ]
        else:
            raise LatticeError(f"未知 Jordan 块类型: {block.kind}")
    m = [[Fraction(0)] * len(orders) for _ in orders]
    for i, j, x in entries:
        m[i][j] = x
    return FiniteQuadraticForm(tuple(orders), tuple(tuple(r) for r in m))


def negate(q: FiniteQuadraticForm) -> FiniteQuadraticForm:
    """−q"""
    return FiniteQuadraticForm(
        q.orders, tuple(tuple(-x for x in row) for row in q.q_matrix), q.generators
    )


def restrict_to_primary(q: FiniteQuadraticForm, p: int) -> Tuple[FiniteQuadraticForm, List[Element]]:
    """p-准素部分，以及其生成元在原坐标中的像"""
    idx: List[int] = []
    mult: List[int] = []
    orders: List[int] = []
    for i, d in enumerate(q.orders):
        v = multiplicity(p, d)
        if v:
            idx.append(i)
            mult.append(d // p**v)
            orders.append(p**v)
    m = q.q_matrix
    q_matrix = tuple(
        tuple(mult[a] * mult[c] * m[i][j] for c, j in enumerate(idx))
        for a, i in enumerate(idx)
    )
    gens: Tuple[RationalVector, ...] = ()
    if q.generators:
        gens = tuple(tuple(mult[a] * x for x in q.generators[i]) for a, i in enumerate(idx))
    images = []
    for a, i in enumerate(idx):
        e = [0] * q.rank
        e[i] = mult[a] % q.orders[i]
        images.append(tuple(e))
    return FiniteQuadraticForm(tuple(orders), q_matrix, gens), images


def length(q: FiniteQuadraticForm, p: int) -> int:
    """p-准素部分的最少生成元个数"""
    return sum(1 for d in q.orders if d % p == 0)


# ==================== Jordan 分解 ====================


def _denominator_exponent(x: Fraction, p: int) -> int:
    return multiplicity(p, x.denominator) if x else 0


def jordan_blocks(q: FiniteQuadraticForm, p: int) -> List[JordanBlock]:
    """p-准素部分的 Jordan 分解，块按指数升序排列"""
    qp, _ = restrict_to_primary(q, p)
    basis: List[Element] = [
        tuple(int(i == j) for j in range(qp.rank)) for i in range(qp.rank)
    ]
    blocks: List[JordanBlock] = []

    while basis:
        top = 0
        for i in range(len(basis)):
            for j in range(i, len(basis)):
                top = max(top, _denominator_exponent(qp.b(basis[i], basis[j]), p))
        if top == 0:
            raise UndecidedError("判别形式退化", {"p": p})
        scale = p**top

        diag = next(
            (
                i
                for i in range(len(basis))
                if _denominator_exponent(qp.b(basis[i], basis[i]), p) == top
            ),
            None,
        )
        if diag is None and p != 2:
            i, j = next(
                (i, j)
                for i in range(len(basis))
                for j in range(i + 1, len(basis))
                if _denominator_exponent(qp.b(basis[i], basis[j]), p) == top
            )
            basis[i] = qp.add(basis[i], basis[j])
            diag = i

        if diag is not None:
            e = basis.pop(diag)
            s = int(qp.b(e, e) * scale)
            s_inv = pow(s, -1, scale)
            basis = [
                qp.add(f, qp.scale(-(int(qp.b(f, e) * scale) * s_inv) % scale, e))
                for f in basis
            ]
            blocks.append(JordanBlock(p, top, "cyclic", qp.q(e)))
            continue

        # 2-进 2×2 块
        i, j = next(
            (i, j)
            for i in range(len(basis))
            for j in range(i + 1, len(basis))
            if _denominator_exponent(qp.b(basis[i], basis[j]), 2) == top
        )
        e, f = basis[i], basis[j]
        basis = [g for k, g in enumerate(basis) if k not in (i, j)]
        m11 = int(qp.b(e, e) * scale)
        m12 = int(qp.b(e, f) * scale)
        m22 = int(qp.b(f, f) * scale)
        det_inv = pow((m11 * m22 - m12 * m12) % scale, -1, scale)
        adj = ((m22, -m12), (-m12, m11))
        reduced = []
        for g in basis:
            r1 = int(qp.b(g, e) * scale)
            r2 = int(qp.b(g, f) * scale)
            c1 = (r1 * adj[0][0] + r2 * adj[1][0]) * det_inv % scale
            c2 = (r1 * adj[0][1] + r2 * adj[1][1]) * det_inv % scale
            reduced.append(qp.add(g, qp.add(qp.scale(-c1, e), qp.scale(-c2, f))))
        basis = reduced
        alpha = qp.q(e) * scale / 2
        beta = qp.q(f) * scale / 2
        odd = alpha.denominator == 1 and beta.denominator == 1 and int(alpha) % 2 and int(beta) % 2
        blocks.append(JordanBlock(2, top, "v" if odd else "u"))

    blocks.sort(key=lambda blk: (blk.exponent, blk.kind, blk.value or Fraction(0)))
    return blocks


def _non_residue(p: int) -> int:
    return next(a for a in range(2, p) if legendre_symbol(a, p) == -1)


def _canonical_blocks(blocks: Sequence[JordanBlock], p: int) -> List[JordanBlock]:
    """循环块取值化为单位平方类的代表元

    奇素数时每个指数只剩 (个数, 单位之积的 Legendre 符号)，这是完全不变量；
    p = 2 时只把每个循环块的分子约化到 mod min(8, 2^(k+1))。
    """
    out: List[JordanBlock] = [b for b in blocks if b.kind != "cyclic"]
    cyclic = [b for b in blocks if b.kind == "cyclic"]
    if p == 2:
        for b in cyclic:
            modulus = min(8, 2 ** (b.exponent + 1))
            out.append(JordanBlock(2, b.exponent, "cyclic", Fraction(b.numerator % modulus, 2**b.exponent)))
    else:
        for k in sorted({b.exponent for b in cyclic}):
            scale = p**k
            units = []
            for b in cyclic:
                if b.exponent == k:
                    a = b.numerator % (2 * scale)
                    units.append(((a if a % 2 == 0 else a + scale) // 2) % scale)
            sign = 1
            for u in units:
                sign *= legendre_symbol(u % p, p)
            last = 1 if sign == 1 else _non_residue(p)
            values = [1] * (len(units) - 1) + [last]
            out.extend(JordanBlock(p, k, "cyclic", Fraction(2 * v, scale)) for v in values)
    out.sort(key=lambda blk: (blk.exponent, blk.kind, blk.value or Fraction(0)))
    return out


def normal_form(q: FiniteQuadraticForm) -> List[Dict[str, Any]]:
    """按素数与指数升序排列的 Jordan 块列表（JSON 形式）

    奇素数部分是同构不变的；2-进部分的分解不唯一，比较同构请用 is_isomorphic。
    """
    return [
        block.to_json()
        for p in q.primes
        for block in _canonical_blocks(jordan_blocks(q, p), p)
    ]


def _block_signature(block: JordanBlock) -> int:
    p, k = block.p, block.exponent
    if block.kind == "u":
        return 0
    if block.kind == "v":
        return 4 if k % 2 else 0
    a = block.numerator
    if p == 2:
        theta = a % 8
        return (theta + (4 if k % 2 and theta in (3, 5) else 0)) % 8
    if k % 2 == 0:
        return 0
    c = a // 2
    square = legendre_symbol(c % p, p) == 1
    if p % 4 == 1:
        return 0 if square else 4
    return 2 if square else 6


def brown_signature(q: FiniteQuadraticForm) -> int:
    """判别形式的符号差 mod 8（Milgram）"""
    return sum(_block_signature(b) for p in q.primes for b in jordan_blocks(q, p)) % 8


# ==================== 同构判定 ====================


def _odd_invariants(blocks: Sequence[JordanBlock], p: int) -> Dict[int, Tuple[int, int]]:
    result: Dict[int, Tuple[int, int]] = {}
    for block in blocks:
        count, eps = result.get(block.exponent, (0, 1))
        eps *= legendre_symbol(block.numerator % p, p)
        result[block.exponent] = (count + 1, eps)
    return result


def _match_generators(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> bool:
    candidates: List[List[Element]] = []
    for i, d in enumerate(q1.orders):
        e = tuple(int(i == j) for j in range(q1.rank))
        target = q1.q(e)
        candidates.append(
            [y for y in q2.elements() if q2.element_order(y) == d and q2.q(y) == target]
        )
    basis = [tuple(int(i == j) for j in range(q1.rank)) for i in range(q1.rank)]
    chosen: List[Element] = []

    def search(i: int) -> bool:
        if i == len(basis):
            return True
        for y in candidates[i]:
            if all(q2.b(y, chosen[k]) == q1.b(basis[i], basis[k]) for k in range(i)):
                chosen.append(y)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    return search(0)


def is_isomorphic(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm) -> bool:
    """两个有限二次型是否同构"""
    if q1.order != q2.order:
        return False
    for p in q1.primes:
        a, _ = restrict_to_primary(q1, p)
        b, _ = restrict_to_primary(q2, p)
        if sorted(a.orders) != sorted(b.orders):
            return False
        if p == 2:
            if not _match_generators(a, b):
                return False
        elif _odd_invariants(jordan_blocks(a, p), p) != _odd_invariants(jordan_blocks(b, p), p):
            return False
    return True


# ==================== 迷向子群 ====================


@lru_cache(maxsize=256)
def _scaled_matrix(q: FiniteQuadraticForm) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    """q_matrix 乘以公分母后的整数矩阵，供逐元素快速判定"""
    scale = 1
    for row in q.q_matrix:
        for x in row:
            scale = lcm(scale, x.denominator)
    return scale, tuple(tuple(int(x * scale) for x in row) for row in q.q_matrix)


def _is_isotropic(q: FiniteQuadraticForm, x: Sequence[int]) -> bool:
    scale, m = _scaled_matrix(q)
    support = [i for i, xi in enumerate(x) if xi]
    total = 0
    for a, i in enumerate(support):
        total += x[i] * x[i] * m[i][i]
        for j in support[a + 1 :]:
            total += 2 * x[i] * x[j] * m[i][j]
    return total % (2 * scale) == 0


def _orthogonal(q: FiniteQuadraticForm, x: Sequence[int], y: Sequence[int]) -> bool:
    scale, m = _scaled_matrix(q)
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = m[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * yj * row[j]
    return total % scale == 0


class _IsotropicElements:
    """素数幂阶的非零迷向元素，按 p 与坐标字典序惰性生成并缓存"""

    def __init__(self, q: FiniteQuadraticForm):
        self.q = q
        self.found: List[Element] = []
        self._source = self._scan()
        self._exhausted = False

    def _scan(self) -> Iterator[Element]:
        q = self.q
        for p in q.primes:
            qp, images = restrict_to_primary(q, p)
            # 非退化的 Z/p 上没有非零迷向元素
            if qp.order % (p * p):
                continue
            for coeffs in qp.elements():
                if not any(coeffs):
                    continue
                x = tuple(
                    sum(c * image[i] for c, image in zip(coeffs, images)) % d
                    for i, d in enumerate(q.orders)
                )
                if _is_isotropic(q, x):
                    yield x

    def from_index(self, start: int) -> Iterator[Tuple[int, Element]]:
        i = start
        while True:
            if i < len(self.found):
                yield i, self.found[i]
                i += 1
                continue
            if self._exhausted:
                return
            try:
                self.found.append(next(self._source))
            except StopIteration:
                self._exhausted = True


def _span(q: FiniteQuadraticForm, members: FrozenSet[Element], x: Element) -> FrozenSet[Element]:
    result = set(members)
    multiple = x
    while multiple not in members:
        result.update(q.add(h, multiple) for h in members)
        multiple = q.add(multiple, x)
    return frozenset(result)


def iter_isotropic_subgroups(
    q: FiniteQuadraticForm,
    accept: Optional[Callable[[IsotropicSubgroup], bool]] = None,
) -> Iterator[IsotropicSubgroup]:
    """迷向子群的惰性深度优先枚举，每个子群恰好产出一次

    子群由平凡子群逐次添加与已有生成元正交的素数幂阶迷向元素得到，
    不预先列出整个判别群。accept 须对子群封闭（K 通过则其子群也通过）：
    被拒绝的子群不产出，也不再从它向上生长。
    """
    candidates = _IsotropicElements(q)
    root = IsotropicSubgroup(q, (), 1, frozenset([q.zero()]))
    if accept is not None and not accept(root):
        return
    yield root
    seen: Set[FrozenSet[Element]] = {root.elements}
    stack: List[List[Any]] = [[root, 0]]
    while stack:
        frame = stack[-1]
        group: IsotropicSubgroup = frame[0]
        child = None
        for i, x in candidates.from_index(frame[1]):
            frame[1] = i + 1
            if x in group.elements or not all(_orthogonal(q, x, g) for g in group.generators):
                continue
            members = _span(q, group.elements, x)
            if members in seen:
                continue
            seen.add(members)
            grown = IsotropicSubgroup(q, group.generators + (x,), len(members), members)
            if accept is None or accept(grown):
                child = grown
                break
        if child is None:
            stack.pop()
            continue
        yield child
        stack.append([child, 0])


def isotropic_subgroups(q: FiniteQuadraticForm) -> List[IsotropicSubgroup]:
    """全部迷向子群（按子群去重），按阶与生成元排序"""
    result = sorted(iter_isotropic_subgroups(q), key=lambda k: (k.order, k.generators))
    logger.debug("isotropic subgroups enumerated", order=q.order, count=len(result))
    return result


# ==================== 存在性判据 ====================


def _binary_candidates(sigma_plus: int, sigma_minus: int, det_abs: int) -> Iterator[GramLattice]:
    if sigma_plus + sigma_minus != 2:
        raise LatticeError("二元型核对仅适用于秩 2", {"signature": [sigma_plus, sigma_minus]})
    if sigma_plus == 1:
        delta = det_abs
        root = isqrt(delta)
        if root * root == delta:
            for c in range(0, 2 * root, 2):
                yield binary(0, root, c)
        for a in range(-root, root + 1):
            if a == 0 or a % 2:
                continue
            for b in range(-(abs(a) // 2), abs(a) // 2 + 1):
                num = b * b - delta
                if num % a == 0 and (num // a) % 2 == 0:
                    yield binary(a, b, num // a)
        return
    sign = 1 if sigma_plus == 2 else -1
    a = 2
    while 3 * a * a <= 4 * det_abs:
        for b in range(0, a // 2 + 1):
            num = det_abs + b * b
            if num % a == 0:
                c = num // a
                if c >= a and c % 2 == 0:
                    yield binary(sign * a, sign * b, sign * c)
        a += 2


def binary_form_oracle(sigma_plus: int, sigma_minus: int, q: FiniteQuadraticForm) -> bool:
    """穷举约化偶二元型，判断是否存在给定符号与判别形式的秩 2 偶格"""
    for lattice in _binary_candidates(sigma_plus, sigma_minus, q.order):
        if is_isomorphic(discriminant_form(lattice), q):
            return True
    return False


def _local_criteria(sigma_plus: int, sigma_minus: int, q: FiniteQuadraticForm) -> bool:
    rank = sigma_plus + sigma_minus
    if (sigma_plus - sigma_minus - brown_signature(q)) % 8:
        return False
    for p in q.primes:
        if rank < length(q, p):
            return False
    order = q.order
    for p in q.primes:
        if rank != length(q, p):
            continue
        blocks = jordan_blocks(q, p)
        if sum(b.length for b in blocks) != rank:
            raise UndecidedError("Jordan 分解的长度与判别群不符", {"p": p})
        cofactor = order // p ** multiplicity(p, order)
        if p != 2:
            lhs = legendre_symbol(((-1) ** sigma_minus * cofactor) % p, p)
            rhs = 1
            for block in blocks:
                rhs *= legendre_symbol(block.numerator % p, p)
            if lhs != rhs:
                return False
        elif not any(b.kind == "cyclic" and b.exponent == 1 for b in blocks):
            disc = 1
            for block in blocks:
                if block.kind == "cyclic":
                    disc *= block.numerator
                elif block.kind == "u":
                    disc *= -1
                else:
                    disc *= 3
            if cofactor % 8 not in (disc % 8, -disc % 8):
                return False
    if rank == 0:
        return q.is_trivial()
    return True


def even_lattice_exists(
    sigma_plus: int,
    sigma_minus: int,
    q: FiniteQuadraticForm,
    cross_check: bool = True,
) -> bool:
    """是否存在给定符号差与判别形式的偶格"""
    if sigma_plus < 0 or sigma_minus < 0:
        raise LatticeError("符号差分量必须非负", {"signature": [sigma_plus, sigma_minus]})
    verdict = _local_criteria(sigma_plus, sigma_minus, q)
    if cross_check and sigma_plus + sigma_minus == 2:
        oracle = binary_form_oracle(sigma_plus, sigma_minus, q)
        if oracle != verdict:
            logger.error(
                "local criteria disagree with binary form oracle",
                signature=[sigma_plus, sigma_minus],
                form=normal_form(q),
                local=verdict,
                oracle=oracle,
            )
            raise UndecidedError(
                "局部判据与二元型穷举结果不一致",
                {"signature": [sigma_plus, sigma_minus], "form": normal_form(q)},
            )
    return verdict


def is_geometric_lattice(lattice: PolarizedLattice) -> bool:
    """S 是否可本原嵌入 2E8⊕3U（仅判定嵌入条件）"""
    rank = lattice.rank
    if rank > 20:
        return False
    return even_lattice_exists(2, 20 - rank, negate(discriminant_form(lattice.lattice)))


__all__ = [
    "FiniteQuadraticForm",
    "JordanBlock",
    "IsotropicSubgroup",
    "discriminant_form",
    "form_from_blocks",
    "negate",
    "restrict_to_primary",
    "length",
    "jordan_blocks",
    "normal_form",
    "brown_signature",
    "is_isomorphic",
    "isotropic_subgroups",
    "iter_isotropic_subgroups",
    "binary_form_oracle",
    "even_lattice_exists",
    "is_geometric_lattice",
]
