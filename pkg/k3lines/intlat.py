#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
整格运算模块

该模块提供整格上的精确运算，包括：
- Gram 矩阵格、带极化格与子格的数据类型
- 惯性指数、行列式、求逆与零空间（sympy 精确矩阵运算）
- 带变换矩阵的 Smith 标准形
- 负定格陪集中的定长向量枚举（Fincke–Pohst）
- 正交补与有限指数扩格
- 命名构造子 U, A<n>, D<n>, E<n>, [a], [a,b,c], L(n)

全部运算使用任意精度整数与有理数，不使用浮点数。

Author: K3 Lines Team
Date: 2024
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt, lcm
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import sympy

from k3lines.core.exceptions import (
    DegenerateLatticeError,
    LatticeError,
    NotIsotropicError,
    NotNegativeDefiniteError,
)

Number = Union[int, Fraction]
IntMatrix = Tuple[Tuple[int, ...], ...]
IntVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]


def _as_int_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _identity(n: int) -> List[List[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def bilinear(gram: Sequence[Sequence[int]], u: Sequence[Number], v: Sequence[Number]) -> Number:
    """uᵀ·G·v，按输入类型返回整数或有理数"""
    total: Number = 0
    for i, ui in enumerate(u):
        if not ui:
            continue
        row = gram[i]
        acc: Number = 0
        for j, vj in enumerate(v):
            if vj and row[j]:
                acc += row[j] * vj
        total += ui * acc
    return total


# ==================== 数据类型 ====================


@dataclass(frozen=True)
class GramLattice:
    """由 Gram 矩阵给出的偶格（允许退化）"""

    gram: IntMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "gram", _as_int_matrix(self.gram))
        n = len(self.gram)
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise LatticeError("Gram 矩阵必须是方阵", {"row": i})
            if row[i] % 2:
                raise LatticeError("格必须是偶格", {"index": i, "value": row[i]})
            for j in range(i):
                if row[j] != self.gram[j][i]:
                    raise LatticeError("Gram 矩阵必须对称", {"entry": [i, j]})

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, u: Sequence[Number], v: Sequence[Number]) -> Number:
        return bilinear(self.gram, u, v)

    def square(self, u: Sequence[Number]) -> Number:
        return bilinear(self.gram, u, u)

    def to_json(self) -> List[List[int]]:
        return [list(row) for row in self.gram]

    @classmethod
    def from_json(cls, data: Any) -> "GramLattice":
        if isinstance(data, str):
            return parse_lattice(data)
        return cls(_as_int_matrix(data))

    def __repr__(self) -> str:
        return f"GramLattice({self.to_json()})"


@dataclass(frozen=True)
class PolarizedLattice:
    """非退化偶格 S 及其中 h² = 4 的极化向量 h

    构造时不要求 σ₊ = 1：非双曲的 Fano 格也要能表示出来，
    由检验组合通过 is_hyperbolic 给出否定结论。
    """

    lattice: GramLattice
    h: IntVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", tuple(int(x) for x in self.h))
        if len(self.h) != self.lattice.rank:
            raise LatticeError("极化向量维数与格的秩不符")
        if self.lattice.square(self.h) != 4:
            raise LatticeError("极化向量必须满足 h² = 4", {"h": list(self.h)})
        if determinant(self.lattice) == 0:
            raise DegenerateLatticeError("带极化格必须非退化")

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def is_hyperbolic(self) -> bool:
        return signature(self.lattice)[0] == 1

    def degree(self, v: Sequence[Number]) -> Number:
        """v·h"""
        return self.lattice.dot(v, self.h)


@dataclass(frozen=True)
class Sublattice:
    """环境格中由行向量基张成的子格"""

    ambient: GramLattice
    basis: IntMatrix

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", _as_int_matrix(self.basis))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lattice(self) -> GramLattice:
        """诱导 Gram 矩阵 basis·G·basisᵀ"""
        g = self.ambient.gram
        return GramLattice(
            tuple(
                tuple(bilinear(g, bi, bj) for bj in self.basis) for bi in self.basis
            )
        )

    def to_ambient(self, coords: Sequence[Number]) -> Tuple[Number, ...]:
        n = self.ambient.rank
        out: List[Number] = [0] * n
        for c, row in zip(coords, self.basis):
            if c:
                for j in range(n):
                    out[j] += c * row[j]
        return tuple(out)


@dataclass(frozen=True)
class SmithForm:
    """D = U·M·V，diagonal 为 D 的对角线（长度 min(m, n)）"""

    diagonal: Tuple[int, ...]
    left: IntMatrix
    right: IntMatrix
    right_inverse: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass(frozen=True)
class Overlattice:
    """有限指数扩格：lattice 的基在原格 ⊗Q 坐标下为 basis"""

    lattice: GramLattice
    basis: Tuple[RationalVector, ...]
    index: int
    _inverse: Tuple[RationalVector, ...] = field(repr=False, default=())

    def coordinates(self, v: Sequence[Number]) -> RationalVector:
        """把原格坐标下的向量写成扩格基下的坐标"""
        inv = self._inverse or _rational_inverse(self.basis)
        n = len(inv)
        return tuple(
            sum((Fraction(v[i]) * inv[i][j] for i in range(n)), Fraction(0))
            for j in range(n)
        )

    def integral_coordinates(self, v: Sequence[Number]) -> IntVector:
        c = self.coordinates(v)
        if any(x.denominator != 1 for x in c):
            raise LatticeError("向量不在扩格中", {"vector": [str(x) for x in v]})
        return tuple(int(x) for x in c)


# ==================== 不变量 ====================


def _fraction(x: Any) -> Fraction:
    r = sympy.Rational(x)
    return Fraction(int(r.p), int(r.q))


def _sign_changes(coeffs: Sequence[Any]) -> int:
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(lattice: GramLattice) -> Tuple[int, int, int]:
    """惯性指数 (σ₊, σ₋, σ₀)

    对称矩阵的特征多项式只有实根，Descartes 符号法则对它是精确的。
    """
    n = lattice.rank
    if n == 0:
        return 0, 0, 0
    coeffs = sympy.Matrix(lattice.gram).charpoly().all_coeffs()
    zero = 0
    while zero < n and coeffs[n - zero] == 0:
        zero += 1
    plus = _sign_changes(coeffs)
    minus = _sign_changes([c if (n - k) % 2 == 0 else -c for k, c in enumerate(coeffs)])
    return plus, minus, zero


def determinant(lattice: Union[GramLattice, Sequence[Sequence[int]]]) -> int:
    """Gram 矩阵的精确行列式（Bareiss 无分数消元）"""
    gram = lattice.gram if isinstance(lattice, GramLattice) else lattice
    if not gram:
        return 1
    return int(sympy.Matrix(gram).det(method="bareiss"))


# ==================== Smith 标准形 ====================


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """整数矩阵的 Smith 标准形及幺模变换 U、V（同时给出 V⁻¹）"""
    a = [list(int(x) for x in row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)
    v_inv = _identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(target: int, source: int, q: int) -> None:
        # row_target += q·row_source
        a[target] = [x + q * y for x, y in zip(a[target], a[source])]
        u[target] = [x + q * y for x, y in zip(u[target], u[source])]

    def add_col(target: int, source: int, q: int) -> None:
        # col_target += q·col_source
        for row in a:
            row[target] += q * row[source]
        for row in v:
            row[target] += q * row[source]
        v_inv[source] = [x - q * y for x, y in zip(v_inv[source], v_inv[target])]

    for t in range(min(m, n)):
        while True:
            best: Optional[Tuple[int, int]] = None
            best_abs = 0
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best_abs):
                        best, best_abs = (i, j), abs(x)
                        if best_abs == 1:
                            break
                if best_abs == 1:
                    break
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            pivot = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pivot))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pivot))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(
                (
                    i
                    for i in range(t + 1, m)
                    if any(a[i][j] % pivot for j in range(t + 1, n))
                ),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diagonal = tuple(a[i][i] for i in range(min(m, n)))
    return SmithForm(
        diagonal=diagonal,
        left=_as_int_matrix(u),
        right=_as_int_matrix(v),
        right_inverse=_as_int_matrix(v_inv),
    )


def hermite_basis(rows: Sequence[Sequence[int]]) -> List[IntVector]:
    """整数行向量生成的 Z-模的一组基"""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    snf = smith_normal_form(rows)
    return [
        tuple(d * x for x in snf.right_inverse[i])
        for i, d in enumerate(snf.diagonal)
        if d
    ]


def kernel_basis(matrix: Sequence[Sequence[int]], ncols: Optional[int] = None) -> List[IntVector]:
    """{x ∈ Zⁿ : M·x = 0} 的本原基

    有理零空间取自 sympy，再经 Smith 标准形取本原闭包。
    """
    if not matrix:
        n = ncols or 0
        return [tuple(row) for row in _identity(n)]
    rows = []
    for v in sympy.Matrix(matrix).nullspace():
        scale = lcm(*[int(sympy.Rational(x).q) for x in v])
        rows.append([int(x * scale) for x in v])
    if not rows:
        return []
    snf = smith_normal_form(rows)
    return [tuple(snf.right_inverse[i]) for i in range(snf.rank)]


def _sympy_matrix(rows: Sequence[Sequence[Number]]) -> sympy.Matrix:
    return sympy.Matrix(
        [
            [sympy.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x for x in row]
            for row in rows
        ]
    )


def _rational_inverse(matrix: Sequence[Sequence[Number]]) -> Tuple[RationalVector, ...]:
    m = _sympy_matrix(matrix)
    if m.det(method="bareiss") == 0:
        raise DegenerateLatticeError("矩阵不可逆")
    inv = m.inv()
    return tuple(tuple(_fraction(inv[i, j]) for j in range(inv.cols)) for i in range(inv.rows))


def solve_rational(
    rows: Sequence[Sequence[Number]], target: Sequence[Number]
) -> Optional[RationalVector]:
    """求 c 使 Σ cᵢ·rowsᵢ = target；无解时返回 None，自由变量取 0"""
    columns = _sympy_matrix(rows).T
    try:
        solution, params = columns.gauss_jordan_solve(_sympy_matrix([target]).T)
    except ValueError:
        return None
    solution = solution.xreplace({t: 0 for t in params})
    return tuple(_fraction(x) for x in solution)


# ==================== 向量枚举 ====================


def pair_reduce(q: List[List[int]]) -> Tuple[List[List[int]], List[List[int]], List[List[int]]]:
    """正定 Gram 矩阵的精确两两约化，返回 (Q', T, T⁻¹)，Q' = T·Q·Tᵀ"""
    n = len(q)
    q = [row[:] for row in q]
    t = _identity(n)
    t_inv = _identity(n)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j or q[i][j] == 0:
                    continue
                qjj = q[j][j]
                k = (2 * q[i][j] + qjj) // (2 * qjj)
                if k == 0:
                    continue
                new_ii = q[i][i] - 2 * k * q[i][j] + k * k * qjj
                if new_ii >= q[i][i]:
                    continue
                # b_i ← b_i − k·b_j
                for m in range(n):
                    q[i][m] -= k * q[j][m]
                for m in range(n):
                    q[m][i] = q[i][m] if m != i else q[m][i]
                q[i][i] = new_ii
                t[i] = [x - k * y for x, y in zip(t[i], t[j])]
                for row in t_inv:
                    row[j] += k * row[i]
                changed = True
    return q, t, t_inv


def enumerate_vectors_in_coset(
    lattice: GramLattice,
    shift: Optional[Sequence[Number]] = None,
    target: Number = -2,
) -> List[IntVector]:
    """枚举负定格陪集 shift + L₀ 中平方为 target 的全部向量

    返回整数坐标 x，使得 (shift + x)² = target。
    """
    n = lattice.rank
    if signature(lattice) != (0, n, 0):
        raise NotNegativeDefiniteError("陪集枚举要求负定格", {"rank": n})
    radius = -Fraction(target)
    if radius < 0:
        return []
    if n == 0:
        return [()] if radius == 0 else []

    s = [Fraction(x) for x in shift] if shift is not None else [Fraction(0)] * n
    q0 = [[-x for x in row] for row in lattice.gram]
    q, t, t_inv = pair_reduce(q0)

    # 外层递归对应最大对角元
    order = sorted(range(n), key=lambda i: (q[i][i], i))
    q = [[q[i][j] for j in order] for i in order]
    t = [t[i] for i in order]
    t_inv = [[row[i] for i in order] for row in t_inv]

    # 约化基下的平移 s' = T⁻ᵀ·s
    s_red = [sum((t_inv[j][i] * s[j] for j in range(n)), Fraction(0)) for i in range(n)]

    # 有理 Cholesky：Q(y) = Σ cᵢᵢ (yᵢ + Σ_{j>i} cᵢⱼ yⱼ)²
    c = [[Fraction(x) for x in row] for row in q]
    for i in range(n):
        for j in range(i + 1, n):
            c[j][i] = c[i][j]
            c[i][j] = c[i][j] / c[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                c[k][m] -= c[k][i] * c[i][m]

    found: List[IntVector] = []
    y = [Fraction(0)] * n
    x = [0] * n

    def recurse(i: int, remaining: Fraction) -> None:
        centre = -sum((c[i][j] * y[j] for j in range(i + 1, n)), Fraction(0))
        cii = c[i][i]
        bound = remaining / cii
        r = isqrt(_floor(bound))
        base = centre - s_red[i]
        lo = _ceil(base - r - 1)
        hi = _floor(base + r + 1)
        for xi in range(lo, hi + 1):
            yi = s_red[i] + xi
            dev = yi - centre
            used = cii * dev * dev
            if used > remaining:
                continue
            y[i] = yi
            x[i] = xi
            if i == 0:
                if used == remaining:
                    found.append(tuple(x))
            else:
                recurse(i - 1, remaining - used)
        y[i] = Fraction(0)
        x[i] = 0

    recurse(n - 1, radius)

    # 回到原始坐标：x_orig = Tᵀ·x'
    return [
        tuple(sum(t[k][j] * vec[k] for k in range(n)) for j in range(n))
        for vec in found
    ]


# ==================== 子格与扩格 ====================


def orthogonal_complement(
    lattice: GramLattice, vectors: Sequence[Sequence[int]]
) -> Sublattice:
    """{x : x·v = 0 ∀ v} 的本原子格"""
    n = lattice.rank
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return Sublattice(lattice, _as_int_matrix(_identity(n)))
    rows = [
        [bilinear(lattice.gram, v, [int(i == j) for j in range(n)]) for i in range(n)]
        for v in vectors
    ]
    return Sublattice(lattice, _as_int_matrix(kernel_basis(rows, n)))


def overlattice(lattice: GramLattice, glue: Any) -> Overlattice:
    """由 L*/L 中迷向元素生成的扩格 L′ ⊇ L

    glue 为 L⊗Q 坐标下的有理向量列表，或带 glue_vectors() 的迷向子群。
    """
    if hasattr(glue, "glue_vectors"):
        glue = glue.glue_vectors()
    n = lattice.rank
    g = lattice.gram
    glue_vecs = [tuple(Fraction(x) for x in v) for v in glue]
    glue_vecs = [v for v in glue_vecs if any(x.denominator != 1 for x in v)]
    for i, u in enumerate(glue_vecs):
        for j in range(i, len(glue_vecs)):
            value = bilinear(g, u, glue_vecs[j])
            if i == j:
                if value.denominator != 1 or value.numerator % 2:
                    raise NotIsotropicError("胶合元素的二次型值不为 0 mod 2", {"index": i})
            elif value.denominator != 1:
                raise NotIsotropicError("胶合元素的双线性值不为 0 mod 1", {"pair": [i, j]})
        for k in range(n):
            if bilinear(g, u, [int(k == m) for m in range(n)]).denominator != 1:
                raise NotIsotropicError("胶合元素不在对偶格中", {"index": i})

    if not glue_vecs:
        basis = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
        return Overlattice(lattice, basis, 1, basis)

    denom = 1
    for v in glue_vecs:
        for x in v:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    rows = [[denom * int(i == j) for j in range(n)] for i in range(n)]
    rows += [[int(x * denom) for x in v] for v in glue_vecs]
    int_basis = hermite_basis(rows)
    basis = tuple(tuple(Fraction(x, denom) for x in row) for row in int_basis)

    new_gram: List[List[int]] = []
    for bi in basis:
        out_row: List[int] = []
        for bj in basis:
            value = bilinear(g, bi, bj)
            if value.denominator != 1:
                raise LatticeError("扩格的 Gram 矩阵不是整的")
            out_row.append(int(value))
        new_gram.append(out_row)
    if any(new_gram[i][i] % 2 for i in range(n)):
        raise LatticeError("扩格不是偶格")

    old_det = determinant(lattice)
    new_lattice = GramLattice(_as_int_matrix(new_gram))
    new_det = determinant(new_lattice)
    index = isqrt(abs(old_det // new_det)) if new_det else 0
    return Overlattice(new_lattice, basis, index, _rational_inverse(basis))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ==================== 命名构造子 ====================


def hyperbolic_plane() -> GramLattice:
    """双曲平面 U = [0,1,0]"""
    return GramLattice(((0, 1), (1, 0)))


def diagonal(*entries: int) -> GramLattice:
    """[a₁] ⊕ … ⊕ [aₖ]"""
    return GramLattice(
        tuple(tuple(a if i == j else 0 for j in range(len(entries))) for i, a in enumerate(entries))
    )


def binary(a: int, b: int, c: int) -> GramLattice:
    """二元形式 [a,b,c]，Gram 矩阵 [[a,b],[b,c]]"""
    return GramLattice(((a, b), (b, c)))


def _from_edges(n: int, edges: Iterable[Tuple[int, int]]) -> GramLattice:
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = 1
    return GramLattice(_as_int_matrix(g))


def root_lattice(family: str, n: int) -> GramLattice:
    """负定根格 A_n, D_n, E_n"""
    family = family.upper()
    if family == "A" and n >= 1:
        return _from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if family == "D" and n >= 4:
        return _from_edges(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    if family == "E" and n in (6, 7, 8):
        return _from_edges(n, [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)])
    raise LatticeError(f"未知根格类型: {family}{n}")


def scaled(lattice: GramLattice, factor: int) -> GramLattice:
    """L(n)：Gram 矩阵乘以 n"""
    return GramLattice(tuple(tuple(factor * x for x in row) for row in lattice.gram))


def direct_sum(*lattices: GramLattice) -> GramLattice:
    n = sum(lat.rank for lat in lattices)
    g = [[0] * n for _ in range(n)]
    offset = 0
    for lat in lattices:
        for i, row in enumerate(lat.gram):
            for j, x in enumerate(row):
                g[offset + i][offset + j] = x
        offset += lat.rank
    return GramLattice(_as_int_matrix(g))


_TOKEN = re.compile(
    r"^(?P<mult>\d+)?\s*(?:(?P<U>U)|(?P<fam>[ADE])(?P<n>\d+)|\[(?P<form>[-\d,\s]+)\])"
    r"\s*(?:\((?P<scale>-?\d+)\))?$"
)


def parse_lattice(text: str) -> GramLattice:
    """解析 "2E8+3U"、"[4]+A1"、"U(2)"、"[2,1,2]" 等记号"""
    parts = [p.strip() for p in re.split(r"[+⊕]", text) if p.strip()]
    if not parts:
        raise LatticeError(f"无法解析格记号: {text!r}")
    summands: List[GramLattice] = []
    for part in parts:
        match = _TOKEN.match(part)
        if match is None:
            raise LatticeError(f"无法解析格记号: {part!r}")
        if match.group("U"):
            lat = hyperbolic_plane()
        elif match.group("fam"):
            lat = root_lattice(match.group("fam"), int(match.group("n")))
        else:
            values = [int(x) for x in match.group("form").split(",") if x.strip()]
            if len(values) == 1:
                lat = diagonal(values[0])
            elif len(values) == 3:
                lat = binary(*values)
            else:
                raise LatticeError(f"方括号记号只接受 [a] 或 [a,b,c]: {part!r}")
        if match.group("scale"):
            lat = scaled(lat, int(match.group("scale")))
        summands.extend([lat] * int(match.group("mult") or 1))
    return direct_sum(*summands)


__all__ = [
    "GramLattice",
    "PolarizedLattice",
    "Sublattice",
    "SmithForm",
    "Overlattice",
    "bilinear",
    "signature",
    "determinant",
    "smith_normal_form",
    "hermite_basis",
    "kernel_basis",
    "solve_rational",
    "enumerate_vectors_in_coset",
    "orthogonal_complement",
    "overlattice",
    "hyperbolic_plane",
    "diagonal",
    "binary",
    "root_lattice",
    "scaled",
    "direct_sum",
    "parse_lattice",
]
