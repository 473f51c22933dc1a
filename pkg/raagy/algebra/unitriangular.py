#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""上单位三角矩阵群 U_{n+1}(F_p) 及其中心商

矩阵以 (n+1)×(n+1) 的 numpy int64 数组稠密存储。下标约定：
公开接口（entry、约束、JordanBlock.start）使用 1 起始下标，
内部数组运算使用 0 起始下标。交换子约定 [A,B] = A B A⁻¹ B⁻¹。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

from raagy.algebra.linalg import is_prime, solve_affine
from raagy.core.errors import ConsistencyError, InputError, PreconditionError

logger = logging.getLogger(__name__)

MAX_SIZE = 16
MAX_PRIME = 251

Array = NDArray[np.int64]


# 原始数组运算，供搜索内层循环直接使用

def identity_array(size: int) -> Array:
    return np.eye(size, dtype=np.int64)


def mat_mul(a: Array, b: Array, p: int) -> Array:
    return (a @ b) % p


def mat_inv(a: Array, p: int) -> Array:
    """(I + N)⁻¹ = Σ_k (−N)^k，N 幂零"""
    size = a.shape[0]
    neg = (identity_array(size) - a) % p
    result = identity_array(size)
    term = identity_array(size)
    for _ in range(size - 1):
        term = (term @ neg) % p
        if not term.any():
            break
        result = result + term
    return result % p


def mat_pow(a: Array, e: int, p: int) -> Array:
    """反复平方；e < 0 时先求逆"""
    if e < 0:
        a, e = mat_inv(a, p), -e
    result = identity_array(a.shape[0])
    base = a % p
    while e:
        if e & 1:
            result = (result @ base) % p
        e >>= 1
        if e:
            base = (base @ base) % p
    return result


def strict_upper_positions(size: int, mod_center: bool = False) -> List[Tuple[int, int]]:
    """严格上三角位置（0 起始），mod_center 时去掉角元 (0, size-1)"""
    positions = [(i, j) for i in range(size) for j in range(i + 1, size)]
    if mod_center and size > 1:
        positions.remove((0, size - 1))
    return positions


def free_positions(size: int, mod_center: bool = False) -> List[Tuple[int, int]]:
    """超对角线以上的位置 j − i ≥ 2（0 起始），mod_center 时去掉角元"""
    return [(i, j) for i, j in strict_upper_positions(size, mod_center) if j - i >= 2]


class UniTriMatrix:
    """U_{n+1}(F_p) 中的元素，不可变

    Args:
        rows: 完整的方阵行（含对角线）
        p: 素数模

    Raises:
        InputError: 不是上单位三角、尺寸或素数超出支持范围
    """

    __slots__ = ('_data', 'p')

    def __init__(self, rows, p: int):
        if not is_prime(p) or p > MAX_PRIME:
            raise InputError(f"p={p} 不是支持的素数 (≤ {MAX_PRIME})")
        data = np.array(rows, dtype=np.int64) % p
        if data.ndim != 2 or data.shape[0] != data.shape[1] or data.shape[0] < 1:
            raise InputError(f"矩阵必须是非空方阵，收到形状 {data.shape}")
        if data.shape[0] > MAX_SIZE:
            raise InputError(f"矩阵阶数不能超过 {MAX_SIZE}")
        if not np.array_equal(np.diag(data), np.ones(data.shape[0], dtype=np.int64)):
            raise InputError("对角线必须全为 1")
        if np.tril(data, -1).any():
            raise InputError("严格下三角部分必须为 0")
        data.setflags(write=False)
        self._data = data
        self.p = p

    @classmethod
    def _wrap(cls, data: Array, p: int) -> 'UniTriMatrix':
        obj = cls.__new__(cls)
        data = np.array(data, dtype=np.int64) % p
        data.setflags(write=False)
        obj._data = data
        obj.p = p
        return obj

    @classmethod
    def identity(cls, size: int, p: int) -> 'UniTriMatrix':
        return cls(identity_array(size), p)

    @classmethod
    def from_entries(cls, size: int, p: int, entries: Mapping[Tuple[int, int], int]) -> 'UniTriMatrix':
        """由严格上三角元素 {(i, j): 值}（1 起始）构造"""
        data = identity_array(size)
        for (i, j), value in entries.items():
            if not 1 <= i < j <= size:
                raise InputError(f"位置 ({i}, {j}) 不在严格上三角内")
            data[i - 1, j - 1] = value
        return cls(data, p)

    @classmethod
    def from_superdiagonal(cls, values: Sequence[int], p: int) -> 'UniTriMatrix':
        """I + Σ values[i] E_{i,i+1}"""
        size = len(values) + 1
        data = identity_array(size)
        for i, value in enumerate(values):
            data[i, i + 1] = value
        return cls(data, p)

    @classmethod
    def jordan(cls, size: int, p: int) -> 'UniTriMatrix':
        """超对角线全为 1 的矩阵 A"""
        return cls.from_superdiagonal([1] * (size - 1), p)

    @classmethod
    def from_dict(cls, data: dict) -> 'UniTriMatrix':
        try:
            rows, p, n = data['rows'], int(data['p']), int(data['n'])
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"矩阵JSON缺少字段: {e}") from e
        matrix = cls(rows, p)
        if matrix.n != n:
            raise InputError(f"矩阵JSON中 n={n} 与行数不符")
        return matrix

    def to_dict(self) -> dict:
        return {'n': self.n, 'p': self.p, 'rows': self._data.tolist()}

    @property
    def size(self) -> int:
        return self._data.shape[0]

    @property
    def n(self) -> int:
        return self._data.shape[0] - 1

    @property
    def array(self) -> Array:
        """只读数组视图"""
        return self._data

    def entry(self, i: int, j: int) -> int:
        """1 起始下标的元素 a_{i,j}"""
        return int(self._data[i - 1, j - 1])

    def superdiagonal(self) -> Tuple[int, ...]:
        return tuple(int(x) for x in np.diag(self._data, 1))

    def corner(self) -> int:
        return int(self._data[0, -1])

    def with_entry(self, i: int, j: int, value: int) -> 'UniTriMatrix':
        data = self._data.copy()
        data[i - 1, j - 1] = value
        return UniTriMatrix(data, self.p)

    def _check(self, other: 'UniTriMatrix'):
        if not isinstance(other, UniTriMatrix):
            raise InputError(f"需要 UniTriMatrix，收到 {type(other).__name__}")
        if other.size != self.size or other.p != self.p:
            raise InputError(f"尺寸或模数不一致: {self.size}/{self.p} 与 {other.size}/{other.p}")

    def __matmul__(self, other: 'UniTriMatrix') -> 'UniTriMatrix':
        self._check(other)
        return UniTriMatrix._wrap(mat_mul(self._data, other._data, self.p), self.p)

    def inv(self) -> 'UniTriMatrix':
        return UniTriMatrix._wrap(mat_inv(self._data, self.p), self.p)

    def __pow__(self, e: int) -> 'UniTriMatrix':
        return UniTriMatrix._wrap(mat_pow(self._data, int(e), self.p), self.p)

    def conjugate_by(self, m: 'UniTriMatrix') -> 'UniTriMatrix':
        """M⁻¹ · self · M"""
        return m.inv() @ self @ m

    def is_identity(self) -> bool:
        return not np.triu(self._data, 1).any()

    def is_central(self) -> bool:
        """属于中心 {I + a E_{1,n+1}}"""
        upper = np.triu(self._data, 1).copy()
        upper[0, -1] = 0
        return not upper.any()

    def is_superdiagonal_only(self) -> bool:
        return not np.triu(self._data, 2).any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniTriMatrix):
            return NotImplemented
        return self.p == other.p and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self.p, self._data.shape[0], self._data.tobytes()))

    def __repr__(self) -> str:
        rows = '; '.join(' '.join(str(int(x)) for x in row) for row in self._data)
        return f"UniTriMatrix(p={self.p}, [{rows}])"

    def __getstate__(self):
        return {'rows': self._data.tolist(), 'p': self.p}

    def __setstate__(self, state):
        data = np.array(state['rows'], dtype=np.int64)
        data.setflags(write=False)
        self._data = data
        self.p = state['p']


def mul(a: UniTriMatrix, b: UniTriMatrix) -> UniTriMatrix:
    return a @ b


def inv(a: UniTriMatrix) -> UniTriMatrix:
    return a.inv()


def power(a: UniTriMatrix, e: int) -> UniTriMatrix:
    """A^e，e ≥ 0"""
    if e < 0:
        raise InputError(f"指数必须非负: {e}")
    return a ** e


def commutator(a: UniTriMatrix, b: UniTriMatrix) -> UniTriMatrix:
    """[A, B] = A B A⁻¹ B⁻¹"""
    a._check(b)
    return a @ b @ a.inv() @ b.inv()


@dataclass(frozen=True, eq=False)
class BarElement:
    """中心商 Ū_{n+1} 中的元素，代表元的角元为 0"""
    representative: UniTriMatrix

    @classmethod
    def of(cls, a: UniTriMatrix) -> 'BarElement':
        data = a.array.copy()
        if a.size > 1:
            data[0, -1] = 0
        return cls(UniTriMatrix._wrap(data, a.p))

    def __matmul__(self, other: 'BarElement') -> 'BarElement':
        return BarElement.of(self.representative @ other.representative)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BarElement):
            return NotImplemented
        return self.representative == other.representative

    def __hash__(self) -> int:
        return hash(self.representative)

    def to_dict(self) -> dict:
        return self.representative.to_dict()


def center_project(a: UniTriMatrix) -> BarElement:
    return BarElement.of(a)


def equal_mod_center(a: UniTriMatrix, b: UniTriMatrix) -> bool:
    """两矩阵只在 (1, n+1) 元上可能不同"""
    a._check(b)
    return center_project(a) == center_project(b)


# Jordan 标准化

@dataclass(frozen=True)
class JordanNormalization:
    conjugator: UniTriMatrix
    images: Dict[str, UniTriMatrix]

    def to_dict(self) -> dict:
        return {
            'conjugator': self.conjugator.to_dict(),
            'images': {k: v.to_dict() for k, v in self.images.items()},
        }


def jordan_normalize(images: Mapping[str, UniTriMatrix], x: str) -> JordanNormalization:
    """求 M ∈ U 使 M⁻¹ ρ(x) M = A（超对角线全 1、其余为 0），并共轭全部像

    M 的列 v_1, …, v_{n+1}：v_1 = e_1；v_{m+1} 解 ρ(x) w = w + v_m，
    其第 m+1 个坐标取 1、更高坐标取 0、自由的第 1 个坐标取 0，其余回代。

    Raises:
        InputError: x 未赋值、超对角线不全为 1、n < 3、尺寸不一致
    """
    if x not in images:
        raise InputError(f"生成元 {x} 没有赋值")
    target = images[x]
    for name, matrix in images.items():
        target._check(matrix)
    n, p = target.n, target.p
    if n < 3:
        raise InputError(f"Jordan 标准化要求 n ≥ 3，收到 n={n}")
    if any(value != 1 for value in target.superdiagonal()):
        raise InputError(f"{x} 的像的超对角线必须全为 1（调用方先做缩放）")

    nil = (target.array - identity_array(n + 1)) % p
    columns = [identity_array(n + 1)[:, 0]]
    for m in range(1, n + 1):
        prev = columns[-1]
        w = np.zeros(n + 1, dtype=np.int64)
        w[m] = 1
        # 第 i 行 (i < m-1, 0 起始)：w_{i+1} = prev_i − Σ_{j > i+1} N_{i,j} w_j
        for i in range(m - 2, -1, -1):
            tail = int(nil[i, i + 2:m + 1] @ w[i + 2:m + 1]) if i + 2 <= m else 0
            w[i + 1] = (prev[i] - tail) % p
        columns.append(w)
    conjugator = UniTriMatrix(np.stack(columns, axis=1), p)

    jordan = UniTriMatrix.jordan(n + 1, p)
    m_inv = conjugator.inv()
    if m_inv @ target @ conjugator != jordan:
        raise ConsistencyError(
            "Jordan 标准化的乘法校验失败",
            certificate={'image': target.to_dict(), 'conjugator': conjugator.to_dict()},
        )
    conjugated = {name: m_inv @ matrix @ conjugator for name, matrix in images.items()}
    return JordanNormalization(conjugator=conjugator, images=conjugated)


# 带状引理

@dataclass(frozen=True)
class BandedProfile:
    """常对角矩阵 B 的参数：bands[k-1] = b_{i,i+k} (k = 1..n-2)，以及未约束的 (1,n)、(2,n+1) 与角元"""
    bands: Tuple[int, ...]
    upper: Tuple[int, int]
    corner: int

    def to_dict(self) -> dict:
        return {'bands': list(self.bands), 'upper': list(self.upper), 'corner': self.corner}


def is_banded(b: UniTriMatrix) -> bool:
    """第 1..n-2 条上对角线各自为常数"""
    n = b.n
    for k in range(1, n - 1):
        diagonal = np.diag(b.array, k)
        if not np.all(diagonal == diagonal[0]):
            return False
    return True


def _profile(b: UniTriMatrix) -> BandedProfile:
    n = b.n
    bands = tuple(b.entry(1, 1 + k) for k in range(1, n - 1))
    upper = (b.entry(1, n), b.entry(2, n + 1)) if n >= 2 else (0, 0)
    return BandedProfile(bands=bands, upper=upper, corner=b.corner())


def check_banded(b: UniTriMatrix, a: UniTriMatrix) -> Optional[BandedProfile]:
    """若 [A, B] 属于中心，确认 B 的第 1..n-2 条上对角线为常数并返回参数

    Returns:
        BandedProfile；[A, B] 不在中心时返回 None

    Raises:
        InputError: A 不是超对角线全 1 的矩阵
        ConsistencyError: 假设成立但 B 不是常对角（引理被违反）
    """
    if a != UniTriMatrix.jordan(a.size, a.p):
        raise InputError("check_banded 要求 A 为超对角线全 1 的矩阵")
    if not commutator(a, b).is_central():
        return None
    if not is_banded(b):
        raise ConsistencyError("[A,B] 属于中心但 B 不是常对角", certificate={'B': b.to_dict()})
    return _profile(b)


def has_zero_band_shape(c: UniTriMatrix) -> bool:
    """C 的超对角线为 (1, 0, …, 0, 1)"""
    n = c.n
    expected = [0] * n
    expected[0] = 1
    expected[-1] = 1
    return n >= 3 and list(c.superdiagonal()) == expected


def force_zero_band(b: UniTriMatrix, c: UniTriMatrix) -> bool:
    """B 常对角、C 超对角线为 (1,0,…,0,1)、[C,B] 属于中心时，b_1 = … = b_{n-2} = 0

    Returns:
        True（结论成立）

    Raises:
        PreconditionError: 假设不满足
        ConsistencyError: 假设成立但结论不成立
    """
    b._check(c)
    if b.n < 3:
        raise PreconditionError(f"要求 n ≥ 3，收到 n={b.n}")
    if not is_banded(b):
        raise PreconditionError("B 不是常对角矩阵")
    if not has_zero_band_shape(c):
        raise PreconditionError(f"C 的超对角线 {c.superdiagonal()} 不是 (1,0,…,0,1)")
    if not commutator(c, b).is_central():
        raise PreconditionError("[C,B] 不属于中心")
    profile = _profile(b)
    if any(profile.bands):
        raise ConsistencyError(
            "零带引理被违反",
            certificate={'B': b.to_dict(), 'C': c.to_dict()},
        )
    return True


# 共轭方程

def solve_conjugation(a: UniTriMatrix, e: int,
                      constraints: Optional[Mapping[Tuple[int, int], int]] = None,
                      limit: Optional[int] = None) -> List[UniTriMatrix]:
    """求全部满足 B·A = A^e·B 及给定元素约束的 B ∈ U

    B 的严格上三角元素是 F_p 上的未知数，方程是线性的。约束键为 1 起始的位置。
    结果按行优先的元素向量字典序排列；limit 取字典序最前的若干个。

    Returns:
        解的列表，无解时为空列表
    """
    size, p = a.size, a.p
    constraints = dict(constraints or {})
    for (i, j) in constraints:
        if not 1 <= i < j <= size:
            raise InputError(f"约束位置 ({i}, {j}) 不在严格上三角内")

    target = mat_pow(a.array, e, p)
    positions = strict_upper_positions(size)
    fixed = {(i - 1, j - 1): value % p for (i, j), value in constraints.items()}
    unknown = [pos for pos in positions if pos not in fixed]

    def apply(x: Array) -> Array:
        return (x @ a.array - target @ x) % p

    base = identity_array(size)
    for (i, j), value in fixed.items():
        base[i, j] = value
    row_index = np.array([i for i, _ in positions], dtype=np.intp)
    col_index = np.array([j for _, j in positions], dtype=np.intp)
    constant = apply(base)[row_index, col_index]

    columns = []
    for (i, j) in unknown:
        unit = np.zeros((size, size), dtype=np.int64)
        unit[i, j] = 1
        columns.append(apply(unit)[row_index, col_index])
    coeffs = np.stack(columns, axis=1) if columns else np.zeros((len(positions), 0), dtype=np.int64)

    # 列倒序消元后，每个主元变量只依赖行优先次序更靠前的自由变量，
    # 按自由变量的字典序枚举即得到元素向量的字典序
    solution = solve_affine(coeffs[:, ::-1], (-constant) % p, p, num_cols=len(unknown))
    if solution is None:
        return []
    basis = solution.basis[::-1]
    stacked = np.stack(basis) if basis else np.zeros((0, len(unknown)), dtype=np.int64)

    found = []
    for coords in itertools.product(range(p), repeat=len(basis)):
        if limit is not None and len(found) >= limit:
            break
        vector = ((solution.particular + np.asarray(coords, dtype=np.int64) @ stacked) % p)[::-1]
        data = base.copy()
        for (i, j), value in zip(unknown, vector):
            data[i, j] = value
        found.append(UniTriMatrix._wrap(data, p))

    for b in found:
        if mat_mul(b.array, a.array, p).tolist() != mat_mul(target, b.array, p).tolist():
            raise ConsistencyError("共轭方程的解未通过乘法校验", certificate={'A': a.to_dict(), 'B': b.to_dict()})
    return found


# 块分解

@dataclass(frozen=True)
class JordanBlock:
    """超对角线上的一段极大非零游程；start 为 1 起始下标，size 为块的阶数"""
    start: int
    size: int
    superdiagonal: Tuple[int, ...]

    def matrix(self, p: int) -> UniTriMatrix:
        return UniTriMatrix.from_superdiagonal(self.superdiagonal, p)

    def to_dict(self) -> dict:
        return {'start': self.start, 'size': self.size, 'superdiagonal': list(self.superdiagonal)}


def block_decompose(a: UniTriMatrix) -> List[JordanBlock]:
    """把只有超对角线非零的矩阵拆成 Jordan 型块

    Raises:
        InputError: 超对角线以上有非零元
    """
    if not a.is_superdiagonal_only():
        raise InputError("块分解要求矩阵只在超对角线上有非零元")
    blocks = []
    start = 0
    values: List[int] = []
    for i, value in enumerate(a.superdiagonal()):
        if value:
            values.append(value)
        else:
            blocks.append(JordanBlock(start=start + 1, size=len(values) + 1, superdiagonal=tuple(values)))
            start = i + 1
            values = []
    blocks.append(JordanBlock(start=start + 1, size=len(values) + 1, superdiagonal=tuple(values)))
    return blocks


def block_diagonal(blocks: Iterable[UniTriMatrix], p: int) -> UniTriMatrix:
    """按顺序拼成块对角矩阵"""
    blocks = list(blocks)
    size = sum(b.size for b in blocks)
    data = identity_array(size)
    offset = 0
    for b in blocks:
        data[offset:offset + b.size, offset:offset + b.size] = b.array
        offset += b.size
    return UniTriMatrix(data, p)


def power_conjugator(a: UniTriMatrix, q: int) -> UniTriMatrix:
    """对只有超对角线非零的 A，逐块构造超对角线为 0 且 [B, A] = A^q 的 B

    长度小于 q 的块满足 A_h^q = I，取 B_h = I；其余块解共轭方程取字典序最小解。

    Raises:
        ConsistencyError: 某块无解或拼接结果校验失败
    """
    p = a.p
    pieces = []
    for block in block_decompose(a):
        block_matrix = block.matrix(p)
        if block.size - 1 < q:
            pieces.append(UniTriMatrix.identity(block.size, p))
            continue
        zero_superdiagonal = {(i, i + 1): 0 for i in range(1, block.size)}
        solutions = solve_conjugation(block_matrix, 1 + q, zero_superdiagonal, limit=1)
        if not solutions:
            raise ConsistencyError(
                "块上的共轭方程无解",
                certificate={'block': block.to_dict(), 'p': p, 'q': q},
            )
        pieces.append(solutions[0])
    b = block_diagonal(pieces, p)
    if commutator(b, a) != power(a, q):
        raise ConsistencyError("逐块构造的 B 未满足 [B,A] = A^q", certificate={'A': a.to_dict(), 'B': b.to_dict()})
    return b
