#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""有限域 F_p 上的稠密线性代数

高斯-若尔当消元、秩与仿射解空间枚举。矩阵均为 numpy int64 数组，
函数不修改传入的数组。
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple

import numpy as np
from numpy.typing import NDArray


def is_prime(n: int) -> bool:
    """试除法判断素数，适用于本库支持的小素数"""
    if n <= 1:
        return False
    for i in range(2, math.isqrt(n) + 1):
        if n % i == 0:
            return False
    return True


def row_reduce(mat: NDArray[np.int64], p: int) -> Tuple[NDArray[np.int64], Tuple[int, ...]]:
    """返回 mat 在 GF(p) 上的约化行阶梯形及主元列

    主元按列从左到右、行从上到下的确定顺序选取，每个主元归一为 1。

    Args:
        mat: 二维整数数组
        p: 素数模

    Returns:
        (rref, pivots): 约化行阶梯形与主元列下标
    """
    mat = np.array(mat, dtype=np.int64, copy=True) % p
    num_rows, num_cols = mat.shape
    pivots = []
    row = 0
    for col in range(num_cols):
        if row >= num_rows:
            break
        candidates = np.nonzero(mat[row:, col])[0]
        if len(candidates) == 0:
            continue
        pivot_row = int(candidates[0]) + row
        if pivot_row != row:
            mat[[row, pivot_row]] = mat[[pivot_row, row]]
        inv_pivot = pow(int(mat[row, col]), -1, p)
        mat[row] = (mat[row] * inv_pivot) % p
        for r in range(num_rows):
            if r != row and mat[r, col] != 0:
                mat[r] = (mat[r] - mat[r, col] * mat[row]) % p
        pivots.append(col)
        row += 1
    return mat, tuple(pivots)


def rank_mod_p(mat: NDArray[np.int64], p: int) -> int:
    """返回 mat 在 GF(p) 上的秩"""
    mat = np.asarray(mat, dtype=np.int64)
    if mat.size == 0:
        return 0
    return len(row_reduce(mat, p)[1])


@dataclass(frozen=True)
class AffineSolution:
    """线性方程组 a·x = b 的解空间 particular + span(basis)

    basis[k] 在自由列 free_columns[k] 上取 1、其余自由列取 0，
    因此自由变量的取值就是解在自由列上的坐标。
    """
    particular: NDArray[np.int64]
    basis: Tuple[NDArray[np.int64], ...]
    free_columns: Tuple[int, ...]
    p: int

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def count(self) -> int:
        return self.p ** len(self.basis)

    def __iter__(self) -> Iterator[NDArray[np.int64]]:
        """按自由坐标的字典序枚举全部解"""
        if not self.basis:
            yield self.particular.copy()
            return
        stacked = np.stack(self.basis)
        for coords in itertools.product(range(self.p), repeat=len(self.basis)):
            yield (self.particular + np.asarray(coords, dtype=np.int64) @ stacked) % self.p


def solve_affine(a: NDArray[np.int64], b: NDArray[np.int64], p: int, num_cols: Optional[int] = None) -> Optional[AffineSolution]:
    """求解 a·x = b (mod p)

    Args:
        a: 系数矩阵，形状 (rows, cols)；rows 可以为 0
        b: 右端向量，长度 rows
        p: 素数模
        num_cols: a 没有行时用于确定未知数个数

    Returns:
        AffineSolution，无解时返回 None
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if a.ndim == 2 and (a.shape[0] > 0 or num_cols is None):
        cols = a.shape[1]
    elif num_cols is not None:
        cols = num_cols
        a = np.zeros((0, cols), dtype=np.int64)
    else:
        raise ValueError("无法确定未知数个数")

    augmented = np.hstack([a % p, (b % p).reshape(-1, 1)])
    rref, pivots = row_reduce(augmented, p)
    if cols in pivots:
        return None

    particular = np.zeros(cols, dtype=np.int64)
    for row, col in enumerate(pivots):
        particular[col] = rref[row, cols]

    free_columns = tuple(c for c in range(cols) if c not in pivots)
    basis = []
    for free in free_columns:
        vec = np.zeros(cols, dtype=np.int64)
        vec[free] = 1
        for row, col in enumerate(pivots):
            vec[col] = (-rref[row, free]) % p
        basis.append(vec)
    return AffineSolution(particular=particular, basis=tuple(basis), free_columns=free_columns, p=p)


def nullspace_mod_p(a: NDArray[np.int64], p: int) -> Tuple[NDArray[np.int64], ...]:
    """返回 a·x = 0 的一组基"""
    a = np.asarray(a, dtype=np.int64)
    solution = solve_affine(a, np.zeros(a.shape[0], dtype=np.int64), p, num_cols=a.shape[1])
    return solution.basis
