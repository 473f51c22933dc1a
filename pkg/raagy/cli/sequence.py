#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""序列表达式解析

"u+2v, u, u+2v" 解析为三个一维上链；每一项是顶点名的整系数线性组合，
系数在解析时约化到模 p，单独的 "0" 表示零上链。外层括号可省略。
"""

import re
from typing import List, Tuple

from raagy.algebra.digraph import Digraph
from raagy.algebra.exterior import Cochain1
from raagy.core.errors import ParseError

_TERM = re.compile(r'\s*([+-]?)\s*(\d*)\s*\*?\s*([A-Za-z_]\w*)\s*')
_ZERO = re.compile(r'\s*[+-]?\s*0+\s*')
_BRACKETS = {'(': ')', '[': ']'}


def _split_items(text: str) -> List[Tuple[int, int]]:
    """返回每个逗号分隔项在 text 中的 [start, end) 区间，去掉外层括号"""
    start, end = 0, len(text)
    stripped = text.strip()
    if stripped and stripped[0] in _BRACKETS:
        left = text.index(stripped[0])
        right = text.rindex(stripped[-1])
        if stripped[-1] != _BRACKETS[stripped[0]]:
            raise ParseError("括号不匹配", position=str(right))
        start, end = left + 1, right

    spans = []
    cursor = start
    while True:
        comma = text.find(',', cursor, end)
        stop = end if comma < 0 else comma
        spans.append((cursor, stop))
        if comma < 0:
            return spans
        cursor = comma + 1


def _parse_item(text: str, start: int, end: int, g: Digraph, p: int) -> Cochain1:
    if not text[start:end].strip():
        raise ParseError("序列中有空项", position=str(start))
    if _ZERO.fullmatch(text, start, end):
        return Cochain1.zero(g, p)

    coefficients = {v: 0 for v in g.vertices}
    pos = start
    first = True
    while pos < end:
        match = _TERM.match(text, pos, end)
        if match is None or match.end() == pos:
            raise ParseError(f"无法解析的项: {text[pos:end].strip()!r}", position=str(pos))
        sign, digits, name = match.groups()
        if not sign and not first:
            raise ParseError(f"项 {name} 前缺少 + 或 -", position=str(match.start(3)))
        if name not in g:
            raise ParseError(f"未知顶点: {name}", position=str(match.start(3)))
        value = int(digits) if digits else 1
        coefficients[name] += -value if sign == '-' else value
        pos = match.end()
        first = False
    return Cochain1(g, p, coefficients)


def parse_sequence(text: str, g: Digraph, p: int) -> Tuple[Cochain1, ...]:
    """解析序列表达式

    Args:
        text: 形如 "(u+v, u, u+v)" 的表达式
        g: 顶点名所属的有向图
        p: 素数模

    Returns:
        一维上链元组

    Raises:
        ParseError: 语法错误或未知顶点，position 为字符偏移
    """
    if not text or not text.strip():
        raise ParseError("序列表达式为空", position='0')
    return tuple(_parse_item(text, start, end, g, p) for start, end in _split_items(text))


def format_sequence(seq) -> str:
    return '(' + ', '.join(repr(alpha) for alpha in seq) + ')'
