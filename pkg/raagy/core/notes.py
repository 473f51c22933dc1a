#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy备注模块 - 在套件运行过程中记录回退、冲突等说明，随报告一起输出"""

from typing import Literal

from raagy.core.context import suite_notes_var
from raagy.core.logger import get_run_logger

NoteLevel = Literal['info', 'warning', 'error']


def add_note(level: NoteLevel, message: str) -> bool:
    """为当前套件运行添加备注

    备注同时写入运行日志。

    Args:
        level: 备注级别 (info/warning/error)
        message: 备注消息

    Returns:
        是否添加成功（不在套件上下文中时返回 False）

    Example:
        >>> from raagy.core import notes
        >>>
        >>> @suite(name="构造")
        >>> def build(g):
        >>>     if conflict:
        >>>         notes.add_warning(f'星图重叠冲突: {vertex}')
    """
    if level not in ('info', 'warning', 'error'):
        raise ValueError(f"未知备注级别: {level}")
    getattr(get_run_logger(), level)(message)

    bucket = suite_notes_var.get()
    if bucket is None:
        return False
    bucket.append({'level': level, 'message': message})
    return True


def add_info(message: str) -> bool:
    """添加 info 级别备注"""
    return add_note('info', message)


def add_warning(message: str) -> bool:
    """添加 warning 级别备注"""
    return add_note('warning', message)


def add_error(message: str) -> bool:
    """添加 error 级别备注"""
    return add_note('error', message)
