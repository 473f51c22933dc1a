#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy上下文管理模块"""

from contextvars import ContextVar
from typing import Optional

suite_run_id_var: ContextVar[Optional[str]] = ContextVar('suite_run_id', default=None)

# 当前套件运行收集到的备注，元素为 {"level", "message"}
suite_notes_var: ContextVar[Optional[list]] = ContextVar('suite_notes', default=None)


def get_suite_run_id() -> Optional[str]:
    """获取当前上下文的 suite_run_id"""
    return suite_run_id_var.get()


def get_suite_notes() -> list:
    """获取当前套件运行的备注副本，不在套件上下文中时返回空列表"""
    notes = suite_notes_var.get()
    return list(notes) if notes is not None else []
