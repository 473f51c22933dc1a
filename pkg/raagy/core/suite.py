#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy套件装饰器

被 @suite 装饰的函数在独立的运行上下文中执行：拥有自己的运行 ID、
运行日志文件 suite-run-<id>.log 和备注列表。
"""
import time
import traceback
import uuid
from functools import wraps

from raagy.core.context import suite_notes_var, suite_run_id_var
from raagy.core.logger import cleanup_run_logger, get_run_logger

def suite(suite_id, name=None):
    """Suite装饰器，用于定义长时间运行的校验套件

    Args:
        suite_id: 套件唯一标识
        name: 套件名称，默认使用suite_id

    Returns:
        装饰器函数
    """
    display_name = name or suite_id

    def decorate(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            # 嵌套调用沿用外层运行上下文
            if suite_run_id_var.get() is not None:
                return func(*args, **kwargs)

            run_id = uuid.uuid4().hex[:12]
            run_token = suite_run_id_var.set(run_id)
            notes_token = suite_notes_var.set([])
            logger = get_run_logger()
            started = time.perf_counter()
            try:
                logger.info(f'{"-" * 30} suite {display_name} start {"-" * 30}')
                return func(*args, **kwargs)
            except Exception:
                logger.error(traceback.format_exc())
                raise
            finally:
                elapsed = time.perf_counter() - started
                logger.info(f'{"-" * 30} suite {display_name} end ({elapsed:.2f}s) {"-" * 30}')
                suite_notes_var.reset(notes_token)
                suite_run_id_var.reset(run_token)
                cleanup_run_logger(run_id)

        return wrapper

    return decorate
