#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy套件进度模块"""

from raagy.core.context import get_suite_run_id
from raagy.core.logger import get_run_logger


def set_progress(progress: int, message: str | None = None) -> bool:
    """记录当前套件运行的进度

    长时间的校验套件（定理验证、强消失报告）在循环中调用此函数。

    Args:
        progress: 进度百分比 (0-100)
        message: 进度描述信息（可选）

    Returns:
        是否成功记录进度

    Example:
        @suite(name="强消失报告")
        def report(sequences):
            total = len(sequences)
            for i, seq in enumerate(sequences):
                check(seq)
                set_progress(int((i + 1) / total * 100), f"已检查 {i + 1}/{total} 个序列")
    """
    logger = get_run_logger()
    if isinstance(progress, bool) or not isinstance(progress, int) or not (0 <= progress <= 100):
        logger.warning(f"无效的进度值: {progress}，必须在 0-100 之间")
        return False

    if get_suite_run_id() is None:
        # 不在套件上下文中，静默失败
        return False

    if message:
        logger.info(f"进度 {progress}%: {message}")
    else:
        logger.info(f"进度 {progress}%")
    return True
