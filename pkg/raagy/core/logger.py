#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy日志模块"""

import logging
import os
import threading

from raagy.core.config import get_config
from raagy.core.context import get_suite_run_id

# 用于跟踪动态创建的 suite-run logger，便于清理
_suite_run_loggers = set()
_logger_lock = threading.Lock()

_FILE_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
_CONSOLE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
_DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def get_run_logger():
    """获取当前套件运行的logger，不在套件上下文中时返回通用 raagy logger"""
    run_id = get_suite_run_id()
    if run_id:
        return get_logger(f"suite-run-{run_id}")
    return get_logger('raagy')


def get_logger(name, console_output=False):
    """获取一个logger对象

    Args:
        name: logger名称，也用作日志文件名
        console_output: 是否同时输出到控制台(stderr)，默认为False

    Returns:
        logging.Logger: logger对象
    """
    config = get_config()
    level = getattr(logging, config.log_level.upper(), logging.INFO)

    logger_name = f"{name}_console" if console_output else name
    logger = logging.getLogger(logger_name)
    logger.setLevel(level)

    if not logger.handlers:
        if config.log_to_file:
            os.makedirs(config.log_dir, exist_ok=True)
            log_file = os.path.join(config.log_dir, f'{name}.log')
            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setLevel(level)
            file_handler.setFormatter(logging.Formatter(_FILE_FORMAT, datefmt=_DATE_FORMAT))
            logger.addHandler(file_handler)

        if console_output:
            console_handler = logging.StreamHandler()
            console_handler.setLevel(level)
            console_handler.setFormatter(logging.Formatter(_CONSOLE_FORMAT, datefmt=_DATE_FORMAT))
            logger.addHandler(console_handler)

        if not logger.handlers:
            logger.addHandler(logging.NullHandler())

        # 跟踪 suite-run logger 以便后续清理
        if name.startswith('suite-run-'):
            with _logger_lock:
                _suite_run_loggers.add(logger_name)

    return logger


def _drop_logger(logger_name):
    logger = logging.getLogger(logger_name)
    for handler in logger.handlers[:]:
        try:
            handler.close()
        except Exception:
            pass
        logger.removeHandler(handler)

    # 从 logging 的 manager 中移除，避免 logger 对象被全局缓存
    if logger_name in logging.Logger.manager.loggerDict:
        del logging.Logger.manager.loggerDict[logger_name]


def cleanup_run_logger(run_id):
    """清理指定套件运行的 logger，释放文件句柄

    Args:
        run_id: 套件运行 ID
    """
    for logger_name in (f"suite-run-{run_id}", f"suite-run-{run_id}_console"):
        try:
            _drop_logger(logger_name)
            with _logger_lock:
                _suite_run_loggers.discard(logger_name)
        except Exception:
            pass  # 忽略清理过程中的错误


def cleanup_all_run_loggers():
    """清理所有 suite-run logger，用于进程退出前调用"""
    with _logger_lock:
        logger_names = list(_suite_run_loggers)

    for logger_name in logger_names:
        try:
            _drop_logger(logger_name)
        except Exception:
            pass

    with _logger_lock:
        _suite_run_loggers.clear()


def get_active_run_logger_count():
    """获取当前活跃的 suite-run logger 数量

    Returns:
        int: 活跃的 logger 数量
    """
    with _logger_lock:
        return len(_suite_run_loggers)
