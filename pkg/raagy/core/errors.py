#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy异常定义"""

from typing import Any, Optional


class RaagyError(Exception):
    """所有 raagy 异常的基类"""


class InputError(RaagyError, ValueError):
    """输入不合法：未知顶点、尺寸不一致、非素数等"""


class ParseError(InputError):
    """JSON 或序列表达式解析失败

    Args:
        message: 错误描述
        position: 出错位置（字符偏移或 行:列），未知时为 None
    """

    def __init__(self, message: str, position: Optional[str] = None):
        self.position = position
        if position is not None:
            message = f"{message} (位置 {position})"
        super().__init__(message)


class PreconditionError(RaagyError, ValueError):
    """操作前置条件不满足

    Args:
        message: 错误描述
        violation: 触发该错误的禁止模式（如果有）
    """

    def __init__(self, message: str, violation: Any = None):
        self.violation = violation
        super().__init__(message)


class ResourceLimitError(RaagyError):
    """枚举或规范化超过尺寸上限"""


class ConsistencyError(RaagyError):
    """内部交叉校验失败；certificate 保存可复现的反例数据

    Args:
        message: 错误描述
        certificate: 可序列化为 JSON 的证据
    """

    def __init__(self, message: str, certificate: Any = None):
        self.certificate = certificate
        super().__init__(message)
