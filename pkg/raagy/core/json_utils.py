"""
JSON序列化工具类 - 基于orjson实现

领域对象通过 to_dict() 暴露可序列化视图；报告、见证文件与语料都经由这里读写。
"""

from enum import Enum
from typing import Any, Union

import numpy as np
import orjson

from raagy.core.errors import ParseError

REPORT_OPTION = orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2 | orjson.OPT_NON_STR_KEYS
LINE_OPTION = orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_NON_STR_KEYS


class JSONUtil:
    """基于orjson的JSON序列化工具类"""

    @staticmethod
    def dumps(obj: Any, option: int = None) -> str:
        """
        序列化为JSON字符串，默认两格缩进

        Args:
            obj: 报告、见证或任何带 to_dict() 的对象
            option: orjson选项
        """
        obj = JSONUtil._prepare_object(obj)
        return orjson.dumps(obj, option=REPORT_OPTION if option is None else option).decode('utf-8')

    @staticmethod
    def dumps_line(obj: Any) -> str:
        """单行JSON，用于标准错误上的错误报告"""
        return JSONUtil.dumps(obj, option=LINE_OPTION)

    @staticmethod
    def loads(s: Union[str, bytes]) -> Any:
        """
        Raises:
            ParseError: 文本不是合法JSON，position 为 "行:列"
        """
        if isinstance(s, str):
            s = s.encode('utf-8')
        try:
            return orjson.loads(s)
        except orjson.JSONDecodeError as e:
            raise ParseError(f"JSON解析失败: {e.msg}", position=f"{e.lineno}:{e.colno}") from e

    @staticmethod
    def _prepare_object(obj: Any) -> Any:
        # 集合按字符串排序，保证输出稳定
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, (set, frozenset)):
            return [JSONUtil._prepare_object(item) for item in sorted(obj, key=str)]
        if hasattr(obj, 'to_dict'):
            return JSONUtil._prepare_object(obj.to_dict())
        if isinstance(obj, dict):
            return {k: JSONUtil._prepare_object(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [JSONUtil._prepare_object(item) for item in obj]
        if isinstance(obj, int) and not isinstance(obj, bool) and abs(obj) >= 2 ** 63:
            return str(obj)
        return obj


json = JSONUtil

loads = JSONUtil.loads
dumps = JSONUtil.dumps
