#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""Raagy - 定向 pro-p 直角 Artin 群与 Massey 积的计算框架

使用示例:
    from raagy import Prime, Cochain1, MasseyQuery, massey_status
    from raagy.corpus import get_entry

    g = get_entry('disjoint-tails-converging').digraph
    pr = Prime(3)
    alpha = Cochain1.combination(g, pr.p, {'u': 1, 'v': 1})
    beta = Cochain1.dual(g, pr.p, 'u')
    verdict = massey_status(MasseyQuery.build(g, pr, [alpha, beta, alpha]))
    print(verdict.status)  # MasseyStatus.ESSENTIAL

命令行:
    raagy classify square-special-clique
    raagy massey disjoint-tails-converging "u+v, u, u+v" --p 3
"""

from raagy.algebra import *  # noqa: F401,F403
from raagy.algebra import __all__ as _algebra_all
from raagy.core import notes
from raagy.core.config import configure, get_config
from raagy.core.context import get_suite_run_id
from raagy.core.errors import (
    ConsistencyError, InputError, ParseError, PreconditionError, RaagyError, ResourceLimitError,
)
from raagy.core.logger import get_logger, get_run_logger
from raagy.core.progress import set_progress
from raagy.core.suite import suite

__version__ = "0.1.0"
__all__ = list(_algebra_all) + [
    "configure",
    "get_config",
    "get_logger",
    "get_run_logger",
    "get_suite_run_id",
    "set_progress",
    "suite",
    "notes",
    "RaagyError",
    "InputError",
    "ParseError",
    "PreconditionError",
    "ResourceLimitError",
    "ConsistencyError",
]
