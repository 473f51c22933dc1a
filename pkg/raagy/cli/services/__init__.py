#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""命令行服务层"""

from raagy.cli.services.classify_service import ClassifyService
from raagy.cli.services.massey_service import MasseyService
from raagy.cli.services.theorem_service import TheoremService

__all__ = ['ClassifyService', 'MasseyService', 'TheoremService']
