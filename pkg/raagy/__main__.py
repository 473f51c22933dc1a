#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""python -m raagy"""

import sys

from raagy.cli import main

if __name__ == '__main__':
    sys.exit(main())
