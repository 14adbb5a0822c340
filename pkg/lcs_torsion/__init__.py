"""
===========
LCS Torsion
===========

Exact computation of the graded lower central series quotients of free
associative (super)algebras over the integers, the rationals, prime
fields and ``Z[1/2]``.
"""

import os

from platformdirs import user_data_dir

__version__ = "0.1a1"

# Part of every cache key; bump when a computed value could change.
ENGINE_VERSION = "1"

env = {
    'CACHE_DIR': os.path.join(user_data_dir("lcs-torsion"), "cells"),
    'WORKERS': '1',
    'SLOW': '0',
}

for key in env:
    os.environ.setdefault(f'LCS_TORSION_{key}', env[key])
