"""Exact double coset computations on integer matrix pairs."""

try:
    from ._heckelab import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _heckelab import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)
