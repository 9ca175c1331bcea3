"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``PCTREAP_PURE=1`` to force the fallback.
"""
import os

if os.environ.get("PCTREAP_PURE", "") not in ("", "0"):
    from . import _pysim as sim
    from . import _pytreap as treap
    NAME = "python"
else:
    try:
        from . import _csim as sim
        from . import _ctreap as treap
        NAME = "cython"
    except ImportError:
        from . import _pysim as sim
        from . import _pytreap as treap
        NAME = "python"

__all__ = ["NAME", "sim", "treap"]
