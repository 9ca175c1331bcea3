"""Lock-free ordered set over a path-copying persistent treap.

``persistent`` holds the immutable treap, ``universal`` the Read/CAS wrapper,
``cache_model`` the private-cache cost model and ``bench`` the throughput
workloads. ``BACKEND`` names the kernel implementation in use.
"""
from ._backend import NAME as BACKEND
from .persistent import Version, contains, empty, from_keys, insert, remove, to_sorted_list
from .universal import ConcurrentSet, UpdateOutcome, new_set

__all__ = [
    "BACKEND",
    "ConcurrentSet",
    "UpdateOutcome",
    "Version",
    "contains",
    "empty",
    "from_keys",
    "insert",
    "new_set",
    "remove",
    "to_sorted_list",
]
