"""Lock-free concurrent set: a persistent treap behind a Read/CAS root register.

Queries read the register once and run on that snapshot. Updates read the
current version, build the next one by path copying, and CAS it in; a failed
CAS means some other update was installed, so the loop rereads and rebuilds
on the fresh version right away (no backoff).

Linearization points: the successful CAS for an update that changes the set,
the register read for queries and for updates that turn out to be no-ops.
"""
from __future__ import annotations

from typing import Callable, NamedTuple, Optional

from . import persistent
from ._backend import treap as _k
from .persistent import Version

RootRegister = _k.RootRegister

#: ``hook(stage, op_name, key, base_version)`` with stage ``"read"`` or ``"cas"``
Hook = Callable[[str, str, int, Version], None]


class UpdateOutcome(NamedTuple):
    applied: bool
    attempts: int
    # version the operation took effect on: the installed one when applied,
    # otherwise the snapshot it read
    identity: int


class ConcurrentSet:
    """Linearizable ordered set of 64-bit integers, safe from any thread.

    ``hook`` is a test seam called after each register read and right before
    each CAS; tests use it to force interleavings or park a thread.
    """

    def __init__(self, initial: Optional[Version] = None, hook: Optional[Hook] = None):
        self._root = RootRegister(initial if initial is not None else persistent.empty())
        self._hook = hook

    def snapshot(self) -> Version:
        return self._root.get()

    def contains(self, key: int) -> bool:
        return persistent.contains(self._root.get(), key)

    def insert(self, key: int) -> UpdateOutcome:
        return self._update(persistent.insert, "insert", key)

    def remove(self, key: int) -> UpdateOutcome:
        return self._update(persistent.remove, "remove", key)

    def _update(self, op, name: str, key: int) -> UpdateOutcome:
        root = self._root
        hook = self._hook
        attempts = 0
        while True:
            attempts += 1
            cur = root.get()
            if hook is not None:
                hook("read", name, key, cur)
            new, changed = op(cur, key)
            if not changed:
                return UpdateOutcome(False, attempts, cur.identity)
            if hook is not None:
                hook("cas", name, key, cur)
            if root.compare_and_set(cur, new):
                return UpdateOutcome(True, attempts, new.identity)


def new_set(initial: Optional[Version] = None, hook: Optional[Hook] = None) -> ConcurrentSet:
    return ConcurrentSet(initial, hook)
