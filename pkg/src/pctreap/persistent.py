"""Immutable ordered set of 64-bit integers backed by a path-copying treap.

Every update returns a new :class:`Version`; the input version and all of its
nodes stay untouched, so old versions can be read forever by whoever holds
them. New nodes are allocated only along the search path (plus one split or
merge spine), and everything else is shared with the input.

Priorities are a deterministic 64-bit mix of the key, so a given key set
always produces the same tree shape.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Optional

from ._backend import treap as _k

Node = _k.Node
priority_of = _k.priority_of

# next() on itertools.count is atomic under the GIL
_identities = itertools.count(1)


class Version:
    """A handle on one immutable tree snapshot.

    ``identity`` is unique for the lifetime of the process and increases with
    creation order; the root register compares on it.
    """

    __slots__ = ("root", "identity")

    def __init__(self, root: Optional[Node]):
        self.root = root
        self.identity = next(_identities)

    def __contains__(self, key: int) -> bool:
        return _k.contains(self.root, key)

    def __iter__(self):
        return iter(_k.to_list(self.root))

    def __repr__(self) -> str:
        return f"Version(identity={self.identity}, height={height(self)})"


def empty() -> Version:
    return Version(None)


def from_keys(keys: Iterable[int]) -> Version:
    """Build a version holding ``keys`` (any order, duplicates allowed).

    Produces the same tree as inserting the keys one by one.
    """
    return Version(_k.build_sorted(sorted(set(keys))))


def insert(v: Version, key: int, priority: Optional[int] = None) -> tuple[Version, bool]:
    """Insert ``key``; returns ``(version, inserted)``.

    When the key is already present ``v`` itself comes back and nothing is
    allocated. ``priority`` overrides the hashed priority (used to build
    hand-shaped trees in tests).
    """
    root, inserted = _k.insert(v.root, key, priority)
    if not inserted:
        return v, False
    return Version(root), True


def remove(v: Version, key: int) -> tuple[Version, bool]:
    root, removed = _k.remove(v.root, key)
    if not removed:
        return v, False
    return Version(root), True


def contains(v: Version, key: int) -> bool:
    return _k.contains(v.root, key)


def to_sorted_list(v: Version) -> list[int]:
    return _k.to_list(v.root)


def height(v: Version) -> int:
    """Number of nodes on the longest root-to-leaf path (0 when empty)."""
    return v.root.height if v.root is not None else 0


def size(v: Version) -> int:
    return len(_k.to_list(v.root))


def _find(t: Optional[Node], key: int) -> Optional[Node]:
    while t is not None:
        if key < t.key:
            t = t.left
        elif key > t.key:
            t = t.right
        else:
            return t
    return None


def fresh_node_count(old: Version, new: Version) -> int:
    """Count nodes reachable from ``new`` that are not reachable from ``old``.

    Reachability is by node identity. A node reachable from ``old`` is the
    unique node found by searching ``old`` for its key, and everything below
    a shared node is shared too, so the walk stops at shared subtrees and
    costs O(fresh * height) instead of O(size).
    """
    count = 0
    stack = [new.root] if new.root is not None else []
    while stack:
        n = stack.pop()
        if _find(old.root, n.key) is n:
            continue
        count += 1
        if n.left is not None:
            stack.append(n.left)
        if n.right is not None:
            stack.append(n.right)
    return count


def validate(v: Version) -> None:
    """Raise ``AssertionError`` unless BST order, heap order and cached heights hold."""
    def walk(t, lo, hi):
        if t is None:
            return 0
        assert (lo is None or lo < t.key) and (hi is None or t.key < hi), f"BST order broken at {t.key}"
        for child in (t.left, t.right):
            assert child is None or child.priority <= t.priority, f"heap order broken at {t.key}"
        h = 1 + max(walk(t.left, lo, t.key), walk(t.right, t.key, hi))
        assert t.height == h, f"stale height at {t.key}"
        return h

    walk(v.root, None, None)
