# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled treap kernels and root register.

Mirrors ``_pytreap`` function for function. Nodes are immutable once they
leave this module; the only in-place writes happen inside ``build_sorted``
before the tree is published.
"""
cimport cython
from libc.stdint cimport int64_t, uint64_t


cdef inline uint64_t _mix(uint64_t z) nogil:
    z = z + <uint64_t>0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


def priority_of(int64_t key):
    return _mix(<uint64_t>key)


# A node only references nodes built before it, so no cycles can form and the
# cyclic collector can skip these entirely.
@cython.no_gc
cdef class Node:
    cdef readonly int64_t key
    cdef readonly uint64_t priority
    cdef readonly Node left
    cdef readonly Node right
    cdef readonly int height

    def __init__(self, int64_t key, uint64_t priority, Node left=None, Node right=None):
        self.key = key
        self.priority = priority
        self.left = left
        self.right = right
        self.height = 1 + max(left.height if left is not None else 0,
                              right.height if right is not None else 0)

    def __repr__(self):
        return f"Node(key={self.key}, priority={self.priority})"


cdef inline Node _make(int64_t key, uint64_t priority, Node left, Node right):
    cdef Node n = Node.__new__(Node)
    cdef int hl = left.height if left is not None else 0
    cdef int hr = right.height if right is not None else 0
    n.key = key
    n.priority = priority
    n.left = left
    n.right = right
    n.height = 1 + (hl if hl > hr else hr)
    return n


cpdef bint contains(Node t, int64_t key):
    while t is not None:
        if key < t.key:
            t = t.left
        elif key > t.key:
            t = t.right
        else:
            return True
    return False


cdef tuple _split(Node t, int64_t key):
    # key must be absent from t
    cdef Node lo, hi
    if t is None:
        return None, None
    if t.key < key:
        lo, hi = _split(t.right, key)
        return _make(t.key, t.priority, t.left, lo), hi
    lo, hi = _split(t.left, key)
    return lo, _make(t.key, t.priority, hi, t.right)


cdef Node _merge(Node a, Node b):
    if a is None:
        return b
    if b is None:
        return a
    if a.priority >= b.priority:
        return _make(a.key, a.priority, a.left, _merge(a.right, b))
    return _make(b.key, b.priority, _merge(a, b.left), b.right)


cdef Node _insert(Node t, int64_t key, uint64_t priority):
    cdef Node lo, hi
    if t is None:
        return _make(key, priority, None, None)
    if priority > t.priority:
        lo, hi = _split(t, key)
        return _make(key, priority, lo, hi)
    if key < t.key:
        return _make(t.key, t.priority, _insert(t.left, key, priority), t.right)
    return _make(t.key, t.priority, t.left, _insert(t.right, key, priority))


cdef Node _remove(Node t, int64_t key):
    if key == t.key:
        return _merge(t.left, t.right)
    if key < t.key:
        return _make(t.key, t.priority, _remove(t.left, key), t.right)
    return _make(t.key, t.priority, t.left, _remove(t.right, key))


def insert(Node root, int64_t key, priority=None):
    """Return ``(new_root, inserted)``; ``root`` itself when key is present."""
    if contains(root, key):
        return root, False
    cdef uint64_t p = _mix(<uint64_t>key) if priority is None else <uint64_t>priority
    return _insert(root, key, p), True


def remove(Node root, int64_t key):
    if not contains(root, key):
        return root, False
    return _remove(root, key), True


def to_list(Node t):
    cdef list out = []
    cdef list stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        out.append(t.key)
        t = t.right
    return out


cdef int _fix_heights(Node t):
    if t is None:
        return 0
    cdef int hl = _fix_heights(t.left)
    cdef int hr = _fix_heights(t.right)
    t.height = 1 + (hl if hl > hr else hr)
    return t.height


def build_sorted(keys):
    """Build the treap for strictly increasing ``keys`` in linear time."""
    cdef list spine = []
    cdef Node node, last
    cdef int64_t k
    cdef int64_t prev = 0
    cdef bint started = False
    for k in keys:
        if started and k <= prev:
            raise ValueError("keys must be strictly increasing")
        started = True
        prev = k
        node = _make(k, _mix(<uint64_t>k), None, None)
        last = None
        while spine and (<Node>spine[len(spine) - 1]).priority < node.priority:
            last = spine.pop()
        node.left = last
        if spine:
            (<Node>spine[len(spine) - 1]).right = node
        spine.append(node)
    if not spine:
        return None
    root = spine[0]
    _fix_heights(root)
    return root


cdef class RootRegister:
    """Read/CAS cell holding the current version.

    The compare and the store run without touching the interpreter loop, so
    the GIL makes the pair atomic without an extra lock.
    """
    cdef object _value

    def __init__(self, value):
        self._value = value

    cpdef object get(self):
        return self._value

    cpdef bint compare_and_set(self, object expected, object new):
        if self._value.identity != expected.identity:
            return False
        self._value = new
        return True
