"""Pure-Python treap kernels and root register (fallback for ``_ctreap``)."""
import threading

_MASK = (1 << 64) - 1
_KEY_MIN = -(1 << 63)
_KEY_MAX = (1 << 63) - 1


def _check(key):
    if not _KEY_MIN <= key <= _KEY_MAX:
        raise OverflowError(f"key {key} outside signed 64-bit range")


def priority_of(key):
    _check(key)
    z = ((key & _MASK) + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class Node:
    __slots__ = ("key", "priority", "left", "right", "height")

    def __init__(self, key, priority, left=None, right=None):
        self.key = key
        self.priority = priority
        self.left = left
        self.right = right
        self.height = 1 + max(left.height if left is not None else 0,
                              right.height if right is not None else 0)

    def __repr__(self):
        return f"Node(key={self.key}, priority={self.priority})"


def contains(t, key):
    _check(key)
    while t is not None:
        if key < t.key:
            t = t.left
        elif key > t.key:
            t = t.right
        else:
            return True
    return False


def _split(t, key):
    if t is None:
        return None, None
    if t.key < key:
        lo, hi = _split(t.right, key)
        return Node(t.key, t.priority, t.left, lo), hi
    lo, hi = _split(t.left, key)
    return lo, Node(t.key, t.priority, hi, t.right)


def _merge(a, b):
    if a is None:
        return b
    if b is None:
        return a
    if a.priority >= b.priority:
        return Node(a.key, a.priority, a.left, _merge(a.right, b))
    return Node(b.key, b.priority, _merge(a, b.left), b.right)


def _insert(t, key, priority):
    if t is None:
        return Node(key, priority)
    if priority > t.priority:
        lo, hi = _split(t, key)
        return Node(key, priority, lo, hi)
    if key < t.key:
        return Node(t.key, t.priority, _insert(t.left, key, priority), t.right)
    return Node(t.key, t.priority, t.left, _insert(t.right, key, priority))


def _remove(t, key):
    if key == t.key:
        return _merge(t.left, t.right)
    if key < t.key:
        return Node(t.key, t.priority, _remove(t.left, key), t.right)
    return Node(t.key, t.priority, t.left, _remove(t.right, key))


def insert(root, key, priority=None):
    if contains(root, key):
        return root, False
    if priority is None:
        priority = priority_of(key)
    elif not 0 <= priority <= _MASK:
        raise OverflowError(f"priority {priority} outside unsigned 64-bit range")
    return _insert(root, key, priority), True


def remove(root, key):
    if not contains(root, key):
        return root, False
    return _remove(root, key), True


def to_list(t):
    out = []
    stack = []
    while stack or t is not None:
        while t is not None:
            stack.append(t)
            t = t.left
        t = stack.pop()
        out.append(t.key)
        t = t.right
    return out


def _fix_heights(t):
    if t is None:
        return 0
    t.height = 1 + max(_fix_heights(t.left), _fix_heights(t.right))
    return t.height


def build_sorted(keys):
    spine = []
    prev = None
    for k in keys:
        if prev is not None and k <= prev:
            raise ValueError("keys must be strictly increasing")
        prev = k
        node = Node(k, priority_of(k))
        last = None
        while spine and spine[-1].priority < node.priority:
            last = spine.pop()
        node.left = last
        if spine:
            spine[-1].right = node
        spine.append(node)
    if not spine:
        return None
    _fix_heights(spine[0])
    return spine[0]


class RootRegister:
    """Read/CAS cell holding the current version.

    Reads are a single attribute load. The lock guards only the compare and
    the store of one CAS and is never held while a version is being built.
    """

    __slots__ = ("_value", "_lock")

    def __init__(self, value):
        self._value = value
        self._lock = threading.Lock()

    def get(self):
        return self._value

    def compare_and_set(self, expected, new):
        with self._lock:
            if self._value.identity != expected.identity:
                return False
            self._value = new
            return True
