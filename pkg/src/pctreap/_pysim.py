"""Pure-Python kernel for the private-cache simulator.

The tree is a complete binary tree with ``2**levels - 1`` routing nodes
addressed in heap order; key ``k`` in ``[0, 2**levels)`` routes through
positions ``(1 << l) + (k >> (levels - l))`` for ``l`` in ``range(levels)``.
Node identities start at the heap positions and every path copy hands out
fresh identities from a monotone counter.
"""
from collections import OrderedDict


def run_phase(keys, levels, processes, capacity, miss_cost, ops):
    """Run ``ops`` successful updates with ``processes`` round-robin actors.

    Returns ``(clocks, successes, retries, retry_modified, retry_uncached)``.
    """
    cur = list(range(1 << levels))
    next_id = 1 << levels
    fresh_lo = next_id  # ids >= fresh_lo were created by the previous success
    caches = [OrderedDict() for _ in range(processes)]
    clocks = [0.0] * processes
    successes = [0] * processes
    pending = [-1] * processes
    first = [True] * processes
    next_key = 0
    retries = retry_modified = retry_uncached = 0
    shifts = [(1 << l, levels - l) for l in range(levels)]

    for r in range(ops):
        for i in range(processes):
            if pending[i] < 0:
                pending[i] = keys[next_key]
                next_key += 1
                first[i] = True
        for i in range(processes):
            key = pending[i]
            cache = caches[i]
            cost = 1.0  # root register read
            uncached = modified = 0
            for base, shift in shifts:
                nid = cur[base + (key >> shift)]
                if nid in cache:
                    cache.move_to_end(nid)
                    cost += 1.0
                else:
                    cost += miss_cost
                    uncached += 1
                    cache[nid] = None
                    if len(cache) > capacity:
                        cache.popitem(last=False)
                if nid >= fresh_lo:
                    modified += 1
            clocks[i] += cost
            if not first[i]:
                retries += 1
                retry_modified += modified
                retry_uncached += uncached

        winner = r % processes
        key = pending[winner]
        cache = caches[winner]
        fresh_lo = next_id
        for base, shift in shifts:
            pos = base + (key >> shift)
            cache.pop(cur[pos], None)
            cur[pos] = next_id
            cache[next_id] = None
            next_id += 1
            if len(cache) > capacity:
                cache.popitem(last=False)
        successes[winner] += 1
        pending[winner] = -1
        for i in range(processes):
            first[i] = i == winner

    return clocks, successes, retries, retry_modified, retry_uncached
