# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled kernel for the private-cache simulator; see ``_pysim``."""
from libc.stdint cimport int64_t
from libcpp.list cimport list as clist
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref


cdef cppclass LRU:
    clist[int64_t] order          # front = most recent
    unordered_map[int64_t, clist[int64_t].iterator] where
    size_t capacity

    bint touch(int64_t nid):
        # True on hit; inserts on miss and evicts past capacity
        cdef unordered_map[int64_t, clist[int64_t].iterator].iterator it = this.where.find(nid)
        if it != this.where.end():
            this.order.splice(this.order.begin(), this.order, deref(it).second)
            return True
        this.order.push_front(nid)
        this.where[nid] = this.order.begin()
        if this.where.size() > this.capacity:
            this.where.erase(this.order.back())
            this.order.pop_back()
        return False

    void drop(int64_t nid):
        cdef unordered_map[int64_t, clist[int64_t].iterator].iterator it = this.where.find(nid)
        if it != this.where.end():
            this.order.erase(deref(it).second)
            this.where.erase(it)


def run_phase(keys, int levels, int processes, Py_ssize_t capacity, double miss_cost, Py_ssize_t ops):
    cdef vector[int64_t] key_buf = keys
    cdef vector[int64_t] cur = vector[int64_t](1 << levels)
    cdef int64_t next_id = 1 << levels
    cdef int64_t fresh_lo = next_id
    cdef vector[LRU] caches = vector[LRU](processes)
    cdef vector[double] clocks = vector[double](processes, 0.0)
    cdef vector[int64_t] successes = vector[int64_t](processes, 0)
    cdef vector[int64_t] pending = vector[int64_t](processes, -1)
    cdef vector[bint] first = vector[bint](processes, True)
    cdef Py_ssize_t next_key = 0, r
    cdef int64_t retries = 0, retry_modified = 0, retry_uncached = 0
    cdef int64_t key, nid, pos, uncached, modified
    cdef double cost
    cdef int i, l, winner

    if <Py_ssize_t>key_buf.size() < ops + processes - 1:
        raise ValueError("not enough keys for the requested operation count")
    for i in range(1 << levels):
        cur[i] = i
    for i in range(processes):
        caches[i].capacity = capacity

    for r in range(ops):
        for i in range(processes):
            if pending[i] < 0:
                pending[i] = key_buf[next_key]
                next_key += 1
                first[i] = True
        for i in range(processes):
            key = pending[i]
            cost = 1.0
            uncached = 0
            modified = 0
            for l in range(levels):
                nid = cur[(1 << l) + (key >> (levels - l))]
                if caches[i].touch(nid):
                    cost += 1.0
                else:
                    cost += miss_cost
                    uncached += 1
                if nid >= fresh_lo:
                    modified += 1
            clocks[i] += cost
            if not first[i]:
                retries += 1
                retry_modified += modified
                retry_uncached += uncached

        winner = r % processes
        key = pending[winner]
        fresh_lo = next_id
        for l in range(levels):
            pos = (1 << l) + (key >> (levels - l))
            caches[winner].drop(cur[pos])
            cur[pos] = next_id
            caches[winner].touch(next_id)
            next_id += 1
        successes[winner] += 1
        pending[winner] = -1
        for i in range(processes):
            first[i] = i == winner

    return list(clocks), list(successes), retries, retry_modified, retry_uncached
