# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sign kernels; behaviour identical to ``_kernels_py``."""

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _popcount(u64 x) nogil:
    return __builtin_popcountll(x)


cdef inline int _merge_sign(u64 a, u64 b, u64 odd) nogil:
    cdef u64 ao = a & odd
    cdef u64 bo = b & odd
    cdef int n = 0
    cdef int j
    while bo:
        j = __builtin_ctzll(bo)
        if j < 63:
            n += _popcount(ao >> (j + 1))
        bo &= bo - 1
    return -1 if (n & 1) else 1


def merge_sign(a, b, odd):
    return _merge_sign(<u64>a, <u64>b, <u64>odd)


def contract_sign(int i, mask, odd):
    cdef u64 m = (<u64>mask) & (<u64>odd) & (((<u64>1) << i) - 1)
    return -1 if (_popcount(m) & 1) else 1


def wedge_dicts(dict a, dict b, odd):
    cdef dict out = {}
    cdef u64 o = <u64>odd
    cdef u64 ma, mb
    cdef object ca, cb, c, prev, key
    for ka, ca in a.items():
        ma = <u64>ka
        for kb, cb in b.items():
            mb = <u64>kb
            if ma & mb:
                continue
            c = ca * cb
            if _merge_sign(ma, mb, o) < 0:
                c = -c
            key = ma | mb
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
    return {k: v for k, v in out.items() if v}


def sort_sign(seq, parity):
    cdef list items = list(seq)
    cdef Py_ssize_t n = len(items)
    cdef Py_ssize_t i, j
    cdef int sign = 1
    cdef object x
    cdef bint px
    for i in range(1, n):
        x = items[i]
        px = parity[x]
        j = i - 1
        while j >= 0 and items[j] > x:
            if px and parity[items[j]]:
                sign = -sign
            items[j + 1] = items[j]
            j -= 1
        items[j + 1] = x
    for i in range(1, n):
        if items[i] == items[i - 1] and parity[items[i]]:
            return tuple(items), 0
    return tuple(items), sign


def perm_sign(parities, perm):
    cdef Py_ssize_t n = len(perm)
    cdef Py_ssize_t i, j
    cdef long pi, pj
    cdef int s = 0
    for i in range(n):
        pi = perm[i]
        if not parities[pi]:
            continue
        for j in range(i + 1, n):
            pj = perm[j]
            if pj < pi and parities[pj]:
                s += 1
    return -1 if (s & 1) else 1
