# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled kernels; same signatures and results as ``_kernels_py``.

Arithmetic is 64-bit. Callers in ``kernels.py`` only route work here when the
inputs are small enough that no intermediate can overflow.
"""

from libc.stdlib cimport malloc, free


def q3_violation(const long long[:] flat, Py_ssize_t n):
    cdef Py_ssize_t i, j, k, ij
    for i in range(n):
        for j in range(n):
            ij = flat[i * n + j]
            for k in range(n):
                if flat[ij * n + k] != flat[flat[i * n + k] * n + flat[j * n + k]]:
                    return (i, j, k)
    return None


def dense_mul(const long long[:] flat, Py_ssize_t n, u, v):
    cdef long long *a = <long long *> malloc(n * sizeof(long long))
    cdef long long *b = <long long *> malloc(n * sizeof(long long))
    cdef long long *out = <long long *> malloc(n * sizeof(long long))
    cdef Py_ssize_t i, j
    try:
        for i in range(n):
            a[i] = u[i]
            b[i] = v[i]
            out[i] = 0
        for i in range(n):
            if a[i]:
                for j in range(n):
                    if b[j]:
                        out[flat[i * n + j]] += a[i] * b[j]
        return [out[i] for i in range(n)]
    finally:
        free(a)
        free(b)
        free(out)


cdef bint _idem(const long long[:] flat, Py_ssize_t n, long long *z,
                long long *sq, long long m):
    cdef Py_ssize_t i, j
    cdef long long d
    for i in range(n):
        sq[i] = 0
    for i in range(n):
        if z[i]:
            for j in range(n):
                if z[j]:
                    sq[flat[i * n + j]] += z[i] * z[j]
    for i in range(n):
        d = sq[i] - z[i]
        if m:
            if d % m != 0:
                return False
        elif d != 0:
            return False
    return True


cdef list _scan(const long long[:] flat, Py_ssize_t n, long long lo, long long hi,
                long long m, bint prune):
    cdef long long *z = <long long *> malloc(n * sizeof(long long))
    cdef long long *sq = <long long *> malloc(n * sizeof(long long))
    cdef Py_ssize_t k, head = n - 1 if prune else n
    cdef long long s, last, aug
    found = []
    try:
        for k in range(n):
            z[k] = lo
        while True:
            if prune:
                s = 0
                for k in range(head):
                    s += z[k]
                for aug in range(2):
                    last = aug - s
                    if m:
                        last = last % m
                        if last < 0:
                            last += m
                    elif last < lo or last > hi:
                        continue
                    z[n - 1] = last
                    if _idem(flat, n, z, sq, m):
                        found.append(tuple([z[k] for k in range(n)]))
            else:
                if _idem(flat, n, z, sq, m):
                    found.append(tuple([z[k] for k in range(n)]))
            k = head - 1
            while k >= 0 and z[k] == hi:
                z[k] = lo
                k -= 1
            if k < 0:
                break
            z[k] += 1
    finally:
        free(z)
        free(sq)
    return found


def box_idempotents(const long long[:] flat, Py_ssize_t n, long long bound, bint prune):
    if n == 0:
        return []
    found = _scan(flat, n, -bound, bound, 0, prune)
    found.sort()
    return found


def mod_idempotents(const long long[:] flat, Py_ssize_t n, long long m, bint prune):
    if n == 0:
        return []
    return sorted(set(_scan(flat, n, 0, m - 1, m, prune)))
