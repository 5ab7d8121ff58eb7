# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for dense polynomial arithmetic over GF(p).

Same contract as _poly_py: coefficient lists of ints in [0, p), no trailing
zeros.  p < 2^31, so products fit comfortably in 64 bits.
"""

from libc.stdlib cimport free, malloc

BACKEND = "cython"


cdef long long* _to_c(list a) except NULL:
    cdef Py_ssize_t n = len(a)
    cdef long long* buf = <long long*> malloc((n if n else 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = a[i]
    return buf


cdef list _from_c(long long* buf, Py_ssize_t n):
    while n > 0 and buf[n - 1] == 0:
        n -= 1
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return out


def poly_trim(list a):
    while a and a[len(a) - 1] == 0:
        a.pop()
    return a


def poly_add(list a, list b, long long p):
    if len(a) < len(b):
        a, b = b, a
    cdef long long* ca = _to_c(a)
    cdef Py_ssize_t i, na = len(a), nb = len(b)
    for i in range(nb):
        ca[i] = (ca[i] + <long long> b[i]) % p
    out = _from_c(ca, na)
    free(ca)
    return out


def poly_sub(list a, list b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), n = na if na > nb else nb, i
    cdef long long* cc = <long long*> malloc((n if n else 1) * sizeof(long long))
    if cc == NULL:
        raise MemoryError()
    for i in range(n):
        cc[i] = 0
    for i in range(na):
        cc[i] = <long long> a[i]
    for i in range(nb):
        cc[i] = (cc[i] - <long long> b[i]) % p
        if cc[i] < 0:
            cc[i] += p
    out = _from_c(cc, n)
    free(cc)
    return out


def poly_neg(list a, long long p):
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    cdef long long c
    for i in range(n):
        c = a[i]
        out[i] = 0 if c == 0 else p - c
    return out


def poly_scale(list a, long long s, long long p):
    s %= p
    if s < 0:
        s += p
    if s == 0:
        return []
    cdef Py_ssize_t i, n = len(a)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = (<long long> a[i] * s) % p
    return out


def poly_mul(list a, list b, long long p):
    if not a or not b:
        return []
    cdef Py_ssize_t na = len(a), nb = len(b), n = na + nb - 1, i, j
    cdef long long* ca = _to_c(a)
    cdef long long* cb = _to_c(b)
    cdef long long* cc = <long long*> malloc(n * sizeof(long long))
    if cc == NULL:
        free(ca)
        free(cb)
        raise MemoryError()
    for i in range(n):
        cc[i] = 0
    cdef long long ai
    for i in range(na):
        ai = ca[i]
        if ai == 0:
            continue
        for j in range(nb):
            cc[i + j] = (cc[i + j] + ai * cb[j]) % p
    out = _from_c(cc, n)
    free(ca)
    free(cb)
    free(cc)
    return out


def poly_shift(list a, Py_ssize_t n):
    if not a:
        return []
    return [0] * n + list(a)


def poly_divmod(list a, list b, long long p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef Py_ssize_t na = len(a), nb = len(b), db = nb - 1, i, j
    cdef long long lb = b[nb - 1]
    if na - 1 < db:
        return [], poly_trim(list(a))
    cdef long long inv_lb = _pow_mod(lb, p - 2, p)
    cdef long long* cr = _to_c(a)
    cdef long long* cb = _to_c(b)
    cdef long long* cq = <long long*> malloc((na - db) * sizeof(long long))
    if cq == NULL:
        free(cr)
        free(cb)
        raise MemoryError()
    for i in range(na - db):
        cq[i] = 0
    cdef long long c, f, t
    for i in range(na - 1, db - 1, -1):
        c = cr[i]
        if c == 0:
            continue
        f = (c * inv_lb) % p
        cq[i - db] = f
        for j in range(db + 1):
            t = (cr[i - db + j] - f * cb[j]) % p
            if t < 0:
                t += p
            cr[i - db + j] = t
    q = _from_c(cq, na - db)
    r = _from_c(cr, nb - 1 if nb - 1 < na else na)
    free(cr)
    free(cb)
    free(cq)
    return q, r


cdef long long _pow_mod(long long base, long long e, long long p):
    cdef long long acc = 1
    base %= p
    while e > 0:
        if e & 1:
            acc = (acc * base) % p
        base = (base * base) % p
        e >>= 1
    return acc


def poly_gcd(list a, list b, long long p):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a and a[len(a) - 1] != 1:
        a = poly_scale(a, _pow_mod(a[len(a) - 1], p - 2, p), p)
    return a


def poly_eval(list a, long long x, long long p):
    cdef long long y = 0
    cdef Py_ssize_t i
    for i in range(len(a) - 1, -1, -1):
        y = (y * x + <long long> a[i]) % p
    return y
