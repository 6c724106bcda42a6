# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels: int64 fast path with overflow detection,
arbitrary-precision object path otherwise.  Results match ``_pykernels``."""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int lvmb_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int lvmb_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int lvmb_mul_ovf(long long a, long long b, long long *r) nogil
    int lvmb_sub_ovf(long long a, long long b, long long *r) nogil

DEF SMALL = 4611686018427387904  # 2**62


cdef long long* _load(rows, Py_ssize_t m, Py_ssize_t n):
    cdef long long* buf = <long long*> malloc(max(m * n, 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        row = rows[i]
        for j in range(n):
            x = row[j]
            if x >= SMALL or x <= -SMALL:
                free(buf)
                return NULL
            buf[i * n + j] = x
    return buf


cdef int _rank64(long long* a, Py_ssize_t m, Py_ssize_t n) nogil:
    """Bareiss rank; returns -1 on overflow."""
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef long long prev = 1, piv, f, t1, t2, tmp
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and a[p * n + c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            for j in range(n):
                tmp = a[p * n + j]
                a[p * n + j] = a[r * n + j]
                a[r * n + j] = tmp
        piv = a[r * n + c]
        for i in range(r + 1, m):
            f = a[i * n + c]
            for j in range(c + 1, n):
                if lvmb_mul_ovf(piv, a[i * n + j], &t1):
                    return -1
                if lvmb_mul_ovf(f, a[r * n + j], &t2):
                    return -1
                if lvmb_sub_ovf(t1, t2, &t1):
                    return -1
                a[i * n + j] = t1 / prev
            a[i * n + c] = 0
        prev = piv
        r += 1
    return <int> r


cdef object _rank_obj(rows):
    cdef list a = [list(row_) for row_ in rows]
    cdef Py_ssize_t m = len(a), n, r = 0, c, p, i, j
    if m == 0:
        return 0
    n = len(a[0])
    prev = 1
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and a[p][c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            a[p], a[r] = a[r], a[p]
        prow = a[r]
        piv = prow[c]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r


def int_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    cdef Py_ssize_t m = len(rows), n
    cdef long long* buf
    cdef int r
    if m == 0:
        return 0
    n = len(rows[0])
    buf = _load(rows, m, n)
    if buf != NULL:
        with nogil:
            r = _rank64(buf, m, n)
        free(buf)
        if r >= 0:
            return r
    return _rank_obj(rows)


cdef int _det64(long long* a, Py_ssize_t n, long long* out) nogil:
    """Bareiss determinant; returns 1 on overflow, 0 on success."""
    cdef Py_ssize_t k, p, i, j
    cdef long long prev = 1, piv, f, t1, t2, tmp
    cdef int sgn = 1
    for k in range(n - 1):
        if a[k * n + k] == 0:
            p = k + 1
            while p < n and a[p * n + k] == 0:
                p += 1
            if p == n:
                out[0] = 0
                return 0
            for j in range(n):
                tmp = a[p * n + j]
                a[p * n + j] = a[k * n + j]
                a[k * n + j] = tmp
            sgn = -sgn
        piv = a[k * n + k]
        for i in range(k + 1, n):
            f = a[i * n + k]
            for j in range(k + 1, n):
                if lvmb_mul_ovf(piv, a[i * n + j], &t1):
                    return 1
                if lvmb_mul_ovf(f, a[k * n + j], &t2):
                    return 1
                if lvmb_sub_ovf(t1, t2, &t1):
                    return 1
                a[i * n + j] = t1 / prev
        prev = piv
    out[0] = sgn * a[(n - 1) * n + (n - 1)]
    return 0


cdef object _det_obj(rows):
    cdef list a = [list(row_) for row_ in rows]
    cdef Py_ssize_t n = len(a), k, p, i, j
    sgn = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = k + 1
            while p < n and a[p][k] == 0:
                p += 1
            if p == n:
                return 0
            a[p], a[k] = a[k], a[p]
            sgn = -sgn
        prow = a[k]
        piv = prow[k]
        for i in range(k + 1, n):
            row = a[i]
            f = row[k]
            for j in range(k + 1, n):
                row[j] = (piv * row[j] - f * prow[j]) // prev
        prev = piv
    return sgn * a[n - 1][n - 1]


def int_det(rows):
    """Determinant of a square integer matrix (Bareiss)."""
    cdef Py_ssize_t n = len(rows)
    cdef long long* buf
    cdef long long out = 0
    cdef int status
    if n == 0:
        return 1
    buf = _load(rows, n, n)
    if buf != NULL:
        with nogil:
            status = _det64(buf, n, &out)
        free(buf)
        if status == 0:
            return out
    return _det_obj(rows)


cdef tuple _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def int_hnf(rows):
    """Row-style Hermite normal form ``(H, U)`` with ``H = U * rows``."""
    cdef list h = [list(row_) for row_ in rows]
    cdef Py_ssize_t m = len(h), n, r = 0, c, i, j
    cdef list u, hr, hi, ur, ui
    n = len(h[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = h[i][c]
            if b == 0:
                continue
            a = h[r][c]
            if a == 0:
                h[r], h[i] = h[i], h[r]
                u[r], u[i] = u[i], u[r]
                continue
            g, x, y = _xgcd(a, b)
            ag = a // g
            bg = b // g
            hr = h[r]
            hi = h[i]
            for j in range(c, n):
                s = hr[j]
                t = hi[j]
                hr[j] = x * s + y * t
                hi[j] = -bg * s + ag * t
            ur = u[r]
            ui = u[i]
            for j in range(m):
                s = ur[j]
                t = ui[j]
                ur[j] = x * s + y * t
                ui[j] = -bg * s + ag * t
        piv = h[r][c]
        if piv == 0:
            continue
        if piv < 0:
            h[r] = [-v for v in h[r]]
            u[r] = [-v for v in u[r]]
            piv = -piv
        for i in range(r):
            q = h[i][c] // piv
            if q:
                hi = h[i]
                hr = h[r]
                for j in range(c, n):
                    hi[j] -= q * hr[j]
                ui = u[i]
                ur = u[r]
                for j in range(m):
                    ui[j] -= q * ur[j]
        r += 1
    return h, u
