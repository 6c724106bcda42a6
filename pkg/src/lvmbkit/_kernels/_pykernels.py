"""Pure-Python integer kernels.

Reference implementation of the hot loops; ``_ckernels`` is a drop-in
compiled replacement with identical results.
"""


def int_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    r = 0
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
        piv = a[r][c]
        prow = a[r]
        for i in range(r + 1, m):
            row = a[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        r += 1
    return r


def int_det(rows):
    """Determinant of a square integer matrix (Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
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
        piv = a[k][k]
        prow = a[k]
        for i in range(k + 1, n):
            row = a[i]
            f = row[k]
            for j in range(k + 1, n):
                row[j] = (piv * row[j] - f * prow[j]) // prev
        prev = piv
    return sgn * a[n - 1][n - 1]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def int_hnf(rows):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U * rows``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)`` and zero rows last.
    """
    h = [list(r) for r in rows]
    m = len(h)
    n = len(h[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
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
            ag, bg = a // g, b // g
            hr, hi = h[r], h[i]
            for j in range(c, n):
                s, t = hr[j], hi[j]
                hr[j] = x * s + y * t
                hi[j] = -bg * s + ag * t
            ur, ui = u[r], u[i]
            for j in range(m):
                s, t = ur[j], ui[j]
                ur[j] = x * s + y * t
                ui[j] = -bg * s + ag * t
        piv = h[r][c]
        if piv == 0:
            continue
        if piv < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
            piv = -piv
        for i in range(r):
            q = h[i][c] // piv
            if q:
                hi, hr = h[i], h[r]
                for j in range(c, n):
                    hi[j] -= q * hr[j]
                ui, ur = u[i], u[r]
                for j in range(m):
                    ui[j] -= q * ur[j]
        r += 1
    return h, u
