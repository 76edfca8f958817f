# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of _kernels_py.  Same algorithms, same exact arithmetic
(Python arbitrary-precision ints), with the interpreter overhead of the
inner loops removed.  The arithmetic itself stays big-int bound, so the
speedup is real but bounded; see benchmarks/bench_kernels.py.  Keep the
two modules in sync; tests compare them."""

from math import gcd


def weighted_dot_int(u, v, w):
    cdef Py_ssize_t i, n = len(u)
    total = 0
    for i in range(n):
        ui = u[i]
        vi = v[i]
        if ui and vi:
            total += w[i] * ui * vi
    return total


def row_echelon_int(rows):
    cdef Py_ssize_t nr = len(rows)
    cdef Py_ssize_t nc = len(rows[0]) if nr else 0
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list m = [list(row) for row in rows]
    cdef list row_r, row_i
    m_rows = m
    piv_cols = []
    prev = 1
    for c in range(nc):
        p = -1
        for i in range(r, nr):
            if m_rows[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            m_rows[r], m_rows[p] = m_rows[p], m_rows[r]
        row_r = m_rows[r]
        pv = row_r[c]
        for i in range(r + 1, nr):
            row_i = m_rows[i]
            fi = row_i[c]
            if fi:
                for j in range(c, nc):
                    row_i[j] = (pv * row_i[j] - fi * row_r[j]) // prev
            else:
                for j in range(c, nc):
                    x = row_i[j]
                    if x:
                        row_i[j] = pv * x // prev
        prev = pv
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    return m, piv_cols


cdef list _strip_gcd(list v):
    cdef Py_ssize_t i, n = len(v)
    g = 0
    for i in range(n):
        x = v[i]
        if x:
            g = gcd(g, x)
            if g == 1:
                return v
    if g > 1:
        return [x // g for x in v]
    return v


def orthogonalize_int(vecs, weights):
    cdef Py_ssize_t i, k, n
    cdef list basis = [], norms = [], w, b
    for v in vecs:
        w = list(v)
        n = len(w)
        for k in range(len(basis)):
            b = basis[k]
            num = weighted_dot_int(w, b, weights)
            if num:
                nb = norms[k]
                w = _strip_gcd([nb * w[i] - num * b[i] for i in range(n)])
        if any(w):
            basis.append(w)
            norms.append(weighted_dot_int(w, w, weights))
    return basis, norms
