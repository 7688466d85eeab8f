# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels for support enumeration.

Same algorithm and pivot order as ``_pykernels``; both backends must return
identical results for identical input.
"""

from math import gcd


cdef list _reduce_row(list row):
    cdef object g = 0
    cdef object a
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                return row
    if g > 1:
        return [a // g for a in row]
    return row


def solve_indifference(list M, weights, equations):
    cdef Py_ssize_t k = len(weights)
    cdef Py_ssize_t width = k + 2
    cdef Py_ssize_t m, r, p, q, col, c, t, a
    cdef list rows = []
    cdef list row, prow, qrow, last, pivcols, sol, Mi
    cdef object piv, f, den, pv
    cdef tuple w_idx = tuple(weights)

    for j in equations:
        row = [None] * width
        for a in range(k):
            row[a] = (<list>M[w_idx[a]])[j]
        row[k] = -1
        row[k + 1] = 0
        rows.append(row)
    last = [1] * width
    last[k] = 0
    rows.append(last)

    m = len(rows)
    r = 0
    pivcols = []
    for col in range(k + 1):
        p = r
        while p < m and (<list>rows[p])[col] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = <list>rows[r]
        if prow[col] < 0:
            prow = [-x for x in prow]
            rows[r] = prow
        piv = prow[col]
        for q in range(m):
            if q == r:
                continue
            qrow = <list>rows[q]
            f = qrow[col]
            if f == 0:
                continue
            row = [None] * width
            for c in range(width):
                row[c] = piv * qrow[c] - f * prow[c]
            rows[q] = _reduce_row(row)
        rows[r] = _reduce_row(prow)
        pivcols.append(col)
        r += 1
        if r == m:
            break

    for q in range(r, m):
        if (<list>rows[q])[width - 1] != 0:
            return None

    den = 1
    for t in range(r):
        pv = (<list>rows[t])[<Py_ssize_t>pivcols[t]]
        den = den * pv // gcd(den, pv)

    sol = [0] * (k + 1)
    for t in range(r):
        row = <list>rows[t]
        c = pivcols[t]
        sol[c] = row[width - 1] * (den // row[c])

    for a in range(k):
        if sol[a] < 0:
            return None
    return sol[:k], sol[k], den, r < k + 1


def payoff_numerators(list M, nums, support):
    cdef list out = []
    cdef list row
    cdef Py_ssize_t a, s = len(support)
    cdef object acc, w
    cdef tuple sup = tuple(support)
    cdef tuple ws = tuple(nums)
    for row in M:
        acc = 0
        for a in range(s):
            w = ws[a]
            if w:
                acc += row[<Py_ssize_t>sup[a]] * w
        out.append(acc)
    return out
