"""Pure-Python integer kernels for support enumeration.

This module mirrors ``_kernels.pyx`` line for line and is used whenever the
compiled extension is unavailable (or ``FARNASH_PURE_PYTHON=1`` is set).
All arithmetic is on Python integers; payoff matrices are passed in already
scaled to a common integer denominator.
"""

from math import gcd


def _reduce_row(row):
    g = 0
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                return row
    if g > 1:
        return [a // g for a in row]
    return row


def solve_indifference(M, weights, equations):
    """Solve for weights making every equation index pay the same value.

    Unknowns are ``w[a]`` for ``a`` in ``weights`` plus a value ``v``::

        sum_a w[a] * M[weights[a]][j] - v = 0   for j in equations
        sum_a w[a] = 1

    Returns ``(nums, v_num, den, degenerate)`` with ``w[a] = nums[a] / den``
    and ``v = v_num / den``, or ``None`` when the system is inconsistent or
    the basic solution has a negative weight. Free variables are set to zero;
    ``degenerate`` is true when any variable was free.
    """
    k = len(weights)
    width = k + 2
    rows = []
    for j in equations:
        row = [M[i][j] for i in weights]
        row.append(-1)
        row.append(0)
        rows.append(row)
    last = [1] * k
    last.append(0)
    last.append(1)
    rows.append(last)

    m = len(rows)
    r = 0
    pivcols = []
    for col in range(k + 1):
        p = r
        while p < m and rows[p][col] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        if prow[col] < 0:
            prow = [-a for a in prow]
            rows[r] = prow
        piv = prow[col]
        for q in range(m):
            if q == r:
                continue
            qrow = rows[q]
            f = qrow[col]
            if f == 0:
                continue
            rows[q] = _reduce_row([piv * qrow[c] - f * prow[c] for c in range(width)])
        rows[r] = _reduce_row(prow)
        pivcols.append(col)
        r += 1
        if r == m:
            break

    for q in range(r, m):
        if rows[q][width - 1] != 0:
            return None

    den = 1
    for t in range(r):
        p = rows[t][pivcols[t]]
        den = den * p // gcd(den, p)

    sol = [0] * (k + 1)
    for t in range(r):
        row = rows[t]
        sol[pivcols[t]] = row[width - 1] * (den // row[pivcols[t]])

    for a in range(k):
        if sol[a] < 0:
            return None
    return sol[:k], sol[k], den, r < k + 1


def payoff_numerators(M, nums, support):
    """Return ``[sum_a M[q][support[a]] * nums[a] for q in range(len(M))]``."""
    out = []
    for row in M:
        s = 0
        for a in range(len(support)):
            w = nums[a]
            if w:
                s += row[support[a]] * w
        out.append(s)
    return out
