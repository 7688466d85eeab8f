"""Grid oracle for optimisation over the far-feasible set.

Test-only: enumerates every point of the simplex with coordinates in
``{0, 1/res, ..., 1}`` and maximises a linear objective over those at L1
distance at least ``2 delta`` from ``y``. Feasibility is decided in exact
integer arithmetic; only the objective is evaluated in floating point.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm

import numpy as np


@lru_cache(maxsize=None)
def simplex_grid_int(n: int, res: int) -> np.ndarray:
    """Numerators of all ``res``-grid points on the ``n``-simplex, shape ``(k, n)``."""
    rows = []
    for bars in combinations(range(res + n - 1), n - 1):
        prev, pt = -1, []
        for b in bars:
            pt.append(b - prev - 1)
            prev = b
        pt.append(res + n - 2 - prev)
        rows.append(pt)
    return np.asarray(rows, dtype=np.int64)


def simplex_grid(n: int, res: int) -> np.ndarray:
    return simplex_grid_int(n, res) / res


def grid_max(c, y, delta, res: int = 200):
    """Best grid value and witness, or ``(None, None)`` if no grid point is feasible."""
    y = [Fraction(v) for v in y]
    delta = Fraction(delta)
    q = lcm(*(v.denominator for v in y), delta.denominator)
    Xi = simplex_grid_int(len(y), res)
    # distances scaled by res * q
    yi = np.asarray([int(v * q) * res for v in y], dtype=np.int64)
    dist = np.abs(Xi * q - yi).sum(axis=1)
    mask = dist >= int(2 * delta * q) * res
    if not mask.any():
        return None, None
    X = Xi[mask] / res
    vals = X @ np.asarray([float(v) for v in c])
    k = int(np.argmax(vals))
    return float(vals[k]), X[k]
