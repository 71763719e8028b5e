"""Independent reference implementations used as test oracles.

These deliberately avoid sharing code or vectorization strategy with the
library: explicit loops, scalar accumulation, textbook formulas.
"""

import math

import numpy as np


def eq_capacity_reference(g, powers):
    """Literal per-drone MRC capacity: log2(1 + p_k |g_k|^4 /
    (sum_{j != k} p_j |g_k^H g_j|^2 + |g_k|^2))."""
    m, k = g.shape
    rates = []
    for idx in range(k):
        gk = g[:, idx]
        norm2 = sum(abs(gk[i]) ** 2 for i in range(m))
        interference = 0.0
        for j in range(k):
            if j == idx:
                continue
            inner = sum(gk[i].conjugate() * g[i, j] for i in range(m))
            interference += powers[j] * abs(inner) ** 2
        if norm2 == 0:
            rates.append(0.0)
        else:
            rates.append(math.log2(1.0 + powers[idx] * norm2**2 / (interference + norm2)))
    return np.array(rates)
