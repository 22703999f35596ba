"""Slow, independent recomputations used to cross-check the main pipeline.

Both oracles reuse the diagram and the cube but none of :mod:`khbraid.f2`.
"""

from __future__ import annotations

import numpy as np

from .braid import BraidWord, closure_diagram
from .cube import DEFAULT_MAX_CROSSINGS, _check_cap, build_complex, resolve
from .homology import HomologyTable, Laurent, laurent_add, laurent_mul, laurent_pow

DENSE_LIMIT = 4096


def kauffman_state_sum(w: BraidWord, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> Laurent:
    """Unnormalized Jones polynomial as a state sum over the cube.

    ``(-1)^n_- q^(n_+ - 2 n_-) sum_v (-1)^|v| q^|v| (q + 1/q)^circles(v)``
    """
    d = closure_diagram(w)
    _check_cap(d, max_crossings)
    c = d.n_crossings
    by_shape: dict[tuple[int, int], int] = {}
    for v in range(1 << c):
        key = (bin(v).count("1"), resolve(d, v).n_circles)
        by_shape[key] = by_shape.get(key, 0) + 1
    total: Laurent = {}
    circle = {1: 1, -1: 1}
    for (r, m), count in by_shape.items():
        term = laurent_mul({r: count * (-1) ** r}, laurent_pow(circle, m))
        total = laurent_add(total, term)
    return laurent_mul(total, {d.n_plus - 2 * d.n_minus: (-1) ** d.n_minus})


def _dense_rank(a: np.ndarray) -> int:
    a = (a % 2).astype(np.uint8)
    rows, cols = a.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, col])[0]
        if len(nz) == 0:
            continue
        p = r + nz[0]
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, col])[0]
        hit = hit[hit != r]
        a[hit] ^= a[r]
        r += 1
    return r


def dense_rank(entries) -> int:
    """Rank over GF(2) of a 0/1 array by plain row reduction."""
    a = np.asarray(entries)
    if a.size == 0:
        return 0
    return _dense_rank(a)


def dense_homology_oracle(w: BraidWord, max_generators: int = DENSE_LIMIT) -> HomologyTable:
    """Betti table by dense rank computations, ``dim C - rank d_out - rank d_in``."""
    c = build_complex(w, max_crossings=64)
    if c.total_dim > max_generators:
        raise ValueError(f"{c.total_dim} generators exceeds the dense limit {max_generators}")
    ranks = {bd: _dense_rank(np.array(m.to_dense(), dtype=np.uint8).reshape(m.nrows, m.ncols))
             for bd, m in c.differential.items()}
    dims = {}
    for (i, j) in c.bidegrees:
        d = c.dim((i, j)) - ranks.get((i, j), 0) - ranks.get((i - 1, j), 0)
        if d:
            dims[(i, j)] = d
    return HomologyTable(w, dims)
