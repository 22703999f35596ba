"""The basepoint action of ``A_n = F[x_1..x_n]/(x_i^2)`` on Khovanov homology.

Basepoint ``p_i`` lies on closure arc ``i - 1``. At the chain level ``x_i``
finds the circle through ``p_i`` and turns a ``1`` label there into ``x``;
a generator already labelled ``x`` on that circle goes to zero. The map keeps
``i`` and lowers ``j`` by 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cube import Bidegree, KhComplex, _label_layout
from .errors import ChainMapError, ConsistencyError
from .f2 import F2Matrix, induced_map
from .homology import HomologyTable

ChainAction = dict[Bidegree, F2Matrix]
HomologyAction = dict[Bidegree, F2Matrix]


def _check_index(c: KhComplex, i: int) -> None:
    n = c.diagram.n_strands
    if not 1 <= i <= n:
        raise IndexError(f"basepoint index {i} out of range 1..{n}")


def chain_action(c: KhComplex, i: int) -> ChainAction:
    """Matrices of ``x_i`` from ``(h, q)`` to ``(h, q - 2)``, one per source bidegree.

    Source bidegrees whose target is empty are omitted (the map is zero there).
    """
    _check_index(c, i)
    arc = c.diagram.basepoints[i - 1]
    cols = {bd: [()] * c.dim(bd) for bd in c.bidegrees if c.dim((bd[0], bd[1] - 2))}
    for v, vd in c.vertices.items():
        res = vd.resolution
        pop, rank, _ = _label_layout(res.n_circles)
        circle_bit = 1 << res.arc_circle[arc]
        masks = np.arange(1 << res.n_circles, dtype=np.int64)
        free = np.nonzero((masks & circle_bit) == 0)[0]
        offsets = np.asarray(vd.offsets, dtype=np.int64)
        src_idx = offsets[pop[free]] + rank[free]
        tgt = free | circle_bit
        tgt_idx = offsets[pop[tgt]] + rank[tgt]
        for L, s, t in zip(free.tolist(), src_idx.tolist(), tgt_idx.tolist()):
            bd = (vd.i, vd.j_top - 2 * int(pop[L]))
            cols[bd][s] = (t,)
    return {bd: F2Matrix.from_support(c.dim((bd[0], bd[1] - 2)), cl) for bd, cl in cols.items()}


def _action_at(action: ChainAction, c: KhComplex, bd: Bidegree) -> F2Matrix:
    m = action.get(bd)
    if m is None:
        return F2Matrix.zeros(c.dim((bd[0], bd[1] - 2)), c.dim(bd))
    return m


def check_commutes(c: KhComplex, action: ChainAction) -> None:
    """Raise unless ``x . d == d . x`` on every bidegree."""
    for bd in c.bidegrees:
        h, q = bd
        d_src = c.d(bd)
        d_tgt = c.d((h, q - 2))
        x_src = _action_at(action, c, bd)
        x_nxt = _action_at(action, c, (h + 1, q))
        for k in range(c.dim(bd)):
            if x_nxt.apply_support(d_src.support(k)) != d_tgt.apply_support(x_src.support(k)):
                raise ConsistencyError(f"basepoint action does not commute with d at {bd}")


def homology_action(t: HomologyTable, c: KhComplex, i: int,
                    action: ChainAction | None = None) -> HomologyAction:
    """Induced map ``X_i`` on homology, per source bidegree with nonzero homology."""
    if action is None:
        action = chain_action(c, i)
    check_commutes(c, action)
    out = {}
    for bd in sorted(t.dims):
        target_bd = (bd[0], bd[1] - 2)
        try:
            out[bd] = induced_map(_action_at(action, c, bd), t.group(bd), t.group(target_bd))
        except ChainMapError as exc:
            raise ConsistencyError(f"x_{i} at {bd}: {exc}") from exc
    return out


def compose_on(actions: list[HomologyAction], t: HomologyTable, bd: Bidegree) -> F2Matrix:
    """Matrix of ``X_{a_1} o ... o X_{a_k}`` starting at ``bd`` (last factor applied first)."""
    h, q = bd
    result = F2Matrix.identity(t.dim(bd))
    for step, act in enumerate(reversed(actions)):
        src = (h, q - 2 * step)
        m = act.get(src)
        if m is None:
            m = F2Matrix.zeros(t.dim((h, q - 2 * step - 2)), t.dim(src))
        result = m @ result
    return result


@dataclass
class ModuleStructure:
    n: int
    actions: list[HomologyAction]
    squares_vanish: bool
    commute: bool
    free_rank_one: bool = False
    witness: Optional[tuple[Bidegree, int]] = None  # (bidegree, index in cycle_reps)
    top_product: dict[Bidegree, F2Matrix] = field(default_factory=dict)


def _all_zero(ms: dict[Bidegree, F2Matrix]) -> bool:
    return all(m.is_zero() for m in ms.values())


def module_structure(t: HomologyTable, c: KhComplex) -> ModuleStructure:
    n = c.diagram.n_strands
    actions = [homology_action(t, c, i) for i in range(1, n + 1)]
    squares = all(_all_zero({bd: compose_on([a, a], t, bd) for bd in t.dims}) for a in actions)
    commute = True
    for a in range(n):
        for b in range(a + 1, n):
            for bd in t.dims:
                if compose_on([actions[a], actions[b]], t, bd) != compose_on([actions[b], actions[a]], t, bd):
                    commute = False
    ms = ModuleStructure(n, actions, squares, commute)
    ms.free_rank_one, ms.witness = is_free_rank_one(t, actions, c.word.exponent_sum)
    ms.top_product = {bd: compose_on(actions, t, bd) for bd in sorted(t.dims)}
    return ms


def is_free_rank_one(t: HomologyTable, actions: list[HomologyAction],
                     writhe: int) -> tuple[bool, Optional[tuple[Bidegree, int]]]:
    """Decide ``Kh = A_n`` as a module.

    True iff the total dimension is ``2**n`` and some homology basis element
    ``g`` has ``x_1...x_n g != 0``. Such a ``g`` generates a free submodule,
    so with the dimension match the module is free of rank one. The witness
    is searched first at ``(0, writhe + n)``, where the class of the
    all-``1`` braid-like state lives, then everywhere in sorted order.
    """
    n = len(actions)
    if t.total_dim != 2 ** n:
        return False, None
    top = (0, writhe + n)
    order = ([top] if top in t.dims else []) + [bd for bd in sorted(t.dims) if bd != top]
    for bd in order:
        prod = compose_on(actions, t, bd)
        for k, col in enumerate(prod.cols):
            if col:
                return True, (bd, k)
    return False, None
