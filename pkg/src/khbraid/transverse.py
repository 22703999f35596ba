"""The transverse cycle Psi^- and the trivial-braid certification pipeline.

``Psi^+`` and ``Psi^-`` are the all-``1`` and all-``x`` labellings of the
braid-like resolution. Every other resolution has a circle carrying two
basepoints, so ``x_1...x_n`` kills every generator except ``Psi^+``, which it
sends to ``Psi^-``. If ``Kh`` is free of rank one over ``A_n`` with generator
``[theta]``, then ``x_1...x_n theta = Psi^-`` on the nose and ``[Psi^-]`` is
nonzero. :func:`certify` recomputes each step instead of assuming it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .basepoints import ModuleStructure, chain_action, module_structure
from .braid import BraidWord, closure_permutation, mirror
from .cube import (DEFAULT_MAX_CROSSINGS, Bidegree, EnhancedState, KhComplex,
                   braid_like_vertex, build_complex)
from .errors import ConsistencyError
from .homology import HomologyTable, betti_table


class Verdict(str, enum.Enum):
    NOT_N_COMPONENT = "NOT_N_COMPONENT"
    MODULE_OBSTRUCTED = "MODULE_OBSTRUCTED"
    CONSISTENT_WITH_TRIVIAL = "CONSISTENT_WITH_TRIVIAL"


def psi_state(c: KhComplex, plus: bool = False) -> EnhancedState:
    v = braid_like_vertex(c.word)
    res = c.vertices[v].resolution
    labels = 0 if plus else (1 << res.n_circles) - 1
    bd, _ = c.locate(v, labels)
    return EnhancedState(v, labels, res.n_circles, bd)


def psi_vector(c: KhComplex, plus: bool = False) -> tuple[Bidegree, int]:
    s = psi_state(c, plus)
    return c.vector([(s.vertex, s.labels)])


def psi_class(w: BraidWord, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> EnhancedState:
    """``Psi^-`` as an enhanced state, after checking that it is a cycle."""
    c = build_complex(w, max_crossings)
    _check_psi_cycle(c)
    return psi_state(c)


def _check_psi_cycle(c: KhComplex) -> tuple[Bidegree, int]:
    bd, vec = psi_vector(c)
    if c.d(bd).apply(vec):
        raise ConsistencyError("Psi^- is not a cycle")
    if bd != (0, c.word.exponent_sum - c.word.n_strands):
        raise ConsistencyError(f"Psi^- sits at {bd}, expected (0, w - n)")
    return bd, vec


def _psi_nonzero(c: KhComplex, t: HomologyTable) -> bool:
    bd, vec = _check_psi_cycle(c)
    return not t.group(bd).is_boundary(vec)


def psi_is_nonzero(w: BraidWord, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> bool:
    c = build_complex(w, max_crossings)
    return _psi_nonzero(c, betti_table(c))


@dataclass
class SideReport:
    """The module and Psi stages run on one braid (the input or its mirror)."""

    word: BraidWord
    table: HomologyTable
    module: ModuleStructure
    psi_bidegree: Bidegree
    psi_nonzero: bool
    product_hits_psi: Optional[bool] = None


@dataclass
class TransverseReport:
    word: BraidWord
    component_ok: bool
    module_free: bool = False
    psi_nonzero: bool = False
    mirror_psi_nonzero: bool = False
    right_veering: bool = False
    left_veering: bool = False
    verdict: Verdict = Verdict.NOT_N_COMPONENT
    psi_bidegree: Bidegree = (0, 0)
    witness: Optional[tuple[Bidegree, int]] = None
    mirror_witness: Optional[tuple[Bidegree, int]] = None
    sides: list[SideReport] = field(default_factory=list)

    @property
    def table(self) -> Optional[HomologyTable]:
        return self.sides[0].table if self.sides else None


def _run_side(w: BraidWord, max_crossings: int) -> SideReport:
    c = build_complex(w, max_crossings)
    c.check_d_squared()
    t = betti_table(c)
    ms = module_structure(t, c)
    if not (ms.squares_vanish and ms.commute):
        raise ConsistencyError("basepoint actions violate x_i^2 = 0 or x_i x_j = x_j x_i")
    psi_bd, psi_vec = _check_psi_cycle(c)
    side = SideReport(w, t, ms, psi_bd, not t.group(psi_bd).is_boundary(psi_vec))
    if ms.free_rank_one:
        side.product_hits_psi = _product_hits_psi(c, t, ms, psi_bd, psi_vec)
    return side


def _product_hits_psi(c: KhComplex, t: HomologyTable, ms: ModuleStructure,
                      psi_bd: Bidegree, psi_vec: int) -> bool:
    """Check ``[x_1...x_n theta] = [Psi^-]`` for the witness cycle ``theta``."""
    bd, k = ms.witness
    theta = t.group(bd).cycle_reps[k]
    vec = theta
    h, q = bd
    for i in range(c.diagram.n_strands, 0, -1):
        m = chain_action(c, i).get((h, q))
        vec = m.apply(vec) if m is not None else 0
        q -= 2
    if (h, q) != psi_bd:
        return False
    return t.group(psi_bd).is_boundary(vec ^ psi_vec) and psi_vec != 0


def certify(w: BraidWord, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> TransverseReport:
    """Run the trivial-braid certification pipeline on ``w``.

    Raises :class:`ConsistencyError` if the module stage passes while the
    ``Psi^-`` stage fails, since the argument rules that out.
    """
    report = TransverseReport(
        word=w,
        component_ok=closure_permutation(w) == tuple(range(1, w.n_strands + 1)),
        psi_bidegree=(0, w.exponent_sum - w.n_strands),
    )
    if not report.component_ok:
        report.verdict = Verdict.NOT_N_COMPONENT
        return report

    side = _run_side(w, max_crossings)
    report.sides.append(side)
    report.module_free = side.module.free_rank_one
    report.psi_nonzero = side.psi_nonzero
    report.witness = side.module.witness
    if not report.module_free:
        report.verdict = Verdict.MODULE_OBSTRUCTED
        return report
    _require_psi(side, "sigma")
    report.right_veering = True

    mside = _run_side(mirror(w), max_crossings)
    report.sides.append(mside)
    report.mirror_psi_nonzero = mside.psi_nonzero
    report.mirror_witness = mside.module.witness
    if not mside.module.free_rank_one:
        report.verdict = Verdict.MODULE_OBSTRUCTED
        return report
    _require_psi(mside, "mirror")
    report.left_veering = True
    report.verdict = Verdict.CONSISTENT_WITH_TRIVIAL
    return report


def _require_psi(side: SideReport, name: str) -> None:
    if not side.product_hits_psi:
        raise ConsistencyError(f"{name}: x_1...x_n theta is not homologous to Psi^-")
    if not side.psi_nonzero:
        raise ConsistencyError(f"{name}: module is free of rank one but [Psi^-] = 0")


def admissible_component_counts(n: int) -> set[int]:
    """Component counts ``l`` with ``l <= n + 1`` and ``l = n + 1 (mod 2)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return set(range(1 if n % 2 == 0 else 2, n + 2, 2))


def fiber_genus(n: int, components: int) -> Optional[int]:
    """Genus ``g >= 0`` with ``1 - n = 2 - 2g - components``, if one exists."""
    twice_g = 1 + n - components
    if twice_g < 0 or twice_g % 2:
        return None
    return twice_g // 2


def euler_component_check(n: int, components: int) -> bool:
    if n < 1 or components < 1:
        raise ValueError("n and components must be >= 1")
    return fiber_genus(n, components) is not None


def max_fibered_euler_char(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    return 1 - n
