"""Betti tables of Khovanov homology with stored representatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .braid import BraidWord, component_count, mirror
from .cube import DEFAULT_MAX_CROSSINGS, Bidegree, KhComplex, build_complex
from .f2 import ColumnReduction, SubquotientBasis, _homology_from, reduce_columns

Laurent = dict[int, int]


def laurent_add(a: Mapping[int, int], b: Mapping[int, int]) -> Laurent:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def laurent_mul(a: Mapping[int, int], b: Mapping[int, int]) -> Laurent:
    out: Laurent = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def laurent_pow(a: Mapping[int, int], k: int) -> Laurent:
    out: Laurent = {0: 1}
    for _ in range(k):
        out = laurent_mul(out, a)
    return out


def format_laurent(p: Mapping[int, int], var: str = "q") -> str:
    """Human-readable form, highest degree last: ``q^-1 + q``."""
    if not p:
        return "0"
    parts = []
    for e in sorted(p):
        c = p[e]
        mono = "1" if e == 0 else (var if e == 1 else f"{var}^{e}")
        if abs(c) != 1 and e != 0:
            mono = f"{abs(c)}*{mono}"
        elif e == 0:
            mono = str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    head_sign, head = parts[0]
    text = ("-" if head_sign == "-" else "") + head
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


@dataclass
class HomologyTable:
    """Kh of a braid closure, bidegree by bidegree.

    ``groups`` covers every bidegree where the chain complex is nonzero,
    including those with zero homology; ``dims`` lists only nonzero ones.
    Tables produced by the dense oracle carry no ``groups``.
    """

    word: BraidWord
    dims: dict[Bidegree, int]
    groups: dict[Bidegree, SubquotientBasis] = field(default_factory=dict)

    @property
    def writhe(self) -> int:
        return self.word.exponent_sum

    @property
    def components(self) -> int:
        return component_count(self.word)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def rows(self) -> list[tuple[int, int, int]]:
        return [(i, j, self.dims[(i, j)]) for i, j in sorted(self.dims)]

    def dim(self, bd: Bidegree) -> int:
        return self.dims.get(bd, 0)

    def group(self, bd: Bidegree) -> SubquotientBasis:
        g = self.groups.get(bd)
        if g is None:
            return SubquotientBasis(0, [], [])
        return g


def betti_table(c: KhComplex) -> HomologyTable:
    # Increasing homological degree, so each reduction can clear the columns
    # that the previous one already identified as boundaries.
    reductions: dict[Bidegree, ColumnReduction] = {}
    for bd in sorted(c.differential):
        prev = reductions.get((bd[0] - 1, bd[1]))
        reductions[bd] = reduce_columns(c.differential[bd],
                                        clear=prev.pivots if prev is not None else ())
    groups = {}
    for bd in c.bidegrees:
        i, j = bd
        groups[bd] = _homology_from(c.dim(bd), reductions.get((i - 1, j)), reductions.get(bd))
    dims = {bd: g.dim for bd, g in groups.items() if g.dim}
    return HomologyTable(c.word, dims, groups)


def khovanov(w: BraidWord, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> HomologyTable:
    return betti_table(build_complex(w, max_crossings))


def graded_euler_characteristic(t: HomologyTable) -> Laurent:
    out: Laurent = {}
    for (i, j), dim in t.dims.items():
        out[j] = out.get(j, 0) + (-1) ** (i % 2) * dim
    return {e: c for e, c in out.items() if c}


def mirror_dims(dims: Mapping[Bidegree, int]) -> dict[Bidegree, int]:
    return {(-i, -j): d for (i, j), d in dims.items()}


def mirror_table_check(w: BraidWord, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> bool:
    """Kh of the mirror is Kh with both gradings negated (over a field)."""
    return mirror_dims(khovanov(w, max_crossings).dims) == khovanov(mirror(w), max_crossings).dims
