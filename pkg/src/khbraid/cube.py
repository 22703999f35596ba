"""The cube of resolutions and the Khovanov chain complex over GF(2).

Smoothing convention: at a positive crossing the 0-smoothing is the
braid-like one (it joins each incoming arc to the outgoing arc at the same
position); at a negative crossing the 1-smoothing is. The other smoothing
joins the two incoming arcs to each other and the two outgoing arcs to each
other.

Encodings:

* A vertex is an ``int`` read as the bit string ``b_1 b_2 ... b_c``, i.e.
  crossing ``k`` (1-indexed) is bit ``c - k``. Integer order is then the
  lexicographic order of bit tuples.
* A labelling of a resolution with circles ``0 .. m-1`` is an ``int`` whose
  bit ``t`` is set when circle ``t`` carries ``x`` (clear means ``1``).
* Bigradings follow ``i = r - n_minus`` and
  ``j = (#1 - #x) + r + n_plus - 2 n_minus`` with ``r`` the number of 1-bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .braid import BraidWord, ClosureDiagram, closure_diagram
from .errors import CapExceededError, ConsistencyError
from .f2 import F2Matrix

DEFAULT_MAX_CROSSINGS = 16

Bidegree = tuple[int, int]


@dataclass(frozen=True)
class Resolution:
    """A complete resolution: circles as sorted arc tuples, ordered by least arc."""

    vertex: int
    circles: tuple[tuple[int, ...], ...]
    arc_circle: tuple[int, ...]
    basepoint_location: tuple[int, ...]

    @property
    def n_circles(self) -> int:
        return len(self.circles)


@dataclass(frozen=True)
class EnhancedState:
    vertex: int
    labels: int
    n_circles: int
    grading: Bidegree

    def label_tuple(self) -> tuple[str, ...]:
        return tuple("x" if (self.labels >> t) & 1 else "1" for t in range(self.n_circles))


def vertex_bits(v: int, c: int) -> tuple[int, ...]:
    return tuple((v >> (c - 1 - k)) & 1 for k in range(c))


def vertex_from_bits(bits: tuple[int, ...] | list[int]) -> int:
    v = 0
    for b in bits:
        v = (v << 1) | (b & 1)
    return v


def _crossing_bit(c: int, k: int) -> int:
    """Mask of crossing ``k`` (0-indexed) in a vertex of a ``c``-crossing cube."""
    return 1 << (c - 1 - k)


def resolve(d: ClosureDiagram, v: int | tuple[int, ...]) -> Resolution:
    """Circles of the resolution at cube vertex ``v``."""
    c = d.n_crossings
    if isinstance(v, tuple):
        if len(v) != c:
            raise ValueError(f"vertex has length {len(v)}, diagram has {c} crossings")
        v = vertex_from_bits(v)
    elif v < 0 or v >> c:
        raise ValueError(f"vertex {v} does not fit {c} crossings")
    parent = list(range(d.n_arcs))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for top, bottom in d.closure_joins:
        union(top, bottom)
    for k, x in enumerate(d.crossings):
        one = (v >> (c - 1 - k)) & 1
        if (x.sign > 0) == (one == 0):
            union(x.in_left, x.out_left)
            union(x.in_right, x.out_right)
        else:
            union(x.in_left, x.in_right)
            union(x.out_left, x.out_right)
    roots = [find(a) for a in range(d.n_arcs)]
    # Roots are the least arc of each class, so first appearance order
    # sorts circles by their least arc.
    index: dict[int, int] = {}
    arc_circle = []
    for r in roots:
        if r not in index:
            index[r] = len(index)
        arc_circle.append(index[r])
    members: list[list[int]] = [[] for _ in index]
    for a, t in enumerate(arc_circle):
        members[t].append(a)
    return Resolution(
        vertex=v,
        circles=tuple(tuple(m) for m in members),
        arc_circle=tuple(arc_circle),
        basepoint_location=tuple(arc_circle[a] for a in d.basepoints),
    )


def braid_like_vertex(w: BraidWord) -> int:
    """Vertex with a 1-bit exactly at the negative letters."""
    return vertex_from_bits([1 if k < 0 else 0 for k in w.letters])


def gradings(s: EnhancedState | tuple[int, int, int], d: ClosureDiagram) -> Bidegree:
    """Bidegree of an enhanced state, given as a state or ``(vertex, labels, n_circles)``."""
    if isinstance(s, EnhancedState):
        vertex, labels, m = s.vertex, s.labels, s.n_circles
    else:
        vertex, labels, m = s
    r = bin(vertex).count("1")
    n_x = bin(labels).count("1")
    theta = m - 2 * n_x
    return r - d.n_minus, theta + r + d.n_plus - 2 * d.n_minus


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    out = np.zeros_like(a)
    while a.any():
        out += a & 1
        a >>= 1
    return out


@lru_cache(maxsize=None)
def _label_layout(m: int) -> tuple[np.ndarray, np.ndarray, tuple[np.ndarray, ...]]:
    """Ordering of the ``2**m`` labellings of ``m`` circles.

    Returns ``(pop, rank, groups)``: ``pop[L]`` is the number of ``x``
    labels, ``rank[L]`` the position of ``L`` among labellings with the same
    ``pop`` in lexicographic order of label tuples (``1 < x``, circle 0
    first), and ``groups[p]`` the labellings with ``pop == p`` in that order.
    """
    masks = np.arange(1 << m, dtype=np.int64)
    pop = _popcount(masks)
    # Lexicographic order of (l_0, l_1, ...) is integer order of the bit-reversed mask.
    rev = np.zeros_like(masks)
    for t in range(m):
        rev |= ((masks >> t) & 1) << (m - 1 - t)
    rank = np.empty_like(masks)
    groups = []
    for p in range(m + 1):
        members = masks[pop == p]
        members = members[np.argsort(rev[members], kind="stable")]
        rank[members] = np.arange(len(members))
        groups.append(members)
    for arr in (pop, rank, *groups):
        arr.setflags(write=False)
    return pop, rank, tuple(groups)


@dataclass(frozen=True)
class EdgeMap:
    """Per-labelling images of one cube edge ``v -> v | bit(k)``.

    ``first[L]`` and ``second[L]`` are target labellings, or ``-1`` for none.
    """

    source: int
    target: int
    crossing: int
    kind: str  # "merge" or "split"
    first: np.ndarray
    second: np.ndarray


def _edge_map(src: Resolution, dst: Resolution, d: ClosureDiagram, k: int) -> EdgeMap:
    x = d.crossings[k]
    touched_src = sorted({src.arc_circle[a] for a in x.arcs})
    touched_dst = sorted({dst.arc_circle[a] for a in x.arcs})
    m = src.n_circles
    masks = np.arange(1 << m, dtype=np.int64)
    base = np.zeros_like(masks)
    for t, arcs in enumerate(src.circles):
        if t in touched_src:
            continue
        base |= ((masks >> t) & 1) << dst.arc_circle[arcs[0]]
    none = np.full_like(masks, -1)
    if len(touched_src) == 2 and len(touched_dst) == 1:
        a, b = touched_src
        (t,) = touched_dst
        la, lb = (masks >> a) & 1, (masks >> b) & 1
        # m(1,1) = 1, m(1,x) = m(x,1) = x, m(x,x) = 0
        first = np.where((la & lb) == 1, -1, base | ((la | lb) << t))
        return EdgeMap(src.vertex, dst.vertex, k, "merge", first, none)
    if len(touched_src) == 1 and len(touched_dst) == 2:
        (a,) = touched_src
        t1, t2 = touched_dst
        la = (masks >> a) & 1
        # D(1) = 1 x + x 1, D(x) = x x
        first = np.where(la == 1, base | (1 << t1) | (1 << t2), base | (1 << t2))
        second = np.where(la == 1, -1, base | (1 << t1))
        return EdgeMap(src.vertex, dst.vertex, k, "split", first, second)
    raise ConsistencyError(
        f"edge at crossing {k + 1} changes {len(touched_src)} circles into {len(touched_dst)}"
    )


def edge_map(d: ClosureDiagram, state: EnhancedState, crossing: int) -> list[EnhancedState]:
    """Image of one enhanced state along the cube edge at ``crossing`` (1-indexed).

    Returns the states in the formal GF(2) sum (empty for zero).
    """
    c = d.n_crossings
    bit = _crossing_bit(c, crossing - 1)
    if state.vertex & bit:
        raise ValueError(f"crossing {crossing} is already 1-smoothed at this vertex")
    src = resolve(d, state.vertex)
    dst = resolve(d, state.vertex | bit)
    em = _edge_map(src, dst, d, crossing - 1)
    out = []
    for arr in (em.first, em.second):
        lab = int(arr[state.labels])
        if lab >= 0:
            out.append(EnhancedState(dst.vertex, lab, dst.n_circles,
                                     gradings((dst.vertex, lab, dst.n_circles), d)))
    return out


@dataclass(frozen=True)
class VertexData:
    resolution: Resolution
    i: int
    j_top: int  # quantum grading of the all-1 labelling
    offsets: tuple[int, ...]  # offset[p]: start of this vertex's pop-p block in its bidegree


class KhComplex:
    """The Khovanov complex of a closure diagram, split by bidegree.

    ``basis[(i, j)]`` lists generators ``(vertex, labels)`` in lexicographic
    order; ``differential[(i, j)]`` is the matrix of ``d`` from ``(i, j)`` to
    ``(i + 1, j)`` (absent when either side is empty).
    """

    def __init__(self, diagram: ClosureDiagram, vertices: dict[int, VertexData],
                 basis: dict[Bidegree, list[tuple[int, int]]],
                 differential: dict[Bidegree, F2Matrix]):
        self.diagram = diagram
        self.vertices = vertices
        self.basis = basis
        self.differential = differential

    @property
    def word(self) -> BraidWord:
        return self.diagram.word

    @property
    def bidegrees(self) -> list[Bidegree]:
        return sorted(self.basis)

    def dim(self, bd: Bidegree) -> int:
        return len(self.basis.get(bd, ()))

    @property
    def total_dim(self) -> int:
        return sum(len(b) for b in self.basis.values())

    def d(self, bd: Bidegree) -> F2Matrix:
        """Differential out of ``bd``; a zero matrix if one side is empty."""
        mat = self.differential.get(bd)
        if mat is None:
            i, j = bd
            return F2Matrix.zeros(self.dim((i + 1, j)), self.dim(bd))
        return mat

    def locate(self, vertex: int, labels: int) -> tuple[Bidegree, int]:
        """Bidegree and basis index of a generator."""
        vd = self.vertices[vertex]
        pop, rank, _ = _label_layout(vd.resolution.n_circles)
        p = int(pop[labels])
        return (vd.i, vd.j_top - 2 * p), vd.offsets[p] + int(rank[labels])

    def state(self, bd: Bidegree, index: int) -> EnhancedState:
        vertex, labels = self.basis[bd][index]
        return EnhancedState(vertex, labels, self.vertices[vertex].resolution.n_circles, bd)

    def vector(self, states: list[tuple[int, int]]) -> tuple[Bidegree, int]:
        """Pack a sum of generators ``(vertex, labels)`` of one bidegree."""
        bd = None
        v = 0
        for vertex, labels in states:
            b, idx = self.locate(vertex, labels)
            if bd is None:
                bd = b
            elif b != bd:
                raise ValueError("generators have different bidegrees")
            v ^= 1 << idx
        if bd is None:
            raise ValueError("empty sum has no bidegree")
        return bd, v

    def check_d_squared(self) -> None:
        for (i, j), mat in self.differential.items():
            nxt = self.differential.get((i + 1, j))
            if nxt is None:
                continue
            for k in range(mat.ncols):
                if nxt.apply_support(mat.support(k)):
                    raise ConsistencyError(f"d o d != 0 starting at bidegree {(i, j)}")


def count_generators(d: ClosureDiagram) -> int:
    """``sum_v 2**circles(v)`` over the cube, without building anything else."""
    return sum(1 << resolve(d, v).n_circles for v in range(1 << d.n_crossings))


def _check_cap(d: ClosureDiagram, max_crossings: int) -> None:
    if d.n_crossings > max_crossings:
        raise CapExceededError(
            f"{d.n_crossings} crossings exceeds the cap of {max_crossings}; "
            "raise max_crossings to proceed"
        )


def build_complex(d: ClosureDiagram | BraidWord,
                  max_crossings: int = DEFAULT_MAX_CROSSINGS) -> KhComplex:
    if isinstance(d, BraidWord):
        d = closure_diagram(d)
    _check_cap(d, max_crossings)
    c = d.n_crossings
    resolutions = [resolve(d, v) for v in range(1 << c)]

    # Lay out bases: vertices in increasing order, each vertex contributing a
    # contiguous block per x-count, so every basis is lexicographically sorted.
    sizes: dict[Bidegree, int] = {}
    vertices: dict[int, VertexData] = {}
    basis: dict[Bidegree, list[tuple[int, int]]] = {}
    for v, res in enumerate(resolutions):
        m = res.n_circles
        _, _, groups = _label_layout(m)
        i, j_top = gradings((v, 0, m), d)
        offsets = []
        for p, members in enumerate(groups):
            bd = (i, j_top - 2 * p)
            offsets.append(sizes.get(bd, 0))
            sizes[bd] = offsets[-1] + len(members)
            basis.setdefault(bd, []).extend((v, int(L)) for L in members)
        vertices[v] = VertexData(res, i, j_top, tuple(offsets))

    support: dict[Bidegree, list[list[int]]] = {bd: [[] for _ in range(n)] for bd, n in sizes.items()}
    for v, res in enumerate(resolutions):
        src = vertices[v]
        pop_s, rank_s, _ = _label_layout(res.n_circles)
        src_index = (np.asarray(src.offsets, dtype=np.int64)[pop_s] + rank_s).tolist()
        src_bd = [(src.i, src.j_top - 2 * int(p)) for p in range(res.n_circles + 1)]
        pop_list = pop_s.tolist()
        for k in range(c):
            bit = _crossing_bit(c, k)
            if v & bit:
                continue
            dst = vertices[v | bit]
            em = _edge_map(res, dst.resolution, d, k)
            pop_t, rank_t, _ = _label_layout(dst.resolution.n_circles)
            dst_index = np.asarray(dst.offsets, dtype=np.int64)[pop_t] + rank_t
            for arr in (em.first, em.second):
                valid = arr >= 0
                if not valid.any():
                    continue
                sources = np.nonzero(valid)[0]
                targets = dst_index[arr[valid]]
                tgt_pop = pop_t[arr[valid]]
                for L, tgt, tp in zip(sources.tolist(), targets.tolist(), tgt_pop.tolist()):
                    bd = src_bd[pop_list[L]]
                    if dst.j_top - 2 * tp != bd[1]:
                        raise ConsistencyError("differential does not preserve quantum grading")
                    support[bd][src_index[L]].append(tgt)

    differential = {}
    for (i, j), columns in support.items():
        target_dim = sizes.get((i + 1, j), 0)
        if target_dim == 0:
            continue
        differential[(i, j)] = F2Matrix.from_support(target_dim, columns)
    return KhComplex(d, vertices, basis, differential)
