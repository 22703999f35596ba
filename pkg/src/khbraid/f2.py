"""Linear algebra over GF(2) on Python-int bitsets.

A vector of length ``d`` is an ``int`` whose bit ``k`` is coordinate ``k``.
Matrices keep their rows and/or columns in that packed form, so every row or
column operation is a single big-integer XOR.

Elimination is "pivot on the highest set bit": a list of vectors is reduced
against a dict ``pivot -> vector`` until each survivor has a pivot nobody
else owns. Because reduced vectors keep distinct pivots, any union of such
echelon families with disjoint pivot sets is again an echelon family, which is
what makes homology decompositions cheap (see :func:`homology`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ChainMapError


def _transpose(vectors: Sequence[int], length: int) -> list[int]:
    out = [0] * length
    for k, v in enumerate(vectors):
        bit = 1 << k
        while v:
            low = v & -v
            out[low.bit_length() - 1] |= bit
            v ^= low
    return out


def bits(v: int) -> list[int]:
    """Indices of the set bits of ``v`` in increasing order."""
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out


def to_bits(seq: Iterable[int]) -> int:
    v = 0
    for k, b in enumerate(seq):
        if b & 1:
            v |= 1 << k
    return v


def _odd_sorted(indices: Iterable[int]) -> list[int]:
    odd: set[int] = set()
    for r in indices:
        odd ^= {r}
    return sorted(odd)


def pack(indices: Iterable[int]) -> int:
    """Packed vector with ones at ``indices`` (each index toggles)."""
    v = 0
    for r in indices:
        v ^= 1 << r
    return v


class F2Matrix:
    """A ``rows x cols`` matrix over GF(2).

    Built from packed rows, packed columns, or column supports (sorted row
    indices of the nonzero entries of each column). Packed orientations are
    derived on first use and cached; sparse matrices built from supports
    only materialize packed columns transiently while being eliminated, see
    :meth:`iter_cols`. Instances are treated as immutable.
    """

    __slots__ = ("nrows", "ncols", "_rows", "_cols", "_support")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[int] | None = None,
                 *, cols: Sequence[int] | None = None,
                 support: Sequence[Sequence[int]] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.nrows = nrows
        self.ncols = ncols
        self._rows = None if rows is None else list(rows)
        self._cols = None if cols is None else list(cols)
        self._support = None if support is None else [tuple(s) for s in support]
        if self._rows is None and self._cols is None and self._support is None:
            self._rows = [0] * nrows
        if self._rows is not None:
            if len(self._rows) != nrows or any(r < 0 or r >> ncols for r in self._rows):
                raise ValueError("row data does not fit the matrix shape")
        if self._cols is not None:
            if len(self._cols) != ncols or any(c < 0 or c >> nrows for c in self._cols):
                raise ValueError("column data does not fit the matrix shape")
        if self._support is not None:
            if len(self._support) != ncols or any(
                s and (s[0] < 0 or s[-1] >= nrows) for s in self._support
            ):
                raise ValueError("column supports do not fit the matrix shape")

    @classmethod
    def from_columns(cls, nrows: int, cols: Sequence[int]) -> F2Matrix:
        return cls(nrows, len(cols), cols=cols)

    @classmethod
    def from_support(cls, nrows: int, support: Sequence[Sequence[int]]) -> F2Matrix:
        """Columns given as row indices; repeated indices cancel in pairs."""
        return cls(nrows, len(support), support=[_odd_sorted(s) for s in support])

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> F2Matrix:
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls(n, n, [1 << k for k in range(n)])

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[int]]) -> F2Matrix:
        rows = [to_bits(r) for r in entries]
        ncols = len(entries[0]) if entries else 0
        return cls(len(rows), ncols, rows)

    @property
    def rows(self) -> list[int]:
        if self._rows is None:
            self._rows = _transpose(list(self.iter_cols()), self.nrows)
        return self._rows

    @property
    def cols(self) -> list[int]:
        if self._cols is None:
            if self._support is not None:
                self._cols = [pack(s) for s in self._support]
            else:
                self._cols = _transpose(self._rows, self.ncols)
        return self._cols

    def iter_cols(self) -> Iterable[int]:
        """Packed columns, without caching them for support-backed matrices."""
        if self._cols is None and self._support is not None:
            return (pack(s) for s in self._support)
        return iter(self.cols)

    def support(self, k: int) -> tuple[int, ...]:
        """Row indices of the nonzero entries of column ``k``."""
        if self._support is not None:
            return self._support[k]
        return tuple(bits(self.cols[k]))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        if self._support is not None:
            return sum(len(s) for s in self._support)
        return sum(bin(c).count("1") for c in self.cols)

    def to_dense(self) -> list[list[int]]:
        return [[(r >> k) & 1 for k in range(self.ncols)] for r in self.rows]

    def transpose(self) -> F2Matrix:
        m = F2Matrix.__new__(F2Matrix)
        m.nrows, m.ncols = self.ncols, self.nrows
        m._rows, m._cols = self.cols, self._rows
        m._support = None
        return m

    def apply(self, v: int) -> int:
        """Matrix-vector product ``M v``."""
        if self._cols is None and self._support is not None:
            return pack(self.apply_support(bits(v)))
        cols = self.cols
        out = 0
        while v:
            low = v & -v
            out ^= cols[low.bit_length() - 1]
            v ^= low
        return out

    def apply_support(self, indices: Iterable[int]) -> set[int]:
        """Sparse product: the support of ``M`` applied to the indicated basis sum."""
        out: set[int] = set()
        for k in indices:
            out.symmetric_difference_update(self.support(k))
        return out

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return F2Matrix.from_columns(self.nrows, [self.apply(c) for c in other.iter_cols()])

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return F2Matrix(self.nrows, self.ncols, [a ^ b for a, b in zip(self.rows, other.rows)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.nrows, self.ncols, tuple(self.rows)))

    def is_zero(self) -> bool:
        if self._support is not None:
            return not any(self._support)
        source = self._rows if self._rows is not None else self._cols
        return not any(source)

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols})"


@dataclass
class ColumnReduction:
    """Result of reducing the columns of a matrix left to right.

    ``pivots`` maps pivot row to a reduced column; together they are an
    echelon basis of the image. ``zero_columns`` lists the columns that
    reduced to zero, and ``kernel[t]`` is the combination of source columns
    that vanishes for ``zero_columns[t]`` (its highest bit is that column's
    own index), or ``None`` for a column skipped by clearing.
    """

    pivots: dict[int, int]
    kernel: list[int | None]
    zero_columns: list[int]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def reduce_columns(m: F2Matrix, *, track_kernel: bool = True,
                   clear: Iterable[int] = ()) -> ColumnReduction:
    """Reduce ``m`` column by column, pivoting on the highest set bit.

    ``clear`` names columns known in advance to reduce to zero: the pivot
    rows of an already reduced incoming differential (standard clearing).
    They are skipped and reported as zero columns without a kernel vector.
    """
    skip = set(clear)
    pivots: dict[int, int] = {}
    combos: dict[int, int] = {}
    kernel: list[int | None] = []
    zero_columns: list[int] = []
    for k, col in enumerate(m.iter_cols()):
        if k in skip:
            zero_columns.append(k)
            kernel.append(None)
            continue
        combo = 1 << k
        while col:
            p = col.bit_length() - 1
            hit = pivots.get(p)
            if hit is None:
                break
            col ^= hit
            if track_kernel:
                combo ^= combos[p]
        if col:
            p = col.bit_length() - 1
            pivots[p] = col
            if track_kernel:
                combos[p] = combo
        else:
            zero_columns.append(k)
            kernel.append(combo if track_kernel else None)
    return ColumnReduction(pivots, kernel, zero_columns)


def rank(m: F2Matrix) -> int:
    # Reduce whichever orientation has fewer vectors.
    if m.nrows < m.ncols:
        m = m.transpose()
    return reduce_columns(m, track_kernel=False).rank


def kernel_basis(m: F2Matrix) -> list[int]:
    """Basis of ``{v : M v = 0}`` as packed vectors of length ``m.ncols``."""
    return [z for z in reduce_columns(m).kernel if z is not None]


def image_basis(m: F2Matrix) -> list[int]:
    """Echelon basis of the column space, ordered by pivot."""
    red = reduce_columns(m, track_kernel=False)
    return [red.pivots[p] for p in sorted(red.pivots)]


class Echelon:
    """Incrementally built echelon family that records how it was formed.

    Each stored vector carries a tag: the set (as a bitset) of input vectors
    whose sum it is. Reducing a vector returns the remainder and the tag of
    everything subtracted, which is a coordinate vector in the input basis.
    """

    def __init__(self, vectors: Iterable[int] = ()):
        self._pivots: dict[int, tuple[int, int]] = {}
        self.size = 0
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> tuple[int, int]:
        tag = 0
        pivots = self._pivots
        while v:
            hit = pivots.get(v.bit_length() - 1)
            if hit is None:
                break
            v ^= hit[0]
            tag ^= hit[1]
        return v, tag

    def add(self, v: int) -> bool:
        """Append ``v`` to the input list; return ``False`` if it was dependent."""
        tag = 1 << self.size
        self.size += 1
        rem, t = self.reduce(v)
        if rem:
            self._pivots[rem.bit_length() - 1] = (rem, tag ^ t)
            return True
        return False

    @property
    def rank(self) -> int:
        return len(self._pivots)


def membership(v: int, span: Sequence[int], dim: int | None = None) -> bool:
    """True iff ``v`` is in the GF(2) span of ``span``.

    When ``dim`` is given, every vector must fit in ``dim`` coordinates.
    """
    if dim is not None:
        for u in (v, *span):
            if u < 0 or u >> dim:
                raise ValueError(f"vector does not fit in dimension {dim}")
    if not v:
        return True
    rem, _ = Echelon(span).reduce(v)
    return rem == 0


@dataclass
class SubquotientBasis:
    """Homology at one spot of a complex, with explicit representatives.

    ``cycle_reps`` together with ``boundary_basis`` is a basis of the cycles.
    Both lists are echelon (distinct highest bits) and their pivots are
    disjoint, so :meth:`coordinates` needs no further elimination.
    """

    ambient_dim: int
    cycle_reps: list[int]
    boundary_basis: list[int]
    _lookup: dict[int, tuple[int, int]] | None = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return len(self.cycle_reps)

    def _table(self) -> dict[int, tuple[int, int]]:
        if self._lookup is None:
            table: dict[int, tuple[int, int]] = {}
            for k, z in enumerate(self.cycle_reps):
                table[z.bit_length() - 1] = (z, 1 << k)
            for b in self.boundary_basis:
                p = b.bit_length() - 1
                if p in table:
                    raise ValueError("cycle and boundary pivots collide")
                table[p] = (b, 0)
            self._lookup = table
        return self._lookup

    def coordinates(self, v: int) -> int | None:
        """Homology class of ``v`` in the ``cycle_reps`` basis.

        Returns ``None`` when ``v`` is not a cycle.
        """
        table = self._table()
        coords = 0
        while v:
            hit = table.get(v.bit_length() - 1)
            if hit is None:
                return None
            v ^= hit[0]
            coords ^= hit[1]
        return coords

    def is_boundary(self, v: int) -> bool:
        return self.coordinates(v) == 0


def _homology_from(ambient_dim: int, incoming: ColumnReduction | None,
                   outgoing: ColumnReduction | None) -> SubquotientBasis:
    boundary_pivots = incoming.pivots if incoming is not None else {}
    if outgoing is None:
        cycles: list[tuple[int, int | None]] = [(k, 1 << k) for k in range(ambient_dim)]
    else:
        cycles = list(zip(outgoing.zero_columns, outgoing.kernel))
    # Kernel vectors have pivots at the zero-column indices; the boundary
    # pivots are a subset of those, and the rest index homology classes.
    cycle_pivots = {k for k, _ in cycles}
    if not cycle_pivots.issuperset(boundary_pivots):
        raise ChainMapError("a boundary is not a cycle (composite differential is nonzero)")
    reps = []
    for k, z in cycles:
        if k in boundary_pivots:
            continue
        if z is None:
            raise ValueError(f"column {k} was cleared but is not a boundary pivot")
        reps.append(z)
    boundaries = [boundary_pivots[p] for p in sorted(boundary_pivots)]
    return SubquotientBasis(ambient_dim, reps, boundaries)


def homology(d_in: F2Matrix, d_out: F2Matrix) -> SubquotientBasis:
    """Homology of ``. --d_in--> C --d_out--> .`` at ``C``."""
    if d_in.nrows != d_out.ncols:
        raise ValueError(
            f"d_in lands in dimension {d_in.nrows} but d_out starts at {d_out.ncols}"
        )
    for c in d_in.iter_cols():
        if d_out.apply(c):
            raise ChainMapError("d_out . d_in is not zero")
    return _homology_from(d_out.ncols, reduce_columns(d_in, track_kernel=False),
                          reduce_columns(d_out))


def induced_map(chain_map: F2Matrix, source: SubquotientBasis,
                target: SubquotientBasis) -> F2Matrix:
    """Matrix of the map on homology, in the representative bases.

    Columns index ``source.cycle_reps`` and rows index ``target.cycle_reps``.
    """
    if chain_map.ncols != source.ambient_dim or chain_map.nrows != target.ambient_dim:
        raise ValueError(
            f"chain map of shape {chain_map.shape} does not fit "
            f"{source.ambient_dim} -> {target.ambient_dim}"
        )
    for b in source.boundary_basis:
        if target.coordinates(chain_map.apply(b)) != 0:
            raise ChainMapError("chain map sends a boundary outside the boundaries")
    cols = []
    for z in source.cycle_reps:
        coords = target.coordinates(chain_map.apply(z))
        if coords is None:
            raise ChainMapError("chain map sends a cycle to a non-cycle")
        cols.append(coords)
    return F2Matrix.from_columns(target.dim, cols)
