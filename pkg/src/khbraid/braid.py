"""Braid words and the marked closure diagram.

Conventions used throughout the package:

* ``sigma_k`` (letter ``k > 0``) is the positive Artin generator: strand ``k``
  passes over strand ``k + 1``. Letter ``-k`` is its inverse.
* Words are read left to right, bottom of the braid to the top.
* Strand positions and basepoints are numbered from 1 in the public API.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import BraidParseError

_WORD_RE = re.compile(r"^\s*([+-]?\d+)\s*:(.*)$", re.DOTALL)


@dataclass(frozen=True)
class BraidWord:
    """An element of the braid group B_n written in signed generators."""

    n_strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if isinstance(self.n_strands, bool) or not isinstance(self.n_strands, int):
            raise BraidParseError(f"n_strands must be an integer, got {self.n_strands!r}")
        if self.n_strands < 1:
            raise BraidParseError(f"n_strands must be >= 1, got {self.n_strands}")
        letters = tuple(int(k) for k in self.letters)
        for k in letters:
            if k == 0 or abs(k) > self.n_strands - 1:
                raise BraidParseError(
                    f"letter {k} out of range for B_{self.n_strands} "
                    f"(need 1 <= |k| <= {self.n_strands - 1})"
                )
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_braid(self)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.n_strands != self.n_strands:
            raise ValueError("cannot multiply braids with different strand counts")
        return BraidWord(self.n_strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n_strands, tuple(-k for k in reversed(self.letters)))

    @property
    def exponent_sum(self) -> int:
        return sum(1 if k > 0 else -1 for k in self.letters)


def parse_braid(text: str) -> BraidWord:
    """Parse ``"<n>: <k1> <k2> ..."`` into a validated :class:`BraidWord`.

    >>> parse_braid("3: 1 -2 1").letters
    (1, -2, 1)
    """
    m = _WORD_RE.match(text)
    if m is None:
        raise BraidParseError(f"expected '<n>: <letters>', got {text!r}")
    n = int(m.group(1))
    letters = []
    for token in m.group(2).split():
        try:
            letters.append(int(token))
        except ValueError:
            raise BraidParseError(f"malformed token {token!r} in {text!r}") from None
    return BraidWord(n, tuple(letters))


def format_braid(w: BraidWord) -> str:
    body = " ".join(str(k) for k in w.letters)
    return f"{w.n_strands}: {body}" if body else f"{w.n_strands}:"


def closure_permutation(w: BraidWord) -> tuple[int, ...]:
    """Permutation of strand positions induced by the braid, 1-indexed.

    Entry ``p - 1`` is the bottom position of the strand that arrives at top
    position ``p``; transpositions are applied in word order. Letter signs are
    irrelevant. For ``3: 1 -2`` this is the cycle 1 -> 2 -> 3 -> 1.
    """
    at = list(range(1, w.n_strands + 1))
    for k in w.letters:
        a = abs(k)
        at[a - 1], at[a] = at[a], at[a - 1]
    return tuple(at)


def component_count(w: BraidWord) -> int:
    perm = closure_permutation(w)
    seen = [False] * w.n_strands
    cycles = 0
    for start in range(w.n_strands):
        if seen[start]:
            continue
        cycles += 1
        p = start
        while not seen[p]:
            seen[p] = True
            p = perm[p] - 1
    return cycles


def writhe(w: BraidWord) -> tuple[int, int, int]:
    """Return ``(writhe, n_plus, n_minus)``."""
    n_plus = sum(1 for k in w.letters if k > 0)
    n_minus = len(w.letters) - n_plus
    return n_plus - n_minus, n_plus, n_minus


def mirror(w: BraidWord) -> BraidWord:
    return BraidWord(w.n_strands, tuple(-k for k in w.letters))


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent ``k, -k`` pairs until none remain."""
    out: list[int] = []
    for k in w.letters:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return BraidWord(w.n_strands, tuple(out))


def stabilize(w: BraidWord, sign: int = 1) -> BraidWord:
    """Markov stabilization: append ``sigma_n^{+-1}`` in ``B_{n+1}``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return BraidWord(w.n_strands + 1, w.letters + (sign * w.n_strands,))


@dataclass(frozen=True)
class Crossing:
    """One crossing of the closure diagram.

    ``in_left``/``in_right`` are the arcs entering from below at positions
    ``generator`` and ``generator + 1``; ``out_left``/``out_right`` leave
    upward at the same positions.
    """

    generator: int
    sign: int
    in_left: int
    in_right: int
    out_left: int
    out_right: int

    @property
    def arcs(self) -> tuple[int, int, int, int]:
        return self.in_left, self.in_right, self.out_left, self.out_right


@dataclass(frozen=True)
class ClosureDiagram:
    """The closed braid diagram with one basepoint per closure arc.

    Arcs are numbered by a single upward sweep: the ``n`` closure arcs are
    ``0 .. n-1`` (closure arc ``p-1`` runs around the back of the diagram at
    position ``p``), and crossing ``k`` emits arcs ``n + 2k`` (left) and
    ``n + 2k + 1`` (right). The topmost arc at position ``p`` is joined to
    closure arc ``p - 1``; those joins are listed in ``closure_joins``.
    Basepoint ``p_i`` sits on closure arc ``i - 1``, away from every crossing.
    """

    word: BraidWord
    crossings: tuple[Crossing, ...]
    n_arcs: int
    closure_joins: tuple[tuple[int, int], ...]
    basepoints: tuple[int, ...]
    n_plus: int
    n_minus: int

    @property
    def n_strands(self) -> int:
        return self.word.n_strands

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def arcs(self) -> range:
        return range(self.n_arcs)


def closure_diagram(w: BraidWord) -> ClosureDiagram:
    n = w.n_strands
    current = list(range(n))  # arc currently occupying each position
    crossings = []
    next_arc = n
    for k in w.letters:
        a = abs(k) - 1
        out_left, out_right = next_arc, next_arc + 1
        next_arc += 2
        crossings.append(
            Crossing(abs(k), 1 if k > 0 else -1, current[a], current[a + 1], out_left, out_right)
        )
        current[a], current[a + 1] = out_left, out_right
    joins = tuple((top, p) for p, top in enumerate(current) if top != p)
    _, n_plus, n_minus = writhe(w)
    return ClosureDiagram(
        word=w,
        crossings=tuple(crossings),
        n_arcs=next_arc,
        closure_joins=joins,
        basepoints=tuple(range(n)),
        n_plus=n_plus,
        n_minus=n_minus,
    )
