from __future__ import annotations

import random

import pytest

from khbraid import BraidWord


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    letters = [rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length)]
    return BraidWord(n, tuple(letters))


def make_corpus(seed: int = 20261018, size: int = 60, max_len: int = 8) -> list[BraidWord]:
    """Random words in B_2..B_4 plus a few closures of the unlink in disguise."""
    rng = random.Random(seed)
    words = [random_word(rng, rng.randint(2, 4), rng.randint(0, max_len)) for _ in range(size)]
    for n in (2, 3, 4):
        tau = random_word(rng, n, 2)
        words.append(tau * tau.inverse())
    words += [BraidWord(3, (1, -2, 2, -1)), BraidWord(3, (2, 1, -1, -2)), BraidWord(4, (3, -3, 1, -1))]
    return words


@pytest.fixture(scope="session")
def corpus() -> list[BraidWord]:
    return make_corpus()


def dense_rank_oracle(rows: list[list[int]]) -> int:
    """Textbook row reduction over GF(2) on lists of 0/1."""
    a = [list(r) for r in rows]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(a)) if a[k][col] % 2), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for k in range(len(a)):
            if k != r and a[k][col] % 2:
                a[k] = [(x + y) % 2 for x, y in zip(a[k], a[r])]
        r += 1
        if r == len(a):
            break
    return r
