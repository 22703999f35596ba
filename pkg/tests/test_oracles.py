import random

import numpy as np
import pytest

from khbraid import BraidWord, kauffman_state_sum, parse_braid
from khbraid.homology import laurent_mul, laurent_pow
from khbraid.oracles import dense_rank
from khbraid.plotting import plot_betti_table
from khbraid import khovanov

from conftest import dense_rank_oracle

CIRCLE = {1: 1, -1: 1}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_state_sum_unlink(n):
    assert kauffman_state_sum(BraidWord(n)) == laurent_pow(CIRCLE, n)


def test_state_sum_trefoil():
    assert kauffman_state_sum(parse_braid("2: 1 1 1")) == {1: 1, 3: 1, 5: 1, 9: -1}


def test_state_sum_mirror_reverses_q():
    p = kauffman_state_sum(parse_braid("3: 1 1 -2 1"))
    m = kauffman_state_sum(parse_braid("3: -1 -1 2 -1"))
    assert m == {-e: c for e, c in p.items()}


def test_state_sum_split_union():
    # Adding an untouched strand multiplies by q + 1/q.
    p = kauffman_state_sum(parse_braid("2: 1 1 1"))
    assert kauffman_state_sum(parse_braid("3: 1 1 1")) == laurent_mul(p, CIRCLE)


@pytest.mark.parametrize("seed", range(10))
def test_dense_rank(seed):
    rng = random.Random(seed)
    rows = [[rng.randint(0, 1) for _ in range(17)] for _ in range(13)]
    assert dense_rank(rows) == dense_rank_oracle(rows)
    assert dense_rank(np.array(rows, dtype=np.uint8)) == dense_rank_oracle(rows)


def test_dense_rank_empty():
    assert dense_rank(np.zeros((0, 4), dtype=np.uint8)) == 0


def test_plot_writes_file(tmp_path):
    path = plot_betti_table(khovanov(parse_braid("2: 1 1")), tmp_path / "hopf.svg", psi=(0, 0), title="Hopf")
    assert path.exists() and path.read_text().lstrip().startswith("<?xml")
