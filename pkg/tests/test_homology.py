import random

import pytest

from khbraid import (BraidWord, build_complex, dense_homology_oracle, graded_euler_characteristic,
                     kauffman_state_sum, khovanov, mirror_table_check, parse_braid)
from khbraid.braid import stabilize
from khbraid.homology import format_laurent, laurent_mul, laurent_pow

from conftest import random_word

TREFOIL = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1, (3, 7): 1, (3, 9): 1}
HOPF = {(0, 0): 1, (0, 2): 1, (2, 4): 1, (2, 6): 1}


def test_trivial_two_strands():
    t = khovanov(BraidWord(2))
    assert t.dims == {(0, -2): 1, (0, 0): 2, (0, 2): 1}
    assert t.total_dim == 4


def test_right_trefoil():
    t = khovanov(parse_braid("2: 1 1 1"))
    assert t.dims == TREFOIL
    assert dense_homology_oracle(parse_braid("2: 1 1 1")).dims == TREFOIL


def test_positive_hopf():
    t = khovanov(parse_braid("2: 1 1"))
    assert t.dims == HOPF
    assert dense_homology_oracle(parse_braid("2: 1 1")).dims == HOPF


def test_metadata():
    t = khovanov(parse_braid("3: 1 -2 1"))
    assert t.writhe == 1 and t.components == 2
    assert t.rows() == sorted(t.rows())


def test_cycle_reps_are_cycles():
    c = build_complex(parse_braid("3: 1 1 -2 1 2"))
    from khbraid.homology import betti_table

    t = betti_table(c)
    for bd, g in t.groups.items():
        for z in g.cycle_reps:
            assert c.d(bd).apply(z) == 0
        assert g.dim == t.dim(bd)


class TestEuler:
    def test_unknot(self):
        assert graded_euler_characteristic(khovanov(BraidWord(1))) == {1: 1, -1: 1}

    def test_two_unknots(self):
        circle = {1: 1, -1: 1}
        assert graded_euler_characteristic(khovanov(BraidWord(2))) == laurent_mul(circle, circle)

    def test_trefoil(self):
        expected = {1: 1, 3: 1, 5: 1, 9: -1}
        assert graded_euler_characteristic(khovanov(parse_braid("2: 1 1 1"))) == expected
        assert kauffman_state_sum(parse_braid("2: 1 1 1")) == expected

    def test_matches_state_sum(self, corpus):
        for w in corpus:
            assert graded_euler_characteristic(khovanov(w)) == kauffman_state_sum(w)

    def test_format(self):
        assert format_laurent({1: 1, 3: 1, 5: 1, 9: -1}) == "q + q^3 + q^5 - q^9"
        assert format_laurent(laurent_pow({1: 1, -1: 1}, 2)) == "q^-2 + 2 + q^2"


class TestMirror:
    def test_trivial(self):
        assert mirror_table_check(BraidWord(3))

    def test_trefoil(self):
        assert mirror_table_check(parse_braid("2: 1 1 1"))

    @pytest.mark.parametrize("seed", range(8))
    def test_random(self, seed):
        rng = random.Random(seed)
        assert mirror_table_check(random_word(rng, rng.randint(2, 4), 6))


class TestInvariance:
    @pytest.mark.parametrize("seed", range(8))
    def test_conjugation(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 4)
        s, tau = random_word(rng, n, 4), random_word(rng, n, 2)
        assert khovanov(tau * s * tau.inverse()).dims == khovanov(s).dims

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("sign", [1, -1])
    def test_markov(self, seed, sign):
        rng = random.Random(seed)
        s = random_word(rng, rng.randint(2, 3), 5) if seed % 3 else BraidWord(1)
        assert khovanov(stabilize(s, sign)).dims == khovanov(s).dims


def test_dense_oracle_agrees(corpus):
    for w in corpus:
        if len(w) <= 6:
            assert dense_homology_oracle(w).dims == khovanov(w).dims


def test_dense_oracle_size_guard():
    with pytest.raises(ValueError):
        dense_homology_oracle(parse_braid("2: 1 1 1 1 1 1 1 1"), max_generators=100)
