import random

import pytest

from khbraid import (BraidWord, ConsistencyError, build_complex, chain_action, homology_action,
                     is_free_rank_one, module_structure, parse_braid)
from khbraid.basepoints import check_commutes, compose_on
from khbraid.f2 import F2Matrix, rank
from khbraid.homology import betti_table

from conftest import random_word


def _setup(text):
    c = build_complex(parse_braid(text) if isinstance(text, str) else text)
    return c, betti_table(c)


class TestChainAction:
    def test_trivial_two_strands(self):
        c = build_complex(BraidWord(2))
        x1 = chain_action(c, 1)
        # 1(x)1 -> x(x)1 and x(x)1 -> 0
        _, one_one = c.locate(0, 0b00)
        bd_x1, x_one = c.locate(0, 0b01)
        col = x1[(0, 2)].support(one_one)
        assert col == (x_one,)
        assert (0, 0) in x1 and x1[(0, 0)].support(x_one) == ()

    def test_index_range(self):
        c = build_complex(BraidWord(2))
        with pytest.raises(IndexError):
            chain_action(c, 3)

    def test_squares_and_commutators(self, corpus):
        for w in corpus[:30]:
            c = build_complex(w)
            acts = [chain_action(c, i) for i in range(1, w.n_strands + 1)]
            for bd in c.bidegrees:
                h, q = bd
                for a in acts:
                    first = a.get(bd)
                    second = a.get((h, q - 2))
                    if first is not None and second is not None:
                        assert (second @ first).is_zero()
                for a in acts:
                    for b in acts:
                        ab = _compose(c, [a, b], bd)
                        ba = _compose(c, [b, a], bd)
                        assert ab == ba

    def test_commutes_with_differential(self, corpus):
        for w in corpus:
            c = build_complex(w)
            for i in range(1, w.n_strands + 1):
                check_commutes(c, chain_action(c, i))

    def test_broken_action_detected(self):
        c = build_complex(parse_braid("2: 1 1"))
        caught = 0
        # Zeroing the action on one bidegree must break commutation somewhere.
        for bd in chain_action(c, 1):
            action = chain_action(c, 1)
            m = action[bd]
            action[bd] = F2Matrix.from_support(m.nrows, [() for _ in range(m.ncols)])
            try:
                check_commutes(c, action)
            except ConsistencyError:
                caught += 1
        assert caught > 0

    def test_top_product_sends_psi_plus_to_psi_minus(self):
        for text in ["3:", "3: 1 -2 1", "2: 1 1 1 -1", "4: 1 2 3"]:
            w = parse_braid(text)
            c = build_complex(w)
            from khbraid.transverse import psi_vector

            bd, plus = psi_vector(c, plus=True)
            bd_minus, minus = psi_vector(c)
            vec = plus
            h, q = bd
            for i in range(1, w.n_strands + 1):
                vec = chain_action(c, i)[(h, q)].apply(vec)
                q -= 2
            assert (h, q) == bd_minus and vec == minus


def _compose(c, acts, bd):
    h, q = bd
    m = F2Matrix.identity(c.dim(bd))
    for step, a in enumerate(reversed(acts)):
        src = (h, q - 2 * step)
        x = a.get(src) or F2Matrix.zeros(c.dim((h, q - 2 * step - 2)), c.dim(src))
        m = x @ m
    return m


class TestHomologyAction:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_unlink_is_a_n(self, n):
        c, t = _setup(BraidWord(n))
        acts = [homology_action(t, c, i) for i in range(1, n + 1)]
        # Kh(U_n) has one generator per subset S (labels x on S). x_i sends the
        # generator for S to the one for S + {i} when i is not in S.
        for i, act in enumerate(acts):
            for bd, m in act.items():
                src_states = [labels for _, labels in c.basis[bd]]
                tgt_states = [labels for _, labels in c.basis.get((0, bd[1] - 2), [])]
                for col, labels in enumerate(src_states):
                    image = labels | (1 << i)
                    expected = 0 if labels & (1 << i) else 1 << tgt_states.index(image)
                    assert m.cols[col] == expected

    def test_trefoil_action_nonzero(self):
        c, t = _setup("2: 1 1 1")
        (act,) = [homology_action(t, c, 1)]
        assert any(not m.is_zero() for m in act.values())

    def test_zero_differential_restricts(self):
        c, t = _setup(BraidWord(2))
        act = homology_action(t, c, 2)
        chain = chain_action(c, 2)
        for bd, m in act.items():
            if bd in chain:
                assert m == chain[bd]

    def test_degree_contract(self, corpus):
        for w in corpus[:25]:
            c, t = _setup(w)
            for i in range(1, w.n_strands + 1):
                for (h, q), m in homology_action(t, c, i).items():
                    assert m.ncols == t.dim((h, q)) and m.nrows == t.dim((h, q - 2))


class TestFreeRankOne:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_unlinks(self, n):
        c, t = _setup(BraidWord(n))
        ms = module_structure(t, c)
        assert ms.free_rank_one and ms.squares_vanish and ms.commute
        assert ms.witness[0] == (0, n)

    def test_trefoil_fails(self):
        c, t = _setup("2: 1 1 1")
        assert not module_structure(t, c).free_rank_one

    def test_hopf_fails_despite_dimension(self):
        c, t = _setup("2: 1 1")
        assert t.total_dim == 4
        ms = module_structure(t, c)
        assert not ms.free_rank_one
        x1, x2 = ms.actions
        for bd in t.dims:
            assert compose_on([x1, x2], t, bd).is_zero()
        assert any(rank(m) for m in x1.values())

    @pytest.mark.parametrize("seed", range(6))
    def test_conjugation_invariant(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 3)
        s = random_word(rng, n, 3) if seed % 2 else BraidWord(n)
        tau = random_word(rng, n, 2)
        c1, t1 = _setup(s)
        c2, t2 = _setup(tau * s * tau.inverse())
        assert module_structure(t1, c1).free_rank_one == module_structure(t2, c2).free_rank_one

    def test_dimension_gate(self):
        c, t = _setup("2: 1 1 1")
        acts = [homology_action(t, c, 1), homology_action(t, c, 2)]
        assert is_free_rank_one(t, acts, 3) == (False, None)
