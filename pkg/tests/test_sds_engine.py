import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sdscycle import graph_core as gc
from sdscycle import sds_engine as sds
from sdscycle.errors import CapExceeded, InvalidInput

from conftest import graphs

CIRC4 = gc.circle(4)


def nor_circ4(word=(1, 2, 3, 4)):
    return sds.SdsSystem.uniform(CIRC4, "nor", word)


def brute_cycles(succ):
    """Cycle lengths by walking every state; slow but obviously right."""
    seen, lengths = set(), []
    for s in range(len(succ)):
        path = []
        x = s
        while x not in path:
            path.append(x)
            x = int(succ[x])
        cyc = tuple(path[path.index(x):])
        if min(cyc) not in seen:
            seen.add(min(cyc))
            lengths.append(len(cyc))
    return tuple(sorted(lengths))


class TestRules:
    def test_nor3(self):
        r = sds.builtin_rule("nor", 3)
        assert r(0, 0, 0) == 1
        assert all(r(*xs) == 0 for xs in itertools.product((0, 1), repeat=3) if any(xs))

    def test_parity(self):
        r = sds.builtin_rule("parity", 3)
        assert r(1, 1, 0) == 0 and r(1, 0, 0) == 1
        p1 = sds.builtin_rule("parity", 1)
        assert (p1(0), p1(1)) == (0, 1)

    def test_table_order_is_lexicographic(self):
        r = sds.RuleTable(2, 2, (0, 1, 0, 0))
        assert r(0, 1) == 1 and r(1, 0) == 0

    def test_boolean_rule_needs_q2(self):
        with pytest.raises(InvalidInput):
            sds.builtin_rule("nor", 3, q=3)
        assert sds.builtin_rule("sum", 2, q=3)(2, 2) == 1

    def test_self_bijective(self, rng):
        for _ in range(20):
            r = sds.random_self_bijective_rule(3, 1, 3, rng)
            for a, c in itertools.product(range(3), repeat=2):
                assert sorted(r(a, b, c) for b in range(3)) == [0, 1, 2]


class TestEvaluation:
    def test_local_examples(self):
        s = nor_circ4()
        assert sds.apply_local(s, 1, (0, 0, 0, 0)).values == (1, 0, 0, 0)
        assert sds.apply_local(s, 1, (0, 1, 0, 0)).values == (0, 1, 0, 0)

    def test_sds_and_parallel_examples(self):
        s = nor_circ4()
        assert sds.apply_sds(s, (0, 0, 0, 0)).values == (1, 0, 1, 0)
        assert sds.apply_parallel(s, (0, 0, 0, 0)).values == (1, 1, 1, 1)

    def test_empty_word_is_identity(self):
        s = nor_circ4(())
        assert np.array_equal(sds.successor_table(s), np.arange(16))

    def test_repeated_letter(self):
        s = nor_circ4((1, 1))
        for i in range(16):
            once = sds.apply_local(s, 1, i)
            assert sds.apply_sds(s, i) == sds.apply_local(s, 1, once)

    def test_frame_property(self, rng):
        for _ in range(30):
            y = gc.random_graph(int(rng.integers(1, 6)), 0.5, rng)
            s = sds.SdsSystem.random(y, 3, (), rng)
            for i in range(s.size):
                before = sds.decode_state(i, y.n, 3)
                for v in y.vertices:
                    after = sds.apply_local(s, v, i).values
                    assert all(a == b for k, (a, b) in enumerate(zip(before, after)) if k != v - 1)

    def test_vectorised_matches_pointwise(self, rng):
        for _ in range(20):
            y = gc.random_graph(int(rng.integers(1, 6)), 0.5, rng)
            w = tuple(int(x) for x in rng.integers(1, y.n + 1, size=6))
            s = sds.SdsSystem.random(y, 2, w, rng)
            table = sds.successor_table(s)
            assert all(table[i] == sds.apply_sds(s, i).index for i in range(s.size))
            par = sds.parallel_successor(s)
            assert all(par[i] == sds.apply_parallel(s, i).index for i in range(s.size))

    def test_parity_on_edgeless_is_order_free(self):
        y = gc.empty(4)
        s = sds.SdsSystem.uniform(y, "nparity", (3, 1, 4, 2))
        assert np.array_equal(sds.successor_table(s), sds.parallel_successor(s))

    def test_constant_rule(self):
        s = sds.SdsSystem.uniform(gc.path(3), "one", (1, 2, 3), q=3)
        assert set(sds.successor_table(s).tolist()) == {sds.encode_state((1, 1, 1), 3)}

    def test_state_encoding(self):
        assert sds.encode_state((1, 0, 0, 0), 2) == 1
        assert sds.decode_state(5, 3, 3) == (2, 1, 0)
        with pytest.raises(InvalidInput):
            sds.State.from_values((0, 2), 2)


class TestPhaseSpace:
    def test_circ4_nor_identity_word(self):
        # 0 -> 5 -> 8 -> 2 -> 4 -> 1 -> 10 -> 0, a single 7-cycle (hand-checked)
        ps = sds.phase_space(nor_circ4())
        assert sds.cycle_multiset(ps) == (7,)
        cyc = ps.cycles[0]
        assert cyc == (0, 5, 8, 2, 4, 1, 10)

    @pytest.mark.parametrize("word", [(1, 4, 2, 3), (1, 3, 2, 4)])
    def test_circ4_nor_other_class(self, word):
        assert sds.cycle_multiset(sds.phase_space(nor_circ4(word))) == (2, 2, 3)

    def test_star(self):
        for n in (3, 4):
            for perm in itertools.islice(itertools.permutations(range(1, n + 2)), 0, None, 7):
                ps = sds.phase_space(sds.SdsSystem.uniform(gc.star(n), "nor", perm))
                assert sds.cycle_summary(ps) == {3: 1, 2: 2 ** (n - 1) - 1}

    def test_parity_invertible(self):
        for y in (gc.path(3), gc.circle(5), gc.complete(4)):
            s = sds.SdsSystem.uniform(y, "parity", tuple(y.vertices))
            assert sds.phase_space(s).periodic_count == s.size

    def test_parity_p2(self):
        s = sds.SdsSystem.uniform(gc.path(2), "parity", (1, 2))
        # (x1,x2) -> (x1+x2, x1): 00 fixed, then 10 -> 11 -> 01 -> 10
        assert sds.cycle_multiset(sds.phase_space(s)) == (1, 3)

    def test_constant_one_fixed_point(self):
        s = sds.SdsSystem.uniform(gc.circle(3), "zero", (1, 2, 3))
        assert sds.cycle_multiset(sds.phase_space(s)) == (1,)

    def test_against_brute_force(self, rng):
        for _ in range(40):
            size = int(rng.integers(1, 300))
            succ = rng.integers(0, size, size=size)
            ps = sds.phase_space_from_successor(succ)
            assert sds.cycle_multiset(ps) == brute_cycles(succ)
            for c in ps.cycles:
                assert all(succ[a] == b for a, b in zip(c, c[1:] + c[:1]))

    def test_cap(self):
        s = sds.SdsSystem.uniform(gc.circle(6), "nor", (1, 2, 3, 4, 5, 6))
        with pytest.raises(CapExceeded):
            sds.phase_space(s, max_states=32)


class TestEquivalence:
    def test_examples(self):
        a, b, c = nor_circ4((1, 4, 2, 3)), nor_circ4((1, 3, 2, 4)), nor_circ4()
        assert sds.cycle_equivalent(a, b)
        assert not sds.functionally_equivalent(c, b)
        tc, tb = sds.successor_table(c), sds.successor_table(b)
        # both words send the zero state to (1,0,1,0); the first disagreement is at (1,0,0,0)
        assert tc[0] == tb[0] == sds.encode_state((1, 0, 1, 0), 2)
        assert np.flatnonzero(tc != tb)[0] == sds.encode_state((1, 0, 0, 0), 2)
        assert sds.apply_sds(c, (1, 0, 0, 0)).values == (0, 1, 0, 1)
        assert sds.apply_sds(b, (1, 0, 0, 0)).values == (0, 0, 1, 0)
        assert sds.functionally_equivalent(a, a) and sds.functionally_cycle_equivalent(a, a)

    def test_non_edge_transposition(self):
        # 1 and 3 are not adjacent in Circ4
        assert sds.functionally_equivalent(nor_circ4((1, 3, 2, 4)), nor_circ4((3, 1, 2, 4)))

    def test_mismatched_sizes(self):
        with pytest.raises(InvalidInput):
            sds.functionally_equivalent(nor_circ4(), sds.SdsSystem.uniform(gc.circle(5), "nor"))

    def test_shift_gives_cycle_not_functional_equivalence(self):
        a, b = nor_circ4(), nor_circ4(sds.shift_word((1, 2, 3, 4), 1))
        assert sds.cycle_equivalent(a, b)
        assert not sds.functionally_cycle_equivalent(a, b)


class TestWords:
    def test_shift_reflect(self):
        assert sds.shift_word((1, 2, 3, 4)) == (2, 3, 4, 1)
        assert sds.reflect_word((1, 2, 3, 4)) == (4, 3, 2, 1)
        assert sds.shift_word((1, 2, 3, 4), 4) == (1, 2, 3, 4)

    @given(st.lists(st.integers(1, 5), max_size=8), st.integers(-10, 10))
    def test_shift_composes(self, w, s):
        assert sds.shift_word(sds.shift_word(w, s), -s) == tuple(w)


class TestTheorems:
    def test_shift_theorem(self, rng):
        for _ in range(40):
            y = gc.random_graph(int(rng.integers(1, 6)), 0.5, rng)
            q = int(rng.choice([2, 3]))
            w = tuple(int(x) for x in rng.integers(1, y.n + 1, size=int(rng.integers(1, 9))))
            s = sds.SdsSystem.random(y, q, w, rng)
            ref = sds.phase_space(s)
            for k in range(1, len(w)):
                ps = sds.phase_space(s.with_word(sds.shift_word(w, k)))
                assert sds.cycle_multiset(ps) == sds.cycle_multiset(ref)
                assert ps.periodic_count == ref.periodic_count

    def test_reflection_for_named_and_self_bijective_rules(self, rng):
        for _ in range(60):
            y = gc.random_graph(int(rng.integers(1, 6)), 0.5, rng)
            w = tuple(int(x) for x in rng.integers(1, y.n + 1, size=int(rng.integers(1, 9))))
            if rng.random() < 0.5:
                s = sds.SdsSystem.uniform(y, str(rng.choice(["nor", "nand", "majority", "parity"])), w)
            else:
                s = sds.SdsSystem.random_self_bijective(y, 2, w, rng)
            assert sds.reflection_inverts_on_periodic(s)
            assert sds.cycle_equivalent(s, s.with_word(sds.reflect_word(w)))

    def test_reflection_fails_for_arbitrary_tables(self):
        # F2 o F1 swaps (1,0) and (0,1), but F1 o F2 sends (0,1) to (0,0)
        y = gc.path(2)
        s = sds.SdsSystem(y, 2, (sds.RuleTable(2, 2, (0, 1, 0, 0)), sds.RuleTable(2, 2, (1, 0, 0, 0))), (1, 2))
        per = sds.phase_space(s).periodic
        assert sorted(per.tolist()) == [1, 2]
        assert sds.apply_sds(s.with_word((2, 1)), (0, 1)).values == (0, 0)
        assert not sds.reflection_inverts_on_periodic(s)

    def test_forest_theorem(self, rng):
        for _ in range(10):
            t = gc.random_tree(int(rng.integers(1, 6)), rng)
            s = sds.SdsSystem.random(t, 2, (), rng)
            ms = {sds.cycle_multiset(sds.phase_space(s.with_word(p)))
                  for p in itertools.permutations(t.vertices)}
            assert len(ms) == 1

    def test_aut_equivariance(self):
        y = gc.circle(5)
        s = sds.SdsSystem.uniform(y, "majority", (1, 3, 2, 5, 4))
        assert sds.is_aut_invariant(s)
        base = sds.successor_table(s)
        for gamma in gc.automorphisms(y):
            perm = sds.state_permutation(gamma, 2)
            moved = sds.successor_table(s, sds.permute_word(gamma, s.word))
            assert np.array_equal(moved[perm], perm[base])

    def test_non_invariant_rules_detected(self):
        y = gc.circle(4)
        rules = [sds.builtin_rule("nor", 3)] * 3 + [sds.builtin_rule("nand", 3)]
        assert not sds.is_aut_invariant(sds.SdsSystem(y, 2, tuple(rules), (1, 2, 3, 4)))
