import random

import pytest

from qmut.corpus import alternating_loop, corpus_entry
from qmut.errors import CapExceeded
from qmut.loops import run_trace
from qmut.quiver import Permutation, canonical_key, quiver_from_arrows
from qmut.search import SearchConfig, SearchMode, classify_sequence, find_sequences

A2 = quiver_from_arrows(2, [(1, 2, 1)])
A2_AFFINE = quiver_from_arrows(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)])


class TestFindSequences:
    def test_a2_depth3_exact(self):
        res = find_sequences(A2, SearchConfig(max_len=3))
        assert res == [
            ((1, 2), Permutation.identity(2)),
            ((2, 1, 2), Permutation((2, 1))),
        ]

    def test_a2_depth3_no_dedupe_same(self):
        res = find_sequences(A2, SearchConfig(max_len=3, dedupe=False))
        assert res == [
            ((1, 2), Permutation.identity(2)),
            ((2, 1, 2), Permutation((2, 1))),
        ]

    def test_a2_affine_finds_corpus_loop(self):
        res = find_sequences(A2_AFFINE, SearchConfig(max_len=4))
        assert ((1, 2, 3, 1), Permutation((3, 2, 1))) in res

    def test_d5_alternating_found(self):
        entry = corpus_entry("d5-affine-alternating")
        res = find_sequences(entry.quiver, SearchConfig(max_len=6, limit=None))
        assert (entry.seq, Permutation.identity(6)) in res

    def test_results_reproduce_phi(self):
        from qmut.loops import MutationLoop
        from qmut.quiver import reddening_end

        for seq, phi in find_sequences(A2_AFFINE, SearchConfig(max_len=4)):
            tr = run_trace(MutationLoop(A2_AFFINE, seq, phi))
            assert reddening_end(tr.final_ice, A2_AFFINE) == phi

    def test_maximal_green_mode_all_green(self):
        for seq, _phi in find_sequences(A2_AFFINE, SearchConfig(max_len=4)):
            cls = classify_sequence(A2_AFFINE, seq)
            assert all(cls.green_flags)
            assert cls.is_maximal_green

    def test_reddening_mode_superset(self):
        green = set(
            seq for seq, _ in find_sequences(A2, SearchConfig(max_len=3))
        )
        red = set(
            seq
            for seq, _ in find_sequences(
                A2, SearchConfig(max_len=3, mode=SearchMode.REDDENING)
            )
        )
        assert green <= red

    def test_limit(self):
        res = find_sequences(A2, SearchConfig(max_len=3, limit=1))
        assert res == [((1, 2), Permutation.identity(2))]

    def test_vertex_cap(self):
        arrows = [(i, i + 1, 1) for i in range(1, 11)]
        big = quiver_from_arrows(11, arrows)
        with pytest.raises(CapExceeded):
            find_sequences(big, SearchConfig(max_len=1))

    def test_state_cap_env(self, monkeypatch):
        monkeypatch.setenv("QMUT_MAX_STATES", "1")
        with pytest.raises(CapExceeded):
            find_sequences(A2_AFFINE, SearchConfig(max_len=4))

    def test_dedupe_soundness_small_depth(self):
        # dedupe loses no canonical final state discoverable within any depth
        # bound (duplicates found again at later depths are pruned by design)
        for q in (A2, A2_AFFINE):
            for depth in (2, 3, 4):
                found = {}
                for flag in (True, False):
                    keys = set()
                    res = find_sequences(
                        q,
                        SearchConfig(
                            max_len=depth, mode=SearchMode.REDDENING, dedupe=flag
                        ),
                    )
                    for seq, _phi in res:
                        cls = classify_sequence(q, seq)
                        keys.add(canonical_key(cls.final_ice))
                    found[flag] = keys
                assert found[True] == found[False]


class TestClassifySequence:
    def test_a3_square_a2(self):
        entry = corpus_entry("a3-square-a2")
        cls = classify_sequence(entry.quiver, entry.seq)
        assert cls.reddening_phi == Permutation((2, 1, 4, 3, 6, 5))
        assert cls.is_maximal_green

    def test_backtracking_not_reddening(self):
        cls = classify_sequence(A2, (1, 1))
        assert cls.reddening_phi is None
        assert not cls.is_maximal_green
        assert cls.green_flags == (True, False)

    def test_octahedral_maximal_green(self):
        entry = corpus_entry("octahedral")
        cls = classify_sequence(entry.quiver, entry.seq)
        assert cls.is_maximal_green
        assert cls.reddening_phi == entry.phi


class TestAlternatingRecipe:
    def test_any_source_sink_order_is_maximal_green(self):
        rng = random.Random(30)
        for name in ("alt-a3-path", "alt-d4-star", "alt-c4-cycle", "alt-kronecker"):
            entry = corpus_entry(name)
            q = entry.quiver
            base = alternating_loop(q)
            n_sources = sum(
                1 for i in range(1, q.n + 1) if all(q.b[j][i - 1] <= 0 for j in range(q.n))
            )
            sources = list(base.seq[:n_sources])
            sinks = list(base.seq[n_sources:])
            for _ in range(4):
                rng.shuffle(sources)
                rng.shuffle(sinks)
                seq = tuple(sources + sinks)
                cls = classify_sequence(q, seq)
                assert cls.is_maximal_green
                assert cls.reddening_phi == Permutation.identity(q.n)
                # c-vectors flip one at a time: after t steps the mutated set is negated
                tr = run_trace(
                    __import__("qmut").MutationLoop(q, seq, Permutation.identity(q.n))
                )
                for t, st in enumerate(tr.steps, start=1):
                    mutated = set(seq[:t])
                    for i in range(q.n):
                        want = tuple(
                            (-1 if (i + 1) in mutated else 1) * (1 if j == i else 0)
                            for j in range(q.n)
                        )
                        assert st.ice_after.cmat[i] == want
