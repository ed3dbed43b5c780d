import random
from fractions import Fraction

import pytest

from qmut.errors import BadVertex, LoopArrow, SignIncoherent, TwoCycle
from qmut.quiver import (
    IceQuiver,
    Permutation,
    Quiver,
    VertexSign,
    canonical_key,
    framed,
    frozen_isomorphic,
    mutate,
    mutate_ice,
    mutate_ice_full,
    quiver_from_arrows,
    reddening_end,
    relabel,
    vertex_sign,
)

A2 = quiver_from_arrows(2, [(1, 2, 1)])
A2_AFFINE = quiver_from_arrows(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)])


def det(mat) -> Fraction:
    """Fraction Gaussian elimination; independent of the engine."""
    m = [[Fraction(c) for c in row] for row in mat]
    n = len(m)
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            out = -out
        out *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return out


def random_connected_quiver(rng, n) -> Quiver:
    b = [[0] * n for _ in range(n)]

    def add(i, j, m):
        b[i][j] += m
        b[j][i] -= m

    order = list(range(n))
    rng.shuffle(order)
    for idx in range(1, n):
        i, j = order[rng.randrange(idx)], order[idx]
        if rng.random() < 0.5:
            i, j = j, i
        add(i, j, rng.randint(1, 2))
    for _ in range(rng.randrange(n)):
        i, j = rng.sample(range(n), 2)
        if b[i][j] >= 0:
            add(i, j, rng.randint(1, 2))
    return Quiver(b)


class TestFromArrows:
    def test_single_arrow(self):
        assert A2.b == ((0, 1), (-1, 0))

    def test_three_cycle(self):
        assert A2_AFFINE.b == ((0, 1, -1), (-1, 0, 1), (1, -1, 0))

    def test_two_cycle_rejected(self):
        with pytest.raises(TwoCycle):
            quiver_from_arrows(2, [(1, 2, 1), (2, 1, 1)])

    def test_loop_rejected(self):
        with pytest.raises(LoopArrow):
            quiver_from_arrows(2, [(1, 1, 1)])

    def test_bad_vertex(self):
        with pytest.raises(BadVertex):
            quiver_from_arrows(2, [(1, 3, 1)])

    def test_roundtrip_with_arrows(self):
        q = quiver_from_arrows(4, [(1, 2, 2), (3, 2, 1), (4, 1, 1)])
        assert quiver_from_arrows(4, q.arrows()) == q

    def test_json_roundtrip_and_agreement(self):
        obj = A2_AFFINE.to_json()
        assert Quiver.from_json(obj) == A2_AFFINE
        obj["b_matrix"] = [list(r) for r in A2_AFFINE.b]
        assert Quiver.from_json(obj) == A2_AFFINE
        obj["b_matrix"][0][1] = 5
        obj["b_matrix"][1][0] = -5
        with pytest.raises(ValueError):
            Quiver.from_json(obj)

    def test_disconnected_warns(self):
        with pytest.warns(UserWarning):
            Quiver([[0, 0], [0, 0]])


class TestMutate:
    def test_a2_at_source(self):
        assert mutate(A2, 1).b == ((0, -1), (1, 0))

    def test_three_cycle_at_1(self):
        q = mutate(A2_AFFINE, 1)
        assert q.arrows() == [(1, 3, 1), (2, 1, 1)]

    def test_involutive(self):
        rng = random.Random(7)
        for _ in range(50):
            q = random_connected_quiver(rng, rng.randint(2, 6))
            k = rng.randint(1, q.n)
            assert mutate(mutate(q, k), k) == q

    def test_skewness_preserved(self):
        rng = random.Random(8)
        for _ in range(50):
            q = random_connected_quiver(rng, rng.randint(2, 6))
            k = rng.randint(1, q.n)
            m = mutate(q, k).b
            assert all(m[i][j] == -m[j][i] for i in range(q.n) for j in range(q.n))

    def test_bad_vertex(self):
        with pytest.raises(BadVertex):
            mutate(A2, 3)

    def test_pure(self):
        before = A2.b
        mutate(A2, 1)
        assert A2.b == before


class TestFramed:
    def test_identity_cmat(self):
        iq = framed(A2)
        assert iq.cmat == ((1, 0), (0, 1))
        assert iq.base == A2

    def test_three_cycle(self):
        iq = framed(A2_AFFINE)
        assert iq.cmat == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_all_green(self):
        iq = framed(A2_AFFINE)
        for v in (1, 2, 3):
            assert vertex_sign(iq, v) is VertexSign.GREEN


class TestMutateIce:
    def test_green_mutation_at_source(self):
        iq = mutate_ice(framed(A2), 1)
        assert iq.cmat == ((-1, 0), (0, 1))

    def test_a2_affine_step3_row(self):
        iq = framed(A2_AFFINE)
        for v in (1, 2):
            iq = mutate_ice(iq, v)
        iq = mutate_ice(iq, 3)
        assert iq.cmat[2] == (-1, 0, -1)  # vertex 3 had c = (1,0,1) before

    def test_alpha_row_before_step3(self):
        iq = framed(A2_AFFINE)
        for v in (1, 2):
            iq = mutate_ice(iq, v)
        assert iq.cmat[2] == (1, 0, 1)

    def test_involutive(self):
        iq = framed(A2_AFFINE)
        iq = mutate_ice(iq, 2)
        assert mutate_ice(mutate_ice(iq, 3), 3) == iq

    def test_matches_full_matrix_mutation(self):
        rng = random.Random(9)
        for _ in range(40):
            q = random_connected_quiver(rng, rng.randint(2, 6))
            iq = framed(q)
            for _ in range(rng.randint(1, 12)):
                v = rng.randint(1, q.n)
                a, b = mutate_ice(iq, v), mutate_ice_full(iq, v)
                assert a == b
                iq = a

    def test_sign_incoherent_rejected(self):
        bad = IceQuiver(A2, [[1, -1], [0, 1]])
        with pytest.raises(SignIncoherent):
            mutate_ice(bad, 1)


class TestVertexSign:
    def test_after_pentagon(self):
        iq = framed(A2)
        for v in (1, 2):
            iq = mutate_ice(iq, v)
        assert vertex_sign(iq, 1) is VertexSign.RED
        assert vertex_sign(iq, 2) is VertexSign.RED

    def test_mixed_row(self):
        row_green = IceQuiver(A2_AFFINE, [[1, 0, 1], [0, 1, 0], [0, 0, 1]])
        assert vertex_sign(row_green, 1) is VertexSign.GREEN

    def test_zero_row_raises(self):
        bad = IceQuiver(A2, [[0, 0], [0, 1]])
        with pytest.raises(SignIncoherent):
            vertex_sign(bad, 1)


def run_seq(q, seq):
    iq = framed(q)
    for v in seq:
        iq = mutate_ice(iq, v)
    return iq


class TestReddeningEnd:
    def test_pentagon_identity_boundary(self):
        assert reddening_end(run_seq(A2, (1, 2)), A2) == Permutation.identity(2)

    def test_pentagon_other_boundary(self):
        assert reddening_end(run_seq(A2, (2, 1, 2)), A2) == Permutation((2, 1))

    def test_not_reddening(self):
        assert reddening_end(framed(A2)) is None
        assert reddening_end(run_seq(A2, (1,))) is None


class TestFrozenIsomorphic:
    def test_self(self):
        iq = run_seq(A2_AFFINE, (1, 2))
        assert frozen_isomorphic(iq, iq) == Permutation.identity(3)

    def test_pentagon_pair(self):
        a = run_seq(A2, (2, 1, 2))
        b = run_seq(A2, (1, 2))
        assert frozen_isomorphic(a, b) == Permutation((2, 1))

    def test_framed_vs_mutated(self):
        assert frozen_isomorphic(framed(A2), run_seq(A2, (1,))) is None

    def test_relabel_consistency(self):
        rng = random.Random(10)
        for _ in range(20):
            q = random_connected_quiver(rng, rng.randint(2, 5))
            iq = run_seq(q, [rng.randint(1, q.n) for _ in range(rng.randint(0, 8))])
            image = list(range(1, q.n + 1))
            rng.shuffle(image)
            sigma = Permutation(image)
            assert frozen_isomorphic(iq, relabel(iq, sigma)) is not None


class TestCanonicalKey:
    def test_relabel_invariance(self):
        rng = random.Random(11)
        for _ in range(20):
            q = random_connected_quiver(rng, rng.randint(2, 5))
            iq = run_seq(q, [rng.randint(1, q.n) for _ in range(rng.randint(0, 8))])
            image = list(range(1, q.n + 1))
            rng.shuffle(image)
            assert canonical_key(iq) == canonical_key(relabel(iq, Permutation(image)))

    def test_pentagon_keys_equal(self):
        assert canonical_key(run_seq(A2, (1, 2))) == canonical_key(run_seq(A2, (2, 1, 2)))

    def test_reversed_a2_differs(self):
        a2_rev = quiver_from_arrows(2, [(2, 1, 1)])
        # no relabeling sends one framed quiver to the other
        for image in ((1, 2), (2, 1)):
            assert relabel(framed(A2), Permutation(image)) != framed(a2_rev)
        assert canonical_key(framed(A2)) != canonical_key(framed(a2_rev))

    def test_key_equality_matches_isomorphism(self):
        rng = random.Random(12)
        states = []
        for _ in range(14):
            q = random_connected_quiver(rng, 3)
            states.append(run_seq(q, [rng.randint(1, 3) for _ in range(rng.randint(0, 5))]))
        for a in states:
            for b in states:
                same_key = canonical_key(a) == canonical_key(b)
                assert same_key == (frozen_isomorphic(a, b) is not None)

    def test_tied_vertex_invariants(self):
        # repeated c-rows force the key to enumerate within invariant classes
        import warnings as w

        with w.catch_warnings():
            w.simplefilter("ignore")
            q = Quiver([[0, 0], [0, 0]])
        a = IceQuiver(q, [[1, 1], [1, 1]])
        b = relabel(a, Permutation((2, 1)))
        assert canonical_key(a) == canonical_key(b)
        assert frozen_isomorphic(a, b) is not None
        c = IceQuiver(q, [[1, 1], [2, 1]])
        assert canonical_key(a) != canonical_key(c)


class TestTraceInvariants:
    def test_randomized(self):
        rng = random.Random(13)
        for _ in range(60):
            n = rng.randint(2, 6)
            q = random_connected_quiver(rng, n)
            iq = framed(q)
            b0 = q.b
            for t in range(1, rng.randint(1, 12) + 1):
                v = rng.randint(1, n)
                iq = mutate_ice(iq, v)
                # skew-symmetry of the full matrix
                full = iq.full_matrix()
                assert all(
                    full[i][j] == -full[j][i] for i in range(2 * n) for j in range(2 * n)
                )
                # det C(t) = (-1)^t
                assert det(iq.cmat) == (-1) ** t
                # sign coherence at every vertex
                for w in range(1, n + 1):
                    vertex_sign(iq, w)
                # C(t) B(0) C(t)^T = B(t)
                c = iq.cmat
                cb = [
                    [sum(c[i][a] * b0[a][j] for a in range(n)) for j in range(n)]
                    for i in range(n)
                ]
                cbc = [
                    [sum(cb[i][a] * c[j][a] for a in range(n)) for j in range(n)]
                    for i in range(n)
                ]
                assert tuple(map(tuple, cbc)) == iq.base.b


class TestPermutation:
    def test_compose_inverse(self):
        p = Permutation((3, 1, 2))
        assert p.compose(p.inverse()) == Permutation.identity(3)

    def test_cycles(self):
        assert Permutation((2, 1, 4, 3, 6, 5)).cycles() == "(12)(34)(56)"
        assert Permutation.identity(3).cycles() == "id"
