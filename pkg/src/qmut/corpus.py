"""Built-in corpus: the worked reddening loops with their golden data.

Every entry stores exact expectations (exponent quadratic form, grading
map, solved s-variables, dilogarithm gradings, final c-matrix); running
an entry recomputes everything from scratch and compares exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .loops import Check, MutationLoop, Report, run_trace, solve_boundary, verify_main, weight_exponent
from .quiver import Permutation, Quiver, quiver_from_arrows
from .scalars import AffineForm, QuadForm
from .search import classify_sequence


def _half(*ts: int) -> AffineForm:
    return AffineForm(k={t: Fraction(1, 2) for t in ts})


def _quad(T: int, monomials: dict[tuple[int, int], Fraction]) -> QuadForm:
    """Quadratic form sum c_{ij} k_i k_j over 1-based index pairs i <= j."""
    mat = [[Fraction(0)] * T for _ in range(T)]
    for (i, j), c in monomials.items():
        c = Fraction(c)
        if i == j:
            mat[i - 1][i - 1] += c
        else:
            mat[i - 1][j - 1] += c / 2
            mat[j - 1][i - 1] += c / 2
    return QuadForm(T, mat)


def generalized_cartan(q: Quiver):
    """2 on the diagonal, minus the total arrow multiplicity off the diagonal."""
    n = q.n
    return tuple(
        tuple(
            2 if i == j else -(q.arrow_mult(i + 1, j + 1) + q.arrow_mult(j + 1, i + 1))
            for j in range(n)
        )
        for i in range(n)
    )


def is_alternating(q: Quiver) -> bool:
    """Every vertex is a source or a sink."""
    for i in range(q.n):
        has_in = any(q.b[j][i] > 0 for j in range(q.n))
        has_out = any(q.b[i][j] > 0 for j in range(q.n))
        if has_in and has_out:
            return False
    return True


def alternating_loop(q: Quiver) -> MutationLoop:
    """Sources (ascending) then sinks (ascending), with identity boundary."""
    if not is_alternating(q):
        raise ValueError("quiver is not alternating")
    sources = [i for i in range(1, q.n + 1) if all(q.b[j][i - 1] <= 0 for j in range(q.n))]
    sinks = [i for i in range(1, q.n + 1) if i not in sources]
    return MutationLoop(q, sources + sinks, Permutation.identity(q.n))


def cartan_time_quad(cartan, seq) -> QuadForm:
    """(1/4) k^T C k written in time-indexed k-variables for the given sequence."""
    T = len(seq)
    mat = [
        [Fraction(cartan[seq[t] - 1][seq[u] - 1], 4) for u in range(T)]
        for t in range(T)
    ]
    return QuadForm(T, mat)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    quiver: Quiver
    seq: tuple[int, ...]
    phi: Permutation
    maximal_green: bool
    exponent: QuadForm | None = None
    alphas: tuple[tuple[int, ...], ...] | None = None
    s_solution: dict[tuple[int, int], AffineForm] | None = None
    final_cmat: tuple[tuple[int, ...], ...] | None = None
    cartan: tuple[tuple[int, ...], ...] | None = field(default=None)

    def loop(self) -> MutationLoop:
        return MutationLoop(self.quiver, self.seq, self.phi)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "quiver": self.quiver.to_json(),
            "sequence": list(self.seq),
            "phi": list(self.phi.image),
            "maximal_green": self.maximal_green,
        }

    def run(self, degree: int = 4) -> Report:
        """Recompute the loop and compare every stored golden value exactly."""
        checks = []
        loop = self.loop()
        trace = solve_boundary(run_trace(loop))

        cls = classify_sequence(self.quiver, self.seq)
        checks.append(
            Check(
                "classification",
                cls.is_maximal_green == self.maximal_green
                and cls.reddening_phi == self.phi,
                f"maximal_green={cls.is_maximal_green} phi={cls.reddening_phi}",
            )
        )
        if self.alphas is not None:
            got = trace.alphas()
            checks.append(Check("alphas", got == self.alphas, f"got {got}"))
        if self.exponent is not None:
            got_q = weight_exponent(trace)
            checks.append(Check("exponent", got_q == self.exponent, repr(got_q)))
        if self.s_solution is not None:
            ok = True
            bad = ""
            for key, want in self.s_solution.items():
                have = trace.solution[key]
                if have != want:
                    ok, bad = False, f"s{key}: got {have!r}, want {want!r}"
                    break
            checks.append(Check("s-solution", ok, bad))
        if self.final_cmat is not None:
            got_c = trace.final_ice.cmat
            checks.append(Check("final-c-matrix", got_c == self.final_cmat, repr(got_c)))
        if self.cartan is not None:
            gcm = generalized_cartan(self.quiver)
            checks.append(Check("generalized-cartan", gcm == self.cartan, repr(gcm)))
            want_q = cartan_time_quad(self.cartan, self.seq)
            got_q = weight_exponent(trace)
            checks.append(Check("cartan-exponent", got_q == want_q, repr(got_q)))
            unit_alphas = tuple(
                tuple(1 if j == v - 1 else 0 for j in range(self.quiver.n))
                for v in self.seq
            )
            checks.append(
                Check("grading-is-k", trace.alphas() == unit_alphas, repr(trace.alphas()))
            )

        main = verify_main(loop, degree)
        checks.append(
            Check(
                f"main-identity D={degree}",
                main.ok,
                "" if main.ok else "; ".join(c.name for c in main.failures()),
            )
        )
        return Report.from_checks(checks)


def _a2() -> Quiver:
    return quiver_from_arrows(2, [(1, 2, 1)])


def _a2_affine() -> Quiver:
    return quiver_from_arrows(3, [(1, 2, 1), (2, 3, 1), (3, 1, 1)])


def _a3_square_a2() -> Quiver:
    arrows = [(1, 3), (3, 4), (5, 3), (2, 1), (4, 2), (4, 6), (6, 5)]
    return quiver_from_arrows(6, [(i, j, 1) for i, j in arrows])


def _octahedral() -> Quiver:
    ring = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)]
    chords = [(3, 1), (4, 2), (5, 3), (6, 4), (1, 5), (2, 6)]
    return quiver_from_arrows(6, [(i, j, 1) for i, j in ring + chords])


def _d5_affine() -> Quiver:
    arrows = [(1, 3), (2, 3), (4, 3), (4, 5), (4, 6)]
    return quiver_from_arrows(6, [(i, j, 1) for i, j in arrows])


_H = Fraction(1, 2)

_A2_AFFINE_EXPONENT = _quad(
    4,
    {
        (1, 1): _H, (2, 2): _H, (3, 3): _H, (4, 4): _H,
        (1, 2): -_H, (1, 3): _H, (1, 4): _H, (2, 4): -_H, (3, 4): _H,
    },
)

# Cross-round coupling follows vertex adjacency: round blocks (1,4,5) and
# (2,3,6) meet along the three grid edges only, so the off-diagonal block
# is tridiagonal.
_A3A2_PRIME = ((2, 0, 0), (0, 2, 0), (0, 0, 2))
_A3A2_DPRIME = ((1, -1, 0), (-1, 1, -1), (0, -1, 1))


def _a3a2_matrix():
    blocks = [
        [_A3A2_PRIME, _A3A2_DPRIME, _A3A2_DPRIME],
        [_A3A2_DPRIME, _A3A2_PRIME, _A3A2_DPRIME],
        [_A3A2_DPRIME, _A3A2_DPRIME, _A3A2_PRIME],
    ]
    return tuple(
        tuple(blocks[bi][bj][i][j] for bj in range(3) for j in range(3))
        for bi in range(3)
        for i in range(3)
    )


_OCT_PRIME = (
    (2, -1, -1, 1, 1, -2),
    (-1, 2, 0, 0, 0, 1),
    (-1, 0, 2, 0, 0, 1),
    (1, 0, 0, 2, 0, -1),
    (1, 0, 0, 0, 2, -1),
    (-2, 1, 1, -1, -1, 2),
)
_OCT_DPRIME = (
    (2, -1, -1, 1, 1, 0),
    (-1, 1, 1, -1, -1, 1),
    (-1, 1, 1, -1, -1, 1),
    (1, -1, -1, 1, 1, -1),
    (1, -1, -1, 1, 1, -1),
    (0, 1, 1, -1, -1, 2),
)


def _oct_matrix():
    blocks = [[_OCT_PRIME, _OCT_DPRIME], [_OCT_DPRIME, _OCT_PRIME]]
    return tuple(
        tuple(blocks[bi][bj][i][j] for bj in range(2) for j in range(6))
        for bi in range(2)
        for i in range(6)
    )


_D5_CARTAN = (
    (2, 0, -1, 0, 0, 0),
    (0, 2, -1, 0, 0, 0),
    (-1, -1, 2, -1, 0, 0),
    (0, 0, -1, 2, -1, -1),
    (0, 0, 0, -1, 2, 0),
    (0, 0, 0, -1, 0, 2),
)

_OCT_FINAL_CMAT = (
    (-1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, -1, 0),
    (0, 0, 0, 0, 0, -1),
    (0, 0, 0, -1, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (0, 0, -1, 0, 0, 0),
)

_OCT_ALPHAS = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (0, 0, 0, 0, 1, 0),
    (1, 0, 0, 0, 0, 1),
    (1, 0, 1, 0, 0, 0),
    (0, 1, 0, 1, 1, 0),
    (1, 0, 1, 0, 0, 1),
    (0, 0, 0, 1, 1, 0),
    (0, 1, 0, 1, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, 0, 0, 0, 0, 1),
    (0, 0, 0, 1, 0, 0),
)


def _entries() -> list[CorpusEntry]:
    out = []

    out.append(
        CorpusEntry(
            name="a2-pentagon",
            description="A2 quiver, maximal green sequence (1,2); one side of the pentagon",
            quiver=_a2(),
            seq=(1, 2),
            phi=Permutation.identity(2),
            maximal_green=True,
            alphas=((1, 0), (0, 1)),
            s_solution={(1, 0): _half(1), (2, 0): _half(2)},
            final_cmat=((-1, 0), (0, -1)),
        )
    )
    out.append(
        CorpusEntry(
            name="a2-pentagon-212",
            description="A2 quiver, maximal green sequence (2,1,2); other side of the pentagon",
            quiver=_a2(),
            seq=(2, 1, 2),
            phi=Permutation((2, 1)),
            maximal_green=True,
            alphas=((0, 1), (1, 1), (1, 0)),
            final_cmat=((0, -1), (-1, 0)),
        )
    )
    out.append(
        CorpusEntry(
            name="single-vertex",
            description="One vertex, no arrows; ZZ is a single quantum dilogarithm",
            quiver=Quiver(((0,),)),
            seq=(1,),
            phi=Permutation.identity(1),
            maximal_green=True,
            alphas=((1,),),
            s_solution={(1, 0): _half(1)},
        )
    )
    out.append(
        CorpusEntry(
            name="a2-affine",
            description="Oriented 3-cycle; loop (1,2,3,1) with boundary (13)",
            quiver=_a2_affine(),
            seq=(1, 2, 3, 1),
            phi=Permutation((3, 2, 1)),
            maximal_green=True,
            exponent=_A2_AFFINE_EXPONENT,
            alphas=((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 0, 1)),
            s_solution={
                (1, 0): _half(1, 3),
                (1, 1): _half(1, 4),
                (1, 2): _half(3, 4),
                (2, 0): _half(2),
                (2, 1): _half(2),
                (3, 0): _half(3, 4),
                (3, 1): _half(1, 3),
            },
        )
    )
    out.append(
        CorpusEntry(
            name="a3-square-a2",
            description="Square product of A3 and A2; 9-step reddening loop",
            quiver=_a3_square_a2(),
            seq=(1, 4, 5, 2, 3, 6, 1, 4, 5),
            phi=Permutation((2, 1, 4, 3, 6, 5)),
            maximal_green=True,
            exponent=QuadForm.from_matrix(_a3a2_matrix(), Fraction(1, 4)),
            alphas=(
                (1, 0, 0, 0, 0, 0),
                (0, 0, 0, 1, 0, 0),
                (0, 0, 0, 0, 1, 0),
                (1, 1, 0, 0, 0, 0),
                (0, 0, 1, 1, 0, 0),
                (0, 0, 0, 0, 1, 1),
                (0, 1, 0, 0, 0, 0),
                (0, 0, 1, 0, 0, 0),
                (0, 0, 0, 0, 0, 1),
            ),
            s_solution={
                (1, 0): _half(1, 4),
                (1, 1): _half(1, 7),
                (1, 2): _half(4, 7),
                (2, 0): _half(4, 7),
                (2, 1): _half(1, 4),
                (3, 0): _half(5, 8),
                (3, 1): _half(2, 5),
                (4, 0): _half(2, 5),
                (4, 1): _half(2, 8),
                (4, 2): _half(5, 8),
                (5, 0): _half(3, 6),
                (5, 1): _half(3, 9),
                (5, 2): _half(6, 9),
                (6, 0): _half(6, 9),
                (6, 1): _half(3, 6),
            },
        )
    )
    out.append(
        CorpusEntry(
            name="octahedral",
            description="Octahedral quiver; 12-step maximal green loop",
            quiver=_octahedral(),
            seq=(1, 2, 5, 6, 3, 4, 1, 2, 5, 6, 3, 4),
            phi=Permutation((1, 5, 6, 4, 2, 3)),
            maximal_green=True,
            exponent=QuadForm.from_matrix(_oct_matrix(), Fraction(1, 4)),
            alphas=_OCT_ALPHAS,
            final_cmat=_OCT_FINAL_CMAT,
            s_solution={
                (1, 0): _half(1, 4, 5, 7),
                (2, 0): _half(2, 6, 9),
                (3, 0): _half(5, 7, 10),
                (4, 0): _half(6, 8, 9, 12),
                (5, 0): _half(3, 6, 8),
                (6, 0): _half(4, 7, 11),
                (1, 1): _half(1, 7, 10, 11),
                (2, 1): _half(2, 8, 12),
                (3, 1): _half(1, 5, 11),
                (4, 1): _half(2, 3, 6, 12),
                (5, 1): _half(3, 9, 12),
                (6, 1): _half(1, 4, 10),
            },
        )
    )
    out.append(
        CorpusEntry(
            name="d5-affine-alternating",
            description="Alternating affine D5 quiver; sources then sinks, identity boundary",
            quiver=_d5_affine(),
            seq=(1, 2, 4, 3, 5, 6),
            phi=Permutation.identity(6),
            maximal_green=True,
            cartan=_D5_CARTAN,
            s_solution={
                (1, 0): _half(1), (1, 1): _half(1),
                (2, 0): _half(2), (2, 1): _half(2),
                (4, 0): _half(3), (4, 1): _half(3),
                (3, 0): _half(4), (3, 1): _half(4),
                (5, 0): _half(5), (5, 1): _half(5),
                (6, 0): _half(6), (6, 1): _half(6),
            },
        )
    )

    generated = [
        ("alt-a2", quiver_from_arrows(2, [(1, 2, 1)])),
        ("alt-kronecker", quiver_from_arrows(2, [(1, 2, 2)])),
        ("alt-a3-path", quiver_from_arrows(3, [(1, 2, 1), (3, 2, 1)])),
        ("alt-d4-star", quiver_from_arrows(4, [(1, 4, 1), (2, 4, 1), (3, 4, 1)])),
        ("alt-c4-cycle", quiver_from_arrows(4, [(1, 2, 1), (3, 2, 1), (3, 4, 1), (1, 4, 1)])),
    ]
    for name, q in generated:
        loop = alternating_loop(q)
        out.append(
            CorpusEntry(
                name=name,
                description="Generated alternating quiver; exponent is a quarter Cartan form",
                quiver=q,
                seq=loop.seq,
                phi=loop.phi,
                maximal_green=True,
                cartan=generalized_cartan(q),
            )
        )
    return out


def corpus() -> list[CorpusEntry]:
    return _entries()


def corpus_entry(name: str) -> CorpusEntry:
    entries = corpus()
    for e in entries:
        if e.name == name:
            return e
    matches = [e for e in entries if e.name.startswith(name)]
    if len(matches) == 1:
        return matches[0]
    known = ", ".join(e.name for e in entries)
    raise KeyError(f"no corpus entry {name!r}; known: {known}")
