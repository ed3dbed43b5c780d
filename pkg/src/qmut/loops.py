"""Mutation loops: traces, the s/k/kv linear system, partition q-series and
quantum dilogarithm products, plus the symbolic identity checks.

One k-variable per mutation time t = 1..T; one s-variable per vertex
occurrence (the initial n unknowns plus one new s per mutation).  A trace
carries every form symbolically; solve_boundary eliminates the s-unknowns
using the boundary identification s_i(T) = s_phi(i)(0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateLoop, NotReddening, PhiNotIsomorphism
from .quiver import (
    IceQuiver,
    Permutation,
    Quiver,
    VertexSign,
    framed,
    mutate_ice,
    reddening_end,
    vertex_sign,
)
from .scalars import AffineForm, QScalar, QuadForm, pochhammer, qpow
from .torus import GradedSeries, SeriesContext, SkewForm, dilog_factor, ts_bar, ts_unit


class MutationLoop:
    """A quiver, a mutation sequence, and a boundary permutation phi: Q(T) -> Q(0)."""

    __slots__ = ("quiver", "seq", "phi")

    def __init__(self, quiver: Quiver, seq, phi: Permutation):
        self.quiver = quiver
        self.seq = tuple(int(v) for v in seq)
        if len(phi) != quiver.n:
            raise ValueError("phi size does not match vertex count")
        self.phi = phi

    @property
    def T(self) -> int:
        return len(self.seq)

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "sequence": list(self.seq),
            "phi": list(self.phi.image),
        }

    @staticmethod
    def from_json(obj: dict) -> "MutationLoop":
        return MutationLoop(
            Quiver.from_json(obj["quiver"]), obj["sequence"], Permutation(obj["phi"])
        )


@dataclass(frozen=True)
class TraceStep:
    t: int
    vertex: int
    eps: int
    alpha: tuple[int, ...]
    quiver_after: Quiver
    ice_after: IceQuiver
    s_forms: tuple[AffineForm, ...]
    kvee: AffineForm
    psi: tuple[AffineForm, ...]

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "vertex": self.vertex,
            "eps": self.eps,
            "alpha": list(self.alpha),
            "b_matrix": [list(r) for r in self.quiver_after.b],
            "c_matrix": [list(r) for r in self.ice_after.cmat],
            "s_forms": [f.to_json() for f in self.s_forms],
            "kvee": self.kvee.to_json(),
            "psi": [f.to_json() for f in self.psi],
        }


@dataclass(frozen=True)
class Trace:
    quiver: Quiver
    seq: tuple[int, ...]
    phi: Permutation | None
    steps: tuple[TraceStep, ...]
    occurrences: dict[tuple[int, int], AffineForm]
    solution: dict[tuple[int, int], AffineForm] | None = None

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def T(self) -> int:
        return len(self.seq)

    @property
    def final_ice(self) -> IceQuiver:
        return self.steps[-1].ice_after if self.steps else framed(self.quiver)

    def initial_s(self) -> tuple[AffineForm, ...]:
        if self.solution is None:
            return tuple(AffineForm.svar(i) for i in range(1, self.n + 1))
        return tuple(self.solution[(i, 0)] for i in range(1, self.n + 1))

    def initial_psi(self) -> tuple[AffineForm, ...]:
        return self.initial_s()

    def s_at(self, t: int) -> tuple[AffineForm, ...]:
        """s-forms on Q(t); t = 0 gives the initial forms."""
        return self.initial_s() if t == 0 else self.steps[t - 1].s_forms

    def psi_at(self, t: int) -> tuple[AffineForm, ...]:
        return self.initial_psi() if t == 0 else self.steps[t - 1].psi

    def eps(self) -> tuple[int, ...]:
        return tuple(st.eps for st in self.steps)

    def alphas(self) -> tuple[tuple[int, ...], ...]:
        return tuple(st.alpha for st in self.steps)

    def is_reddening(self) -> bool:
        phi = reddening_end(self.final_ice, self.quiver)
        return phi is not None and (self.phi is None or phi == self.phi)

    def to_json(self) -> dict:
        obj = {
            "quiver": self.quiver.to_json(),
            "sequence": list(self.seq),
            "steps": [st.to_json() for st in self.steps],
        }
        if self.phi is not None:
            obj["phi"] = list(self.phi.image)
        if self.solution is not None:
            obj["solution"] = {
                f"s{v}.{g}": f.to_json() for (v, g), f in sorted(self.solution.items())
            }
        return obj

    @staticmethod
    def from_json(obj: dict) -> "Trace":
        quiver = Quiver.from_json(obj["quiver"])
        seq = tuple(obj["sequence"])
        phi = Permutation(obj["phi"]) if "phi" in obj else None
        n = quiver.n
        steps = []
        gen = [0] * n
        occurrences = {(i, 0): AffineForm.svar(i) for i in range(1, n + 1)}
        for raw in obj["steps"]:
            s_forms = tuple(AffineForm.from_json(f) for f in raw["s_forms"])
            base = Quiver(raw["b_matrix"])
            step = TraceStep(
                t=int(raw["t"]),
                vertex=int(raw["vertex"]),
                eps=int(raw["eps"]),
                alpha=tuple(raw["alpha"]),
                quiver_after=base,
                ice_after=IceQuiver(base, raw["c_matrix"]),
                s_forms=s_forms,
                kvee=AffineForm.from_json(raw["kvee"]),
                psi=tuple(AffineForm.from_json(f) for f in raw["psi"]),
            )
            gen[step.vertex - 1] += 1
            occurrences[(step.vertex, gen[step.vertex - 1])] = s_forms[step.vertex - 1]
            steps.append(step)
        solution = None
        if "solution" in obj:
            solution = {}
            for key, f in obj["solution"].items():
                v, g = key[1:].split(".")
                solution[(int(v), int(g))] = AffineForm.from_json(f)
            occurrences = {
                key: form.substitute_s({i: solution[(i, 0)] for i in range(1, n + 1)})
                if form.s
                else form
                for key, form in occurrences.items()
            }
        return Trace(quiver, seq, phi, tuple(steps), occurrences, solution)


def run_ice_trace(quiver: Quiver, seq) -> Trace:
    """Execute the mutations symbolically; no boundary condition imposed."""
    n = quiver.n
    ice = framed(quiver)
    s = [AffineForm.svar(i) for i in range(1, n + 1)]
    occurrences = {(i, 0): s[i - 1] for i in range(1, n + 1)}
    gen = [0] * n
    steps = []
    for t, v in enumerate(tuple(int(x) for x in seq), start=1):
        sign = vertex_sign(ice, v)
        eps = 1 if sign is VertexSign.GREEN else -1
        alpha = tuple(eps * c for c in ice.c_vector(v))
        prev = ice.base  # Q(t-1)
        k_t = AffineForm.kvar(t)
        if eps == 1:
            new_s = k_t - s[v - 1]
            for a in range(1, n + 1):
                m = prev.arrow_mult(a, v)
                if m:
                    new_s = new_s + s[a - 1] * m
        else:
            new_s = (-1) * k_t - s[v - 1]
            for b in range(1, n + 1):
                m = prev.arrow_mult(v, b)
                if m:
                    new_s = new_s + s[b - 1] * m
        kvee = k_t
        for i in range(1, n + 1):
            c = prev.b[v - 1][i - 1]
            if c:
                kvee = kvee - s[i - 1] * c
        ice = mutate_ice(ice, v)
        s[v - 1] = new_s
        gen[v - 1] += 1
        occurrences[(v, gen[v - 1])] = new_s
        psi = tuple(
            sum(
                (s[i] * ice.cmat[i][j] for i in range(n) if ice.cmat[i][j]),
                AffineForm(),
            )
            for j in range(n)
        )
        steps.append(
            TraceStep(t, v, eps, alpha, ice.base, ice, tuple(s), kvee, psi)
        )
    return Trace(quiver, tuple(int(x) for x in seq), None, tuple(steps), occurrences)


def run_trace(loop: MutationLoop) -> Trace:
    """Trace a mutation loop, checking phi is a quiver isomorphism Q(T) -> Q(0)."""
    tr = run_ice_trace(loop.quiver, loop.seq)
    phi, b0, bT = loop.phi, loop.quiver.b, tr.final_ice.base.b
    for i in range(loop.quiver.n):
        for j in range(loop.quiver.n):
            if bT[i][j] != b0[phi(i + 1) - 1][phi(j + 1) - 1]:
                raise PhiNotIsomorphism(
                    f"phi={list(phi.image)} does not map the final quiver onto the initial one"
                )
    return Trace(tr.quiver, tr.seq, phi, tr.steps, tr.occurrences)


def solve_boundary(trace: Trace) -> Trace:
    """Impose s_i(T) = s_phi(i)(0) and eliminate the initial s-unknowns.

    The loop is non-degenerate exactly when the n x n coefficient matrix of
    the boundary system is invertible; a singular system raises DegenerateLoop.
    """
    if trace.phi is None:
        raise ValueError("boundary solve needs a loop with phi")
    n = trace.n
    s_final = trace.s_at(trace.T)
    rows = []
    rhs = []
    for i in range(1, n + 1):
        f = s_final[i - 1] - AffineForm.svar(trace.phi(i))
        rows.append([f.s.get(j, Fraction(0)) for j in range(1, n + 1)])
        rhs.append((-1) * AffineForm(k=f.k, const=f.const))

    # Gaussian elimination over Q with AffineForm right-hand sides.
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            raise DegenerateLoop("boundary system for initial s-variables is singular")
        rows[col], rows[piv] = rows[piv], rows[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = 1 / rows[col][col]
        rows[col] = [c * inv for c in rows[col]]
        rhs[col] = rhs[col] * inv
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
                rhs[r] = rhs[r] - rhs[col] * f
    base = {i: rhs[i - 1] for i in range(1, n + 1)}

    solution = {key: f.substitute_s(base) for key, f in trace.occurrences.items()}
    steps = tuple(
        TraceStep(
            st.t,
            st.vertex,
            st.eps,
            st.alpha,
            st.quiver_after,
            st.ice_after,
            tuple(f.substitute_s(base) for f in st.s_forms),
            st.kvee.substitute_s(base),
            tuple(f.substitute_s(base) for f in st.psi),
        )
        for st in trace.steps
    )
    return Trace(trace.quiver, trace.seq, trace.phi, steps, trace.occurrences, solution)


def _solved(loop_or_trace) -> Trace:
    if isinstance(loop_or_trace, Trace):
        tr = loop_or_trace
        if tr.solution is None:
            tr = solve_boundary(tr)
        return tr
    return solve_boundary(run_trace(loop_or_trace))


def weight_exponent(trace: Trace) -> QuadForm:
    """The exact quadratic form (1/2) sum_t eps_t k_t kvee_t in the k-variables."""
    if trace.solution is None:
        raise ValueError("weight exponent needs a solved trace")
    T = trace.T
    index = {("k", t): t - 1 for t in range(1, T + 1)}
    out = QuadForm.zero(T)
    for st in trace.steps:
        prod = QuadForm.from_affine_product(AffineForm.kvar(st.t), st.kvee, T, index)
        out = out + prod * Fraction(st.eps, 2)
    return out


def loop_denominator(trace: Trace) -> int:
    """Shared exponent denominator L for one loop: lcm(2, quad-form denominators)."""
    return math.lcm(2, weight_exponent(trace).exponent_denominator())


def partition_qseries(loop_or_trace, D: int, L: int | None = None) -> GradedSeries:
    """The graded partition q-series ZZ up to total grading degree D.

    Sums the weight product q^((1/2) sum eps_t k_t kvee_t) / prod (q^eps_t)_{k_t}
    over all k in N^T with sum k_t*|alpha_t| <= D, at grading sum k_t*alpha_t.
    """
    if isinstance(loop_or_trace, MutationLoop) and loop_or_trace.T == 0:
        # no mutations: the sum has the single empty k-vector, with weight 1
        run_trace(loop_or_trace)
        ctx = SeriesContext(
            loop_or_trace.quiver.n, D, SkewForm(loop_or_trace.quiver.b), L or 2
        )
        return ts_unit(ctx)
    tr = _solved(loop_or_trace)
    quad = weight_exponent(tr)
    if L is None:
        L = math.lcm(2, quad.exponent_denominator())
    ctx = SeriesContext(tr.n, D, SkewForm(tr.quiver.b), L)
    eps = tr.eps()
    alphas = tr.alphas()
    weights = [sum(a) for a in alphas]
    T = tr.T

    poch: dict[tuple[int, int], QScalar] = {}

    def poch_at(e: int, m: int) -> QScalar:
        key = (e, m)
        if key not in poch:
            poch[key] = pochhammer(m, e, L)
        return poch[key]

    terms: dict[tuple[int, ...], QScalar] = {}
    k = [0] * T

    def emit():
        coeff = qpow(quad.value(k), L)
        for t in range(T):
            if k[t]:
                coeff = coeff / poch_at(eps[t], k[t])
        beta = tuple(
            sum(k[t] * alphas[t][j] for t in range(T)) for j in range(tr.n)
        )
        terms[beta] = terms[beta] + coeff if beta in terms else coeff

    def rec(t: int, budget: int):
        if t == T:
            emit()
            return
        for v in range(budget // weights[t] + 1):
            k[t] = v
            rec(t + 1, budget - v * weights[t])
        k[t] = 0

    rec(0, D)
    return GradedSeries(ctx, terms)


def dt_product(quiver: Quiver, seq, D: int, L: int = 2) -> GradedSeries:
    """Ordered product of quantum dilogarithms E(y^alpha_t; q^eps_t) along seq."""
    tr = run_ice_trace(quiver, seq)
    ctx = SeriesContext(quiver.n, D, SkewForm(quiver.b), L)
    out = ts_unit(ctx)
    for st in tr.steps:
        out = out * dilog_factor(st.alpha, st.eps, ctx)
    return out


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class Report:
    ok: bool
    checks: tuple[Check, ...]

    @staticmethod
    def from_checks(checks) -> "Report":
        checks = tuple(checks)
        return Report(all(c.ok for c in checks), checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}

    @staticmethod
    def from_json(obj: dict) -> "Report":
        return Report(
            bool(obj["ok"]),
            tuple(Check(c["name"], c["ok"], c.get("detail", "")) for c in obj["checks"]),
        )


def verify_main(loop: MutationLoop, D: int, require_reddening: bool = True) -> Report:
    """Term-exact comparison of ZZ(loop) with bar(E(Q; seq)) up to degree D."""
    tr = run_trace(loop)
    phi = reddening_end(tr.final_ice, loop.quiver)
    if require_reddening and (phi is None or phi != loop.phi):
        raise NotReddening(
            "loop is not reddening with the given phi; "
            "pass require_reddening=False to compare anyway"
        )
    solved = solve_boundary(tr)
    zz = partition_qseries(solved, D)
    ee = dt_product(loop.quiver, loop.seq, D, L=zz.ctx.L)
    bar_ee = ts_bar(ee)
    checks = []
    first_bad = None
    for beta in sorted(set(zz.terms) | set(bar_ee.terms)):
        same = zz.coeff(beta) == bar_ee.coeff(beta)
        if not same and first_bad is None:
            first_bad = beta
        detail = ""
        if not same:
            detail = f"ZZ={zz.coeff(beta).pretty()} bar(EE)={bar_ee.coeff(beta).pretty()}"
        checks.append(Check(f"beta={list(beta)}", same, detail))
    if first_bad is not None:
        checks.insert(0, Check("first-discrepancy", False, f"beta={list(first_bad)}"))
    elif not checks:
        checks.append(Check("empty-series", True, "no gradings up to D"))
    return Report.from_checks(checks)


def check_state_vector(trace: Trace) -> Report:
    """Symbolic state-vector checks: per-step change, in/out total, anti-periodicity."""
    n, T = trace.n, trace.T
    checks = []
    for st in trace.steps:
        prev = trace.psi_at(st.t - 1)
        expect = tuple(
            prev[j] - AffineForm.kvar(st.t) * st.alpha[j] for j in range(n)
        )
        checks.append(
            Check(
                f"psi-change t={st.t}",
                trace.psi_at(st.t) == expect,
                "" if trace.psi_at(st.t) == expect else "psi(t) != psi(t-1) - k_t*alpha_t",
            )
        )
    total = tuple(
        sum(
            (AffineForm.kvar(st.t) * st.alpha[j] for st in trace.steps),
            AffineForm(),
        )
        for j in range(n)
    )
    psi0, psiT = trace.psi_at(0), trace.psi_at(T)
    in_out = all(psi0[j] - psiT[j] == total[j] for j in range(n))
    checks.append(Check("psi-in-out", in_out))
    anti = all(psiT[j] == (-1) * psi0[j] for j in range(n))
    checks.append(
        Check(
            "psi-anti-periodic",
            anti,
            "" if anti else "psi(T) != -psi(0) (expected only for reddening loops)",
        )
    )
    return Report.from_checks(checks)


def check_quad_identity(trace: Trace) -> Report:
    """Exact quadratic-form identity
    sum eps_t k_t kvee_t + <psi(0), psi(T)> = sum eps_t k_t^2 - sum_{i<j} k_i k_j <a_i, a_j>.
    """
    n, T = trace.n, trace.T
    nv = n + T
    index = {("s", i): i - 1 for i in range(1, n + 1)}
    index.update({("k", t): n + t - 1 for t in range(1, T + 1)})

    def prod(f, g) -> QuadForm:
        return QuadForm.from_affine_product(f, g, nv, index)

    lhs = QuadForm.zero(nv)
    for st in trace.steps:
        lhs = lhs + prod(AffineForm.kvar(st.t), st.kvee) * st.eps
    psi0, psiT = trace.psi_at(0), trace.psi_at(T)
    b0 = trace.quiver.b
    for i in range(n):
        for j in range(n):
            if b0[i][j]:
                lhs = lhs + prod(psi0[i], psiT[j]) * b0[i][j]

    skew = SkewForm(b0)
    alphas = trace.alphas()
    rhs = QuadForm.zero(nv)
    for st in trace.steps:
        rhs = rhs + prod(AffineForm.kvar(st.t), AffineForm.kvar(st.t)) * st.eps
    for i in range(T):
        for j in range(i + 1, T):
            c = skew.pair(alphas[i], alphas[j])
            if c:
                rhs = rhs - prod(AffineForm.kvar(i + 1), AffineForm.kvar(j + 1)) * c

    ok = lhs == rhs
    return Report.from_checks([Check("kkv-k2-identity", ok, "" if ok else "forms differ")])


def check_backtracking(loop_a: MutationLoop, loop_b: MutationLoop, D: int) -> Report:
    """Partition q-series of the two loops agree term-by-term up to degree D."""
    za = partition_qseries(loop_a, D)
    zb = partition_qseries(loop_b, D)
    checks = []
    for beta in sorted(set(za.terms) | set(zb.terms)):
        same = za.coeff(beta) == zb.coeff(beta)
        checks.append(
            Check(
                f"beta={list(beta)}",
                same,
                "" if same else f"{za.coeff(beta).pretty()} != {zb.coeff(beta).pretty()}",
            )
        )
    return Report.from_checks(checks)
