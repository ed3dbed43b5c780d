"""Truncated quantum torus: graded series, products, dilogarithm factors.

Elements are stored on the normally-ordered basis {y^beta}, beta in N^n with
total degree |beta| <= D, so the product rule
    y^alpha * y^beta = q^(<alpha,beta>/2) * y^(alpha+beta)
inserts its q-power eagerly and the bar involution acts coefficient-wise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContextMismatch, LengthMismatch, ZeroAlpha
from .scalars import QScalar, bar_scalar, pochhammer, qpow

Vec = tuple[int, ...]


class SkewForm:
    """Skew-symmetric pairing <e_i, e_j> = B0[i][j] from the initial quiver."""

    __slots__ = ("b0",)

    def __init__(self, b0):
        self.b0 = tuple(tuple(int(c) for c in row) for row in b0)
        n = len(self.b0)
        for i in range(n):
            for j in range(n):
                if self.b0[i][j] != -self.b0[j][i]:
                    raise ValueError("skew form matrix must be skew-symmetric")

    @property
    def n(self) -> int:
        return len(self.b0)

    def pair(self, alpha, beta) -> int:
        out = 0
        for i, a in enumerate(alpha):
            if a:
                row = self.b0[i]
                out += a * sum(row[j] * b for j, b in enumerate(beta) if b)
        return out

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self.b0 == other.b0

    def __hash__(self):
        return hash(self.b0)


class SeriesContext:
    """Shared (n, D, skew, L) data for one family of graded series."""

    __slots__ = ("n", "D", "skew", "L")

    def __init__(self, n: int, D: int, skew: SkewForm, L: int):
        if D < 0:
            raise ValueError("truncation degree must be >= 0")
        if skew.n != n:
            raise ContextMismatch("skew form size does not match grading rank")
        self.n = n
        self.D = D
        self.skew = skew
        self.L = L

    def __eq__(self, other):
        return (
            isinstance(other, SeriesContext)
            and (self.n, self.D, self.L) == (other.n, other.D, other.L)
            and self.skew == other.skew
        )

    def __hash__(self):
        return hash((self.n, self.D, self.L, self.skew))


class GradedSeries:
    """Truncated quantum-torus element: map beta -> QScalar, |beta| <= D."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SeriesContext, terms: dict[Vec, QScalar] | None = None):
        self.ctx = ctx
        clean: dict[Vec, QScalar] = {}
        for beta, c in (terms or {}).items():
            beta = tuple(int(x) for x in beta)
            if len(beta) != ctx.n:
                raise LengthMismatch("grading vector length does not match rank")
            if any(x < 0 for x in beta):
                raise ValueError("grading vectors live in N^n")
            if sum(beta) > ctx.D:
                continue
            c = c.with_denominator(ctx.L)
            if not c.is_zero():
                clean[beta] = c
        self.terms = clean

    def coeff(self, beta) -> QScalar:
        return self.terms.get(tuple(beta), QScalar.zero(self.ctx.L))

    def __add__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for beta, c in other.terms.items():
            terms[beta] = terms[beta] + c if beta in terms else c
        return GradedSeries(self.ctx, terms)

    def __sub__(self, other):
        self._compatible(other)
        terms = dict(self.terms)
        for beta, c in other.terms.items():
            terms[beta] = terms[beta] - c if beta in terms else -c
        return GradedSeries(self.ctx, terms)

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return GradedSeries(
                self.ctx, {b: c * other for b, c in self.terms.items()}
            )
        self._compatible(other)
        ctx = self.ctx
        out: dict[Vec, QScalar] = {}
        for alpha, ca in self.terms.items():
            da = sum(alpha)
            for beta, cb in other.terms.items():
                if da + sum(beta) > ctx.D:
                    continue
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                c = qpow(Fraction(ctx.skew.pair(alpha, beta), 2), ctx.L) * ca * cb
                out[gamma] = out[gamma] + c if gamma in out else c
        return GradedSeries(ctx, out)

    def _compatible(self, other) -> None:
        if not isinstance(other, GradedSeries) or other.ctx != self.ctx:
            raise ContextMismatch("graded series from different contexts")

    def truncate(self, D2: int) -> "GradedSeries":
        ctx2 = SeriesContext(self.ctx.n, D2, self.ctx.skew, self.ctx.L)
        return GradedSeries(ctx2, {b: c for b, c in self.terms.items() if sum(b) <= D2})

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        if self.ctx.n != other.ctx.n or self.ctx.D != other.ctx.D:
            return False
        if self.ctx.skew != other.ctx.skew:
            return False
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[b] == other.terms[b] for b in self.terms)

    def __repr__(self):
        items = ", ".join(
            f"y^{list(b)}: {c.pretty()}" for b, c in sorted(self.terms.items())
        )
        return f"GradedSeries(D={self.ctx.D}, {{{items}}})"

    def to_json(self) -> dict:
        return {
            "n": self.ctx.n,
            "D": self.ctx.D,
            "L": self.ctx.L,
            "terms": [
                {"beta": list(b), "coeff": c.to_json()}
                for b, c in sorted(self.terms.items())
            ],
        }

    @staticmethod
    def from_json(obj: dict, skew: SkewForm | None = None) -> "GradedSeries":
        """Rebuild a series; the skew form (absent from the JSON) defaults to zero."""
        n = int(obj["n"])
        if skew is None:
            skew = SkewForm(tuple((0,) * n for _ in range(n)))
        ctx = SeriesContext(n, int(obj["D"]), skew, int(obj["L"]))
        return GradedSeries(
            ctx,
            {
                tuple(t["beta"]): QScalar.from_json(t["coeff"])
                for t in obj["terms"]
            },
        )


def ts_unit(ctx: SeriesContext) -> GradedSeries:
    return GradedSeries(ctx, {(0,) * ctx.n: QScalar.one(ctx.L)})


def ts_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    return a * b


def ts_bar(a: GradedSeries) -> GradedSeries:
    """Bar involution q -> q^(-1): coefficient map on the normally-ordered basis."""
    return GradedSeries(a.ctx, {b: bar_scalar(c) for b, c in a.terms.items()})


def dilog_factor(alpha, eps: int, ctx: SeriesContext) -> GradedSeries:
    """Quantum dilogarithm E(y^alpha; q^eps), truncated to degree D.

    Term m contributes q^(-eps*m^2/2) / (q^(-eps))_m at grading m*alpha.
    """
    alpha = tuple(int(x) for x in alpha)
    if len(alpha) != ctx.n:
        raise LengthMismatch("alpha length does not match rank")
    if any(x < 0 for x in alpha) or not any(alpha):
        raise ZeroAlpha(f"dilogarithm grading must be a nonzero vector in N^n: {alpha}")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    w = sum(alpha)
    terms: dict[Vec, QScalar] = {}
    for m in range(ctx.D // w + 1):
        coeff = qpow(Fraction(-eps * m * m, 2), ctx.L) / pochhammer(m, -eps, ctx.L)
        terms[tuple(m * x for x in alpha)] = coeff
    return GradedSeries(ctx, terms)


def normal_order_exponent(kvec, alphas, skew: SkewForm) -> Fraction:
    """Exponent of q in y^(k1*a1) ... y^(kT*aT) = q^(...) y^(sum kt*at).

    Equals (1/2) * sum_{i<j} k_i k_j <a_i, a_j>.
    """
    if len(kvec) != len(alphas):
        raise LengthMismatch("k-vector and grading list differ in length")
    out = Fraction(0)
    for i in range(len(kvec)):
        if not kvec[i]:
            continue
        for j in range(i + 1, len(kvec)):
            if kvec[j]:
                out += Fraction(kvec[i] * kvec[j] * skew.pair(alphas[i], alphas[j]), 2)
    return out


def series_equal(a: GradedSeries, b: GradedSeries) -> bool:
    """Mathematical equality up to min(D_a, D_b), tolerating different L."""
    D = min(a.ctx.D, b.ctx.D)
    at = {k: v for k, v in a.terms.items() if sum(k) <= D}
    bt = {k: v for k, v in b.terms.items() if sum(k) <= D}
    if set(at) != set(bt):
        return False
    return all(at[k] == bt[k] for k in at)
