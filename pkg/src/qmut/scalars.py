"""Exact arithmetic: rational functions in v = q^(1/L), affine and quadratic forms.

Every coefficient in the engine is a QScalar: a reduced fraction of
integer-coefficient polynomials in v, where v = q^(1/L) for a positive
integer L fixed per computation.  No floating point anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DenominatorMismatch, LengthMismatch

# ---------------------------------------------------------------------------
# integer polynomials in one variable, ascending coefficient tuples
# ---------------------------------------------------------------------------

PZERO: tuple[int, ...] = ()
PONE: tuple[int, ...] = (1,)


def ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a, b):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return ptrim(out)


def pneg(a):
    return tuple(-c for c in a)


def pmul(a, b):
    if not a or not b:
        return PZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return ptrim(out)


def pshift(a, k: int):
    """Multiply by v^k (k >= 0)."""
    if not a:
        return PZERO
    return tuple([0] * k) + tuple(a)


def pcontent(a) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            break
    return g if g else 1


def _pseudo_rem(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # prem(a, b) up to content; requires b != 0
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[shift + i] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return tuple(r)


def pgcd(a, b):
    """Primitive-PRS gcd over the integers, positive leading coefficient."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        ca, cb = pcontent(a), pcontent(b)
        pa = tuple(c // ca for c in a)
        pb = tuple(c // cb for c in b)
        if len(pa) < len(pb):
            pa, pb = pb, pa
        while pb:
            r = _pseudo_rem(pa, pb)
            pa, pb = pb, (tuple(c // pcontent(r) for c in r) if r else PZERO)
        cg = math.gcd(ca, cb)
        g = tuple(c * cg for c in pa)
    if g and g[-1] < 0:
        g = pneg(g)
    return g


def pdivexact(a, b):
    """Exact division a / b; b must divide a."""
    if not a:
        return PZERO
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = r[len(b) - 1 + i]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c // lb
        if q[i]:
            for j, cb in enumerate(b):
                r[i + j] -= q[i] * cb
    if any(r):
        raise ArithmeticError("inexact polynomial division")
    return ptrim(q)


def pinflate(a, m: int):
    """Substitute v -> v^m."""
    if m == 1 or not a:
        return tuple(a)
    out = [0] * ((len(a) - 1) * m + 1)
    for i, c in enumerate(a):
        out[i * m] = c
    return ptrim(out)


def preverse(a):
    """v^deg(a) * a(1/v); drops trailing zeros of the reversal."""
    return ptrim(list(reversed(a)))


# ---------------------------------------------------------------------------
# QScalar: num/den of integer polynomials in v = q^(1/L)
# ---------------------------------------------------------------------------

class QScalar:
    """Exact rational function in v = q^(1/L).

    Canonical form: gcd(num, den) = 1 and den has positive leading
    coefficient, so equality is structural at equal L.
    """

    __slots__ = ("L", "num", "den")

    def __init__(self, L: int, num, den=PONE, _reduced: bool = False):
        if L < 1:
            raise ValueError("L must be a positive integer")
        num = ptrim(list(num))
        den = ptrim(list(den))
        if not den:
            raise ZeroDivisionError("QScalar with zero denominator")
        if not _reduced:
            if not num:
                den = PONE
            else:
                g = pgcd(num, den)
                if g != PONE:
                    num = pdivexact(num, g)
                    den = pdivexact(den, g)
                if den[-1] < 0:
                    num, den = pneg(num), pneg(den)
        self.L = L
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(c: int, L: int = 1) -> "QScalar":
        return QScalar(L, (c,) if c else PZERO, PONE, _reduced=True)

    @staticmethod
    def from_fraction(x: Fraction, L: int = 1) -> "QScalar":
        x = Fraction(x)
        num = (x.numerator,) if x.numerator else PZERO
        return QScalar(L, num, (x.denominator,), _reduced=True)

    @staticmethod
    def zero(L: int = 1) -> "QScalar":
        return QScalar(L, PZERO, PONE, _reduced=True)

    @staticmethod
    def one(L: int = 1) -> "QScalar":
        return QScalar(L, PONE, PONE, _reduced=True)

    # -- context -----------------------------------------------------------

    def with_denominator(self, L2: int) -> "QScalar":
        """Rescale to v' = q^(1/L2); L must divide L2."""
        if L2 == self.L:
            return self
        if L2 % self.L:
            raise DenominatorMismatch(f"cannot rescale L={self.L} to L={L2}")
        m = L2 // self.L
        return QScalar(L2, pinflate(self.num, m), pinflate(self.den, m), _reduced=True)

    def minimized(self) -> "QScalar":
        """Smallest L representing the same element (canonical display form)."""
        g = self.L
        for p in (self.num, self.den):
            for i, c in enumerate(p):
                if c and i:
                    g = math.gcd(g, i)
                if g == 1:
                    return self
        if g == 1:
            return self
        def deflate(p):
            return tuple(p[i] for i in range(0, len(p), g))
        return QScalar(self.L // g, deflate(self.num), deflate(self.den), _reduced=True)

    def _pair(self, other):
        if isinstance(other, int):
            other = QScalar.from_int(other, self.L)
        if not isinstance(other, QScalar):
            return None, None
        if self.L == other.L:
            return self, other
        L = self.L * other.L // math.gcd(self.L, other.L)
        return self.with_denominator(L), other.with_denominator(L)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == PONE and self.den == PONE

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return QScalar(a.L, padd(pmul(a.num, b.den), pmul(b.num, a.den)), pmul(a.den, b.den))

    __radd__ = __add__

    def __neg__(self):
        return QScalar(self.L, pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return QScalar(a.L, pmul(a.num, b.num), pmul(a.den, b.den))

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QScalar")
        return QScalar(self.L, self.den, self.num, _reduced=False)

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = QScalar.one(self.L)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.num == b.num and a.den == b.den

    def __hash__(self):
        m = self.minimized()
        return hash((m.L, m.num, m.den))

    def __repr__(self):
        return f"QScalar(L={self.L}, {self.pretty()})"

    # -- display / serialization ---------------------------------------------

    def pretty(self) -> str:
        """Human-readable form q^(a/b)*P(q)/Q(q); denominators shown as 1 - q - ..."""
        x = self.minimized()
        if x.is_zero():
            return "0"
        pn, pd = list(x.num), list(x.den)
        shift = 0
        while pn and pn[0] == 0:
            pn.pop(0)
            shift += 1
        while pd and pd[0] == 0:
            pd.pop(0)
            shift -= 1
        if pd[0] < 0:
            pn = [-c for c in pn]
            pd = [-c for c in pd]
        neg = all(c <= 0 for c in pn)
        if neg:
            pn = [-c for c in pn]

        def qmono(e: int) -> str:
            p = Fraction(e, x.L)
            if p == 0:
                return "1"
            if p == 1:
                return "q"
            if p.denominator == 1:
                return f"q^{p.numerator}"
            return f"q^({p})"

        def poly(p) -> str:
            terms = []
            for i, c in enumerate(p):
                if not c:
                    continue
                m = qmono(i)
                if m == "1":
                    terms.append(str(c))
                elif abs(c) == 1:
                    terms.append(m if c > 0 else f"-{m}")
                else:
                    terms.append(f"{c}*{m}")
            out = terms[0]
            for t in terms[1:]:
                out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
            return out

        parts = []
        if pn != [1] or not shift:
            s = poly(pn)
            parts.append(f"({s})" if ("+" in s or " - " in s) else s)
        if shift:
            parts.append(qmono(shift))
        out = "*".join(parts)
        if pd != [1]:
            s = poly(pd)
            out += f"/({s})" if ("+" in s or " - " in s or "*" in s) else f"/{s}"
        return ("-" if neg else "") + out

    def to_json(self) -> dict:
        return {"L": self.L, "num": list(self.num), "den": list(self.den)}

    @staticmethod
    def from_json(obj: dict) -> "QScalar":
        return QScalar(int(obj["L"]), [int(c) for c in obj["num"]], [int(c) for c in obj["den"]])


def qpow(e, L: int) -> QScalar:
    """The monomial q^e = v^(e*L); e*L must be an integer."""
    e = Fraction(e)
    m = e * L
    if m.denominator != 1:
        raise DenominatorMismatch(f"exponent {e} not representable with L={L}")
    m = m.numerator
    if m >= 0:
        return QScalar(L, pshift(PONE, m), PONE, _reduced=True)
    return QScalar(L, PONE, pshift(PONE, -m), _reduced=True)


def pochhammer(k: int, sign: int, L: int) -> QScalar:
    """(q^sign)_k = prod_{i=1..k} (1 - q^(sign*i)), sign in {+1, -1}."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = QScalar.one(L)
    for i in range(1, k + 1):
        out = out * (QScalar.one(L) - qpow(Fraction(sign * i), L))
    return out


def bar_scalar(x: QScalar) -> QScalar:
    """Substitute q -> q^(-1) (i.e. v -> 1/v); an involution."""
    if x.is_zero():
        return x
    dn, dd = len(x.num) - 1, len(x.den) - 1
    num, den = preverse(x.num), preverse(x.den)
    if dn >= dd:
        den = pshift(den, dn - dd)
    else:
        num = pshift(num, dd - dn)
    return QScalar(x.L, num, den)


# ---------------------------------------------------------------------------
# affine-linear forms in the k-variables (plus initial s-unknowns)
# ---------------------------------------------------------------------------

class AffineForm:
    """Exact affine-linear expression c0 + sum c_t*k_t (+ sum d_i*s_i).

    The s-part carries the initial s-unknowns during a trace; after the
    boundary solve all stored forms are pure-k.  Zero coefficients are
    never stored, so equality is structural.
    """

    __slots__ = ("k", "s", "const")

    def __init__(self, k=None, s=None, const=0):
        self.k = {i: Fraction(c) for i, c in (k or {}).items() if c}
        self.s = {i: Fraction(c) for i, c in (s or {}).items() if c}
        self.const = Fraction(const)

    @staticmethod
    def kvar(t: int) -> "AffineForm":
        return AffineForm(k={t: 1})

    @staticmethod
    def svar(i: int) -> "AffineForm":
        return AffineForm(s={i: 1})

    @staticmethod
    def constant(c) -> "AffineForm":
        return AffineForm(const=c)

    def is_pure_k(self) -> bool:
        return not self.s

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AffineForm.constant(other)
        if not isinstance(other, AffineForm):
            return NotImplemented
        k = dict(self.k)
        for i, c in other.k.items():
            k[i] = k.get(i, Fraction(0)) + c
        s = dict(self.s)
        for i, c in other.s.items():
            s[i] = s.get(i, Fraction(0)) + c
        return AffineForm(k, s, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AffineForm.constant(other)
        if not isinstance(other, AffineForm):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return AffineForm(
            {i: v * c for i, v in self.k.items()},
            {i: v * c for i, v in self.s.items()},
            self.const * c,
        )

    __rmul__ = __mul__

    def substitute_s(self, solution: dict[int, "AffineForm"]) -> "AffineForm":
        """Replace every s-unknown by its solved pure-k form."""
        out = AffineForm(self.k, None, self.const)
        for i, c in self.s.items():
            out = out + solution[i] * c
        return out

    def __eq__(self, other):
        if not isinstance(other, AffineForm):
            return NotImplemented
        return self.k == other.k and self.s == other.s and self.const == other.const

    def __hash__(self):
        return hash((frozenset(self.k.items()), frozenset(self.s.items()), self.const))

    def __repr__(self):
        parts = [f"{c}*k{i}" for i, c in sorted(self.k.items())]
        parts += [f"{c}*s{i}" for i, c in sorted(self.s.items())]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)

    def to_json(self) -> dict:
        coeffs = {f"k{i}": str(c) for i, c in sorted(self.k.items())}
        coeffs.update({f"s{i}": str(c) for i, c in sorted(self.s.items())})
        return {"coeffs": coeffs, "const": str(self.const)}

    @staticmethod
    def from_json(obj: dict) -> "AffineForm":
        k, s = {}, {}
        for name, c in obj.get("coeffs", {}).items():
            target = k if name.startswith("k") else s
            target[int(name[1:])] = Fraction(c)
        return AffineForm(k, s, Fraction(obj.get("const", 0)))


def eval_affine(f: AffineForm, k) -> Fraction:
    """Exact value of a pure-k form at an integer (or rational) vector."""
    if f.s:
        raise LengthMismatch("form still contains unsolved s-variables")
    if f.k and max(f.k) > len(k):
        raise LengthMismatch(f"need k of length >= {max(f.k)}, got {len(k)}")
    out = f.const
    for i, c in f.k.items():
        out += c * k[i - 1]
    return out


# ---------------------------------------------------------------------------
# quadratic forms x^T M x + l^T x + c over a fixed variable count
# ---------------------------------------------------------------------------

class QuadForm:
    """Symmetric rational quadratic form: value(x) = x^T M x + l^T x + c."""

    __slots__ = ("nvars", "mat", "lin", "const")

    def __init__(self, nvars: int, mat=None, lin=None, const=0):
        self.nvars = nvars
        if mat is None:
            mat = [[Fraction(0)] * nvars for _ in range(nvars)]
        self.mat = tuple(tuple(Fraction(c) for c in row) for row in mat)
        if len(self.mat) != nvars or any(len(r) != nvars for r in self.mat):
            raise LengthMismatch("matrix shape does not match nvars")
        for i in range(nvars):
            for j in range(i):
                if self.mat[i][j] != self.mat[j][i]:
                    raise ValueError("quadratic form matrix must be symmetric")
        self.lin = tuple(Fraction(c) for c in (lin or [0] * nvars))
        if len(self.lin) != nvars:
            raise LengthMismatch("linear part length does not match nvars")
        self.const = Fraction(const)

    @staticmethod
    def zero(nvars: int) -> "QuadForm":
        return QuadForm(nvars)

    @staticmethod
    def from_matrix(mat, scale=1) -> "QuadForm":
        """Form x^T (scale*A) x for a symmetric integer/rational matrix A."""
        n = len(mat)
        s = Fraction(scale)
        return QuadForm(n, [[Fraction(c) * s for c in row] for row in mat])

    @staticmethod
    def from_affine_product(f, g, nvars: int, index) -> "QuadForm":
        """Quadratic form equal to f*g for affine forms, via an index map.

        `index` maps an AffineForm variable key ('k', t) / ('s', i) to a
        0-based position in the nvars-dimensional variable space.
        """
        def vec(h):
            v = [Fraction(0)] * nvars
            for t, c in h.k.items():
                v[index[("k", t)]] += c
            for i, c in h.s.items():
                v[index[("s", i)]] += c
            return v, h.const

        a, ca = vec(f)
        b, cb = vec(g)
        mat = [[Fraction(0)] * nvars for _ in range(nvars)]
        for i in range(nvars):
            if a[i] or b[i]:
                for j in range(nvars):
                    x = (a[i] * b[j] + b[i] * a[j]) / 2
                    if x:
                        mat[i][j] += x
        lin = [a[i] * cb + b[i] * ca for i in range(nvars)]
        return QuadForm(nvars, mat, lin, ca * cb)

    def __add__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        if other.nvars != self.nvars:
            raise LengthMismatch("adding quadratic forms of different sizes")
        mat = [
            [self.mat[i][j] + other.mat[i][j] for j in range(self.nvars)]
            for i in range(self.nvars)
        ]
        lin = [self.lin[i] + other.lin[i] for i in range(self.nvars)]
        return QuadForm(self.nvars, mat, lin, self.const + other.const)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, c):
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        c = Fraction(c)
        mat = [[x * c for x in row] for row in self.mat]
        lin = [x * c for x in self.lin]
        return QuadForm(self.nvars, mat, lin, self.const * c)

    __rmul__ = __mul__

    def value(self, x) -> Fraction:
        if len(x) != self.nvars:
            raise LengthMismatch(f"need vector of length {self.nvars}")
        out = self.const
        for i in range(self.nvars):
            if x[i]:
                out += self.lin[i] * x[i]
                for j in range(self.nvars):
                    if self.mat[i][j] and x[j]:
                        out += self.mat[i][j] * x[i] * x[j]
        return out

    def exponent_denominator(self) -> int:
        """Smallest L with L*value(x) integral for every integer vector x."""
        L = 1
        for i in range(self.nvars):
            L = math.lcm(L, self.mat[i][i].denominator)
            L = math.lcm(L, self.lin[i].denominator)
            for j in range(i + 1, self.nvars):
                L = math.lcm(L, (2 * self.mat[i][j]).denominator)
        return math.lcm(L, self.const.denominator)

    def __eq__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.mat == other.mat
            and self.lin == other.lin
            and self.const == other.const
        )

    def __hash__(self):
        return hash((self.nvars, self.mat, self.lin, self.const))

    def __repr__(self):
        terms = []
        for i in range(self.nvars):
            for j in range(i, self.nvars):
                c = self.mat[i][j] if i == j else 2 * self.mat[i][j]
                if c:
                    terms.append(f"{c}*k{i+1}*k{j+1}")
        terms += [f"{c}*k{i+1}" for i, c in enumerate(self.lin) if c]
        if self.const or not terms:
            terms.append(str(self.const))
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "matrix": [[str(c) for c in row] for row in self.mat],
            "linear": [str(c) for c in self.lin],
            "const": str(self.const),
        }
