"""Quivers, matrix mutation, framed/ice quivers, c-vectors and canonical forms.

A quiver on vertices 1..n with no loops or 2-cycles is stored as its
skew-symmetric exchange matrix B with B[i][j] = (#arrows i->j) - (#arrows j->i);
arrow multiplicities are recovered as max(B[i][j], 0).
"""

from __future__ import annotations

import enum
import itertools
import warnings

from .errors import BadVertex, LoopArrow, PhiNotIsomorphism, SignIncoherent, TwoCycle

Matrix = tuple[tuple[int, ...], ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(int(c) for c in row) for row in rows)


class Permutation:
    """Bijection on {1..n}; image[i-1] is the image of vertex i."""

    __slots__ = ("image",)

    def __init__(self, image):
        self.image = tuple(int(i) for i in image)
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {image}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(range(1, n + 1))

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __len__(self):
        return len(self.image)

    def inverse(self) -> "Permutation":
        img = [0] * len(self.image)
        for i, j in enumerate(self.image, start=1):
            img[j - 1] = i
        return Permutation(img)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        return Permutation(self(other(i)) for i in range(1, len(other) + 1))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.image, start=1))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self):
        return hash(self.image)

    def __repr__(self):
        return f"Permutation({list(self.image)})"

    def cycles(self) -> str:
        sep = " " if len(self.image) >= 10 else ""
        seen, out = set(), []
        for i in range(1, len(self.image) + 1):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self(j)
            if len(cyc) > 1:
                out.append("(" + sep.join(map(str, cyc)) + ")")
        return "".join(out) or "id"


class VertexSign(enum.Enum):
    GREEN = 1
    RED = -1


class Quiver:
    """Immutable quiver given by its skew-symmetric exchange matrix.

    Connectivity is advisory: a warning on explicit construction, never an
    error, and internal reconstructions (mutation, relabeling) stay silent.
    """

    __slots__ = ("n", "b")

    def __init__(self, b, _warn: bool = True):
        self.b = _freeze(b)
        self.n = len(self.b)
        if self.n < 1:
            raise ValueError("quiver needs at least one vertex")
        for i in range(self.n):
            if len(self.b[i]) != self.n:
                raise ValueError("exchange matrix must be square")
            for j in range(self.n):
                if self.b[i][j] != -self.b[j][i]:
                    raise ValueError("exchange matrix must be skew-symmetric")
        if _warn and self.n > 1 and not self._connected():
            warnings.warn("quiver is not connected", stacklevel=3)

    def _connected(self) -> bool:
        seen, stack = {0}, [0]
        while stack:
            i = stack.pop()
            for j in range(self.n):
                if j not in seen and self.b[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        return len(seen) == self.n

    def arrows(self) -> list[tuple[int, int, int]]:
        """(source, target, multiplicity) triples, 1-based, source < lex order."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    out.append((i + 1, j + 1, self.b[i][j]))
        return out

    def arrow_mult(self, i: int, j: int) -> int:
        """Number of arrows i -> j (1-based)."""
        return max(self.b[i - 1][j - 1], 0)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.b == other.b

    def __hash__(self):
        return hash(self.b)

    def __repr__(self):
        return f"Quiver(n={self.n}, arrows={self.arrows()})"

    def to_json(self) -> dict:
        return {"n": self.n, "arrows": [list(a) for a in self.arrows()]}

    @staticmethod
    def from_json(obj: dict) -> "Quiver":
        n = int(obj["n"])
        q_arrows = obj.get("arrows")
        q_matrix = obj.get("b_matrix")
        built = None
        if q_arrows is not None:
            built = quiver_from_arrows(n, [tuple(a) for a in q_arrows])
        if q_matrix is not None:
            from_mat = Quiver(q_matrix)
            if built is not None and built != from_mat:
                raise ValueError("arrows and b_matrix disagree")
            built = from_mat
        if built is None:
            raise ValueError("quiver JSON needs 'arrows' or 'b_matrix'")
        return built


def _check_vertex(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise BadVertex(f"vertex {k} out of range 1..{n}")


def quiver_from_arrows(n: int, arrows) -> Quiver:
    """Build a quiver from (source, target, multiplicity) triples."""
    b = [[0] * n for _ in range(n)]
    for arrow in arrows:
        i, j, *rest = arrow
        m = rest[0] if rest else 1
        _check_vertex(n, i)
        _check_vertex(n, j)
        if i == j:
            raise LoopArrow(f"loop at vertex {i}")
        if m < 1:
            raise ValueError(f"multiplicity must be >= 1, got {m}")
        if b[j - 1][i - 1] > 0:
            raise TwoCycle(f"both ({j},{i}) and ({i},{j}) supplied")
        b[i - 1][j - 1] += m
        b[j - 1][i - 1] -= m
    return Quiver(b)


def mutate_matrix(b: Matrix, k0: int) -> Matrix:
    """Fomin-Zelevinsky matrix mutation at 0-based index k0."""
    n = len(b)
    out = [list(row) for row in b]
    for i in range(n):
        for j in range(n):
            if i == k0 or j == k0:
                out[i][j] = -b[i][j]
            else:
                p = b[i][k0] * b[k0][j]
                if p > 0:
                    out[i][j] = b[i][j] + (p if b[i][k0] > 0 else -p)
    return _freeze(out)


def mutate(q: Quiver, k: int) -> Quiver:
    """Mutated quiver mu_k(q); pure, the input is unchanged."""
    _check_vertex(q.n, k)
    return Quiver(mutate_matrix(q.b, k - 1), _warn=False)


class IceQuiver:
    """Framed-quiver state: mutable block B(t) plus c-matrix block C(t)."""

    __slots__ = ("base", "cmat")

    def __init__(self, base: Quiver, cmat):
        self.base = base
        self.cmat = _freeze(cmat)
        n = base.n
        if len(self.cmat) != n or any(len(r) != n for r in self.cmat):
            raise ValueError("c-matrix must be n x n")

    @property
    def n(self) -> int:
        return self.base.n

    def c_vector(self, v: int) -> tuple[int, ...]:
        _check_vertex(self.n, v)
        return self.cmat[v - 1]

    def full_matrix(self) -> Matrix:
        """The assembled (2n) x (2n) skew-symmetric matrix [[B, C], [-C^T, 0]]."""
        n = self.n
        out = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                out[i][j] = self.base.b[i][j]
                out[i][n + j] = self.cmat[i][j]
                out[n + i][j] = -self.cmat[j][i]
        return _freeze(out)

    @staticmethod
    def from_full_matrix(full: Matrix) -> "IceQuiver":
        n = len(full) // 2
        b = [[full[i][j] for j in range(n)] for i in range(n)]
        c = [[full[i][n + j] for j in range(n)] for i in range(n)]
        return IceQuiver(Quiver(b, _warn=False), c)

    def __eq__(self, other):
        return (
            isinstance(other, IceQuiver)
            and self.base == other.base
            and self.cmat == other.cmat
        )

    def __hash__(self):
        return hash((self.base, self.cmat))

    def __repr__(self):
        return f"IceQuiver(b={self.base.b}, c={self.cmat})"

    def to_json(self) -> dict:
        obj = self.base.to_json()
        obj["c_matrix"] = [list(row) for row in self.cmat]
        return obj

    @staticmethod
    def from_json(obj: dict) -> "IceQuiver":
        base = Quiver.from_json(obj)
        return IceQuiver(base, obj["c_matrix"])


def framed(q: Quiver) -> IceQuiver:
    """Framed quiver: one frozen vertex i' and arrow i -> i' per vertex, c_i = e_i."""
    n = q.n
    return IceQuiver(q, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def vertex_sign(iq: IceQuiver, v: int) -> VertexSign:
    """GREEN if c_v >= 0 (nonzero), RED if c_v <= 0 (nonzero)."""
    row = iq.c_vector(v)
    if any(c > 0 for c in row):
        if any(c < 0 for c in row):
            raise SignIncoherent(f"c-vector of vertex {v} mixes signs: {row}")
        return VertexSign.GREEN
    if any(c < 0 for c in row):
        return VertexSign.RED
    raise SignIncoherent(f"c-vector of vertex {v} is zero")


def mutate_ice(iq: IceQuiver, k: int) -> IceQuiver:
    """Mutate an ice quiver at mutable vertex k.

    The mutable block follows matrix mutation; the c-matrix rows follow the
    sign-split update: the mutated row is negated, and every other row i
    gains (#arrows i->k) * c_k for a green k, (#arrows k->i) * c_k for a
    red k.  This agrees with mutating the assembled (2n) x (2n) matrix.
    """
    sign = vertex_sign(iq, k)
    k0 = k - 1
    q = iq.base
    ck = iq.cmat[k0]
    rows = []
    for i in range(iq.n):
        if i == k0:
            rows.append([-c for c in ck])
        else:
            m = q.arrow_mult(i + 1, k) if sign is VertexSign.GREEN else q.arrow_mult(k, i + 1)
            rows.append([iq.cmat[i][j] + m * ck[j] for j in range(iq.n)])
    return IceQuiver(mutate(q, k), rows)


def mutate_ice_full(iq: IceQuiver, k: int) -> IceQuiver:
    """Reference path: mutate the assembled (2n) x (2n) matrix and re-split."""
    _check_vertex(iq.n, k)
    return IceQuiver.from_full_matrix(mutate_matrix(iq.full_matrix(), k - 1))


def reddening_end(iq: IceQuiver, original: Quiver | None = None) -> Permutation | None:
    """The boundary permutation if C = -P for a permutation matrix P, else None.

    Row i of C equal to -e_phi(i) defines phi; when the original quiver is
    supplied the quiver isomorphism B(T)[i][j] == B(0)[phi(i)][phi(j)] is
    verified as well.
    """
    n = iq.n
    image = []
    for row in iq.cmat:
        ones = [j for j, c in enumerate(row) if c == -1]
        if len(ones) != 1 or any(c not in (0, -1) for c in row):
            return None
        image.append(ones[0] + 1)
    if sorted(image) != list(range(1, n + 1)):
        return None
    phi = Permutation(image)
    if original is not None:
        for i in range(n):
            for j in range(n):
                if iq.base.b[i][j] != original.b[phi(i + 1) - 1][phi(j + 1) - 1]:
                    raise PhiNotIsomorphism(
                        "final c-matrix is a negative permutation matrix but "
                        "the induced map is not a quiver isomorphism"
                    )
    return phi


def relabel(iq: IceQuiver, sigma: Permutation) -> IceQuiver:
    """Rename mutable vertex i to sigma(i); frozen vertices stay fixed."""
    n = iq.n
    b = [[0] * n for _ in range(n)]
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        si = sigma(i + 1) - 1
        c[si] = list(iq.cmat[i])
        for j in range(n):
            b[si][sigma(j + 1) - 1] = iq.base.b[i][j]
    return IceQuiver(Quiver(b, _warn=False), c)


def _vertex_invariants(iq: IceQuiver) -> list[tuple]:
    """Per-vertex data preserved by any frozen isomorphism."""
    inv = []
    for i in range(iq.n):
        brow = tuple(sorted(iq.base.b[i]))
        inv.append((iq.cmat[i], brow))
    return inv


def _class_permutations(inv_a, inv_b):
    """Permutations sigma (as 0-based target lists) with inv_b[sigma(i)] == inv_a[i]."""
    if sorted(inv_a) != sorted(inv_b):
        return
    slots: dict[tuple, list[int]] = {}
    for j, key in enumerate(inv_b):
        slots.setdefault(key, []).append(j)
    groups = []
    for key in sorted(slots):
        members = [i for i, k in enumerate(inv_a) if k == key]
        groups.append((members, slots[key]))
    def rec(g, assign):
        if g == len(groups):
            yield assign
            return
        members, targets = groups[g]
        for perm in itertools.permutations(targets):
            nxt = dict(assign)
            for i, j in zip(members, perm):
                nxt[i] = j
            yield from rec(g + 1, nxt)
    yield from rec(0, {})


def frozen_isomorphic(a: IceQuiver, b: IceQuiver) -> Permutation | None:
    """A mutable-vertex relabeling sending a to b (frozen vertices fixed), or None."""
    if a.n != b.n:
        return None
    inv_a, inv_b = _vertex_invariants(a), _vertex_invariants(b)
    for assign in _class_permutations(inv_a, inv_b):
        sigma = Permutation(assign[i] + 1 for i in range(a.n))
        if relabel(a, sigma) == b:
            return sigma
    return None


def canonical_key(iq: IceQuiver) -> bytes:
    """Deduplication key: equal keys exactly for frozen-isomorphic ice quivers.

    Lexicographic minimum of the serialized (B, C) pair over vertex
    relabelings consistent with the per-vertex invariants.  Legal mutation
    states have pairwise distinct c-vectors (det C = +-1), so the candidate
    set is almost always a single permutation.
    """
    inv = _vertex_invariants(iq)
    best = None
    for assign in _class_permutations(inv, sorted(inv)):
        sigma = Permutation(assign[i] + 1 for i in range(iq.n))
        r = relabel(iq, sigma)
        ser = repr((r.base.b, r.cmat)).encode()
        if best is None or ser < best:
            best = ser
    assert best is not None
    return best
