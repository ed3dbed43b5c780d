"""Exception types shared across the engine."""


class QmutError(Exception):
    """Base class for all engine errors."""


class BadVertex(QmutError):
    """Vertex index outside 1..n."""


class LoopArrow(QmutError):
    """Arrow with equal source and target."""


class TwoCycle(QmutError):
    """Both (i, j) and (j, i) arrows supplied."""


class SignIncoherent(QmutError):
    """A c-vector row mixes signs or is zero; indicates corrupted state."""


class DenominatorMismatch(QmutError):
    """Requested q-power e with e*L not an integer."""


class LengthMismatch(QmutError):
    """Vector length does not match the declared variable count."""


class ContextMismatch(QmutError):
    """Graded series with different (n, D, skew, L) contexts combined."""


class ZeroAlpha(QmutError):
    """Dilogarithm factor requested for the zero grading vector."""


class DegenerateLoop(QmutError):
    """Boundary linear system for the initial s-variables is singular."""


class PhiNotIsomorphism(QmutError):
    """Boundary permutation does not map the final quiver onto the initial one."""


class NotReddening(QmutError):
    """Operation requires a reddening loop (final c-matrix = -permutation)."""


class CapExceeded(QmutError):
    """Search size cap (vertex count or state cache) exceeded."""
