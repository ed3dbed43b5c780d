"""qmut: exact engine for quiver mutation loops.

Computes graded partition q-series, ordered quantum dilogarithm products
(combinatorial DT invariants), verifies their equality along reddening
sequences, and searches for maximal green / reddening sequences.
"""

from .errors import (
    BadVertex,
    CapExceeded,
    ContextMismatch,
    DegenerateLoop,
    DenominatorMismatch,
    LengthMismatch,
    LoopArrow,
    NotReddening,
    PhiNotIsomorphism,
    QmutError,
    SignIncoherent,
    TwoCycle,
    ZeroAlpha,
)
from .quiver import (
    IceQuiver,
    Permutation,
    Quiver,
    VertexSign,
    canonical_key,
    framed,
    frozen_isomorphic,
    mutate,
    mutate_ice,
    quiver_from_arrows,
    reddening_end,
    relabel,
    vertex_sign,
)
from .scalars import AffineForm, QScalar, QuadForm, bar_scalar, eval_affine, pochhammer, qpow
from .torus import (
    GradedSeries,
    SeriesContext,
    SkewForm,
    dilog_factor,
    normal_order_exponent,
    series_equal,
    ts_bar,
    ts_mul,
    ts_unit,
)
from .loops import (
    MutationLoop,
    Report,
    Trace,
    TraceStep,
    check_backtracking,
    check_quad_identity,
    check_state_vector,
    dt_product,
    partition_qseries,
    run_ice_trace,
    run_trace,
    solve_boundary,
    verify_main,
    weight_exponent,
)
from .search import SearchConfig, SearchMode, classify_sequence, find_sequences
from .corpus import CorpusEntry, alternating_loop, corpus, corpus_entry, generalized_cartan

__version__ = "0.1.0"
