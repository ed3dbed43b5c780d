"""Breadth-first search for maximal green and reddening sequences.

State = ice quiver; children are mutations at admissible vertices in
ascending order, so results come out in length-then-lex order.  Dedup
uses the canonical key, which identifies frozen-isomorphic states; a
candidate is classified before the dedup filter so no result is lost,
only its re-expansion.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

from .errors import CapExceeded
from .quiver import (
    IceQuiver,
    Permutation,
    Quiver,
    VertexSign,
    canonical_key,
    framed,
    mutate_ice,
    reddening_end,
    vertex_sign,
)

HARD_VERTEX_CAP = 10
DEFAULT_STATE_CAP = 10**6


class SearchMode(enum.Enum):
    MAXIMAL_GREEN = "maximal-green"
    REDDENING = "reddening"


@dataclass(frozen=True)
class SearchConfig:
    max_len: int
    mode: SearchMode = SearchMode.MAXIMAL_GREEN
    dedupe: bool = True
    limit: int | None = None

    def __post_init__(self):
        if self.max_len < 1:
            raise ValueError("max_len must be >= 1")


def _state_cap() -> int:
    raw = os.environ.get("QMUT_MAX_STATES")
    return int(raw) if raw else DEFAULT_STATE_CAP


def find_sequences(q: Quiver, cfg: SearchConfig) -> list[tuple[tuple[int, ...], Permutation]]:
    """All reddening ends reachable within cfg.max_len mutations.

    MAXIMAL_GREEN expands only green vertices; REDDENING expands every
    (sign-coherent) vertex.  Returns (sequence, phi) pairs sorted by
    length then lexicographically.
    """
    if q.n > HARD_VERTEX_CAP:
        raise CapExceeded(f"search supports n <= {HARD_VERTEX_CAP}, got {q.n}")
    cap = _state_cap()
    start = framed(q)
    results: list[tuple[tuple[int, ...], Permutation]] = []
    seen: set[bytes] = {canonical_key(start)} if cfg.dedupe else set()
    frontier: list[tuple[IceQuiver, tuple[int, ...]]] = [(start, ())]
    depth = 0
    while frontier and depth < cfg.max_len:
        depth += 1
        nxt: list[tuple[IceQuiver, tuple[int, ...]]] = []
        for state, seq in frontier:
            for v in range(1, q.n + 1):
                sign = vertex_sign(state, v)
                if cfg.mode is SearchMode.MAXIMAL_GREEN and sign is not VertexSign.GREEN:
                    continue
                child = mutate_ice(state, v)
                child_seq = seq + (v,)
                phi = reddening_end(child, q)
                if phi is not None:
                    results.append((child_seq, phi))
                if depth == cfg.max_len:
                    continue
                if cfg.dedupe:
                    key = canonical_key(child)
                    if key in seen:
                        continue
                    seen.add(key)
                    if len(seen) > cap:
                        raise CapExceeded(
                            f"state cache exceeded {cap} states "
                            "(set QMUT_MAX_STATES to raise the bound)"
                        )
                nxt.append((child, child_seq))
                if not cfg.dedupe and len(nxt) > cap:
                    raise CapExceeded(
                        f"frontier exceeded {cap} states "
                        "(set QMUT_MAX_STATES to raise the bound)"
                    )
        frontier = nxt
    results.sort(key=lambda r: (len(r[0]), r[0]))
    if cfg.limit is not None:
        results = results[: cfg.limit]
    return results


@dataclass(frozen=True)
class SequenceClass:
    green_flags: tuple[bool, ...]
    is_maximal_green: bool
    reddening_phi: Permutation | None
    final_ice: IceQuiver = field(repr=False, compare=False, default=None)

    def to_json(self) -> dict:
        return {
            "green_flags": list(self.green_flags),
            "maximal_green": self.is_maximal_green,
            "phi": list(self.reddening_phi.image) if self.reddening_phi else None,
        }


def classify_sequence(q: Quiver, seq) -> SequenceClass:
    """Per-step green/red signs plus the final reddening classification."""
    state = framed(q)
    flags = []
    for v in seq:
        flags.append(vertex_sign(state, v) is VertexSign.GREEN)
        state = mutate_ice(state, v)
    all_red = all(
        vertex_sign(state, v) is VertexSign.RED for v in range(1, q.n + 1)
    )
    phi = reddening_end(state, q)
    return SequenceClass(
        green_flags=tuple(flags),
        is_maximal_green=all(flags) and all_red,
        reddening_phi=phi,
        final_ice=state,
    )
