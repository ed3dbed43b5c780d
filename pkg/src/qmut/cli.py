"""Command-line interface.

Exit codes: 0 success / verified, 1 mathematical failure (mismatch,
degenerate loop, ...), 2 usage errors.  Structured output goes to stdout
as JSON; diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .corpus import corpus, corpus_entry
from .errors import (
    BadVertex,
    CapExceeded,
    DegenerateLoop,
    NotReddening,
    PhiNotIsomorphism,
    QmutError,
    SignIncoherent,
)
from .loops import MutationLoop, dt_product, partition_qseries, run_ice_trace, verify_main
from .quiver import Permutation, Quiver, mutate, reddening_end
from .search import SearchConfig, SearchMode, classify_sequence, find_sequences

_ERROR_CODES = {
    DegenerateLoop: "degenerate",
    NotReddening: "not-reddening",
    SignIncoherent: "sign-incoherent",
    PhiNotIsomorphism: "phi-not-isomorphism",
    BadVertex: "bad-vertex",
    CapExceeded: "cap-exceeded",
}


def _load_quiver(path: str) -> Quiver:
    try:
        with open(path) as fh:
            obj = json.load(fh)
        return Quiver.from_json(obj)
    except (OSError, ValueError, KeyError) as exc:
        print(f"cannot read quiver from {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _parse_seq(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        print(f"bad mutation sequence: {text!r}", file=sys.stderr)
        raise SystemExit(2)


def _resolve_phi(q: Quiver, seq, phi_text: str | None) -> Permutation:
    if phi_text:
        image = _parse_seq(phi_text)
        try:
            return Permutation(image)
        except ValueError as exc:
            print(str(exc), file=sys.stderr)
            raise SystemExit(2)
    trace = run_ice_trace(q, seq)
    phi = reddening_end(trace.final_ice, q)
    if phi is None:
        print(
            "sequence is not reddening; pass --phi to fix the boundary condition",
            file=sys.stderr,
        )
        raise SystemExit(2)
    return phi


def _emit(obj) -> None:
    print(jsonio.dumps(obj))


def _cmd_mutate(args) -> int:
    q = _load_quiver(args.quiver)
    for v in _parse_seq(args.sequence):
        q = mutate(q, v)
    _emit(q.to_json())
    return 0


def _cmd_trace(args) -> int:
    q = _load_quiver(args.quiver)
    trace = run_ice_trace(q, _parse_seq(args.sequence))
    if args.json:
        _emit(trace.to_json())
        return 0
    for st in trace.steps:
        sign = "green" if st.eps == 1 else "red"
        print(f"t={st.t} mu_{st.vertex} {sign} alpha={list(st.alpha)}")
        for row in st.ice_after.cmat:
            print(f"    {list(row)}")
    phi = reddening_end(trace.final_ice, q)
    print(f"reddening: {phi.cycles() if phi else 'no'}")
    return 0


def _cmd_qseries(args) -> int:
    q = _load_quiver(args.quiver)
    seq = _parse_seq(args.sequence)
    loop = MutationLoop(q, seq, _resolve_phi(q, seq, args.phi))
    series = partition_qseries(loop, args.degree)
    _emit(jsonio.series_payload(series))
    return 0


def _cmd_dt(args) -> int:
    q = _load_quiver(args.quiver)
    series = dt_product(q, _parse_seq(args.sequence), args.degree)
    _emit(jsonio.series_payload(series))
    return 0


def _cmd_verify(args) -> int:
    q = _load_quiver(args.quiver)
    seq = _parse_seq(args.sequence)
    loop = MutationLoop(q, seq, _resolve_phi(q, seq, args.phi))
    report = verify_main(loop, args.degree)
    _emit(report.to_json())
    return 0 if report.ok else 1


def _cmd_search(args) -> int:
    q = _load_quiver(args.quiver)
    mode = SearchMode.REDDENING if args.reddening else SearchMode.MAXIMAL_GREEN
    cfg = SearchConfig(
        max_len=args.max_len, mode=mode, dedupe=not args.no_dedupe, limit=args.limit
    )
    results = []
    for seq, phi in find_sequences(q, cfg):
        cls = classify_sequence(q, seq)
        results.append(
            {
                "sequence": list(seq),
                "phi": list(phi.image),
                "maximal_green": cls.is_maximal_green,
            }
        )
    _emit(results)
    return 0


def _cmd_corpus(args) -> int:
    if args.action == "list":
        _emit([e.to_json() for e in corpus()])
        return 0
    try:
        entry = corpus_entry(args.name)
    except KeyError as exc:
        print(exc.args[0], file=sys.stderr)
        return 2
    report = entry.run(args.degree)
    _emit(report.to_json())
    return 0 if report.ok else 1


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qmut",
        description="Exact quiver-mutation engine: partition q-series, "
        "dilogarithm products, green/reddening sequence search.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_q(sp):
        sp.add_argument("-q", "--quiver", required=True, help="quiver JSON file")

    def add_seq(sp):
        sp.add_argument("-s", "--sequence", required=True, help="comma-separated vertices")

    sp = sub.add_parser("mutate", help="apply a mutation sequence to a quiver")
    add_q(sp); add_seq(sp)
    sp.set_defaults(func=_cmd_mutate)

    sp = sub.add_parser("trace", help="trace c-vectors and signs along a sequence")
    add_q(sp); add_seq(sp)
    sp.add_argument("--json", action="store_true", help="full trace as JSON")
    sp.set_defaults(func=_cmd_trace)

    sp = sub.add_parser("qseries", help="partition q-series of a mutation loop")
    add_q(sp); add_seq(sp)
    sp.add_argument("--phi", help="boundary permutation image, e.g. 3,2,1")
    sp.add_argument("--degree", type=int, default=4)
    sp.set_defaults(func=_cmd_qseries)

    sp = sub.add_parser("dt", help="ordered quantum dilogarithm product")
    add_q(sp); add_seq(sp)
    sp.add_argument("--degree", type=int, default=4)
    sp.set_defaults(func=_cmd_dt)

    sp = sub.add_parser("verify", help="check ZZ(loop) == bar(E(Q;m)) up to a degree")
    add_q(sp); add_seq(sp)
    sp.add_argument("--phi", help="boundary permutation image")
    sp.add_argument("--degree", type=int, default=4)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("search", help="BFS for maximal green / reddening sequences")
    add_q(sp)
    sp.add_argument("--max-len", type=int, required=True)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--reddening", action="store_true")
    g.add_argument("--maximal-green", action="store_true")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--no-dedupe", action="store_true")
    sp.set_defaults(func=_cmd_search)

    sp = sub.add_parser("corpus", help="list or run the built-in worked examples")
    sp.add_argument("action", choices=["list", "run"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--degree", type=int, default=4)
    sp.set_defaults(func=_cmd_corpus)

    sp = sub.add_parser("serve", help="run the HTTP session service")
    sp.add_argument("--port", type=int, default=8000)
    sp.add_argument("--host", default="127.0.0.1")
    sp.set_defaults(func=_cmd_serve)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus" and args.action == "run" and not args.name:
        parser.error("corpus run needs an entry name")
    try:
        return args.func(args)
    except QmutError as exc:
        code = _ERROR_CODES.get(type(exc), "error")
        _emit({"error": code, "detail": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
