"""Command-line interface.

Sets are given as ``0,1,3`` / ``{0,1,3}`` / ``[0,1,3]`` and lattice sets
as ``0,0;1,0;0,1`` / ``[[0,0],[1,0],[0,1]]``; ``-`` reads the argument
from stdin. Use the brace form for sets starting with a negative number.

Exit codes: 0 ok, 2 precondition violation, 3 budget exceeded,
4 internal self-check failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from . import compress1d, core, freiman, lattice, range_search
from .errors import ParseError, PreconditionError, SelfCheckFailure, SumsetError


@dataclass
class CommandResult:
    status: str = "ok"
    payload: Any = None
    error: Optional[dict] = None
    diagnostics: list[str] = field(default_factory=list)
    text: Optional[str] = None  # human rendering of the payload

    def to_json(self) -> dict:
        d: dict[str, Any] = {"status": self.status}
        if self.status == "ok":
            d["payload"] = self.payload
        else:
            d["error"] = self.error
        d["diagnostics"] = self.diagnostics
        return d


def _read(text: str) -> str:
    return sys.stdin.read() if text == "-" else text


def parse_int_list(text: str) -> list[int]:
    """Integers in input order; duplicates are rejected."""
    s = _read(text).strip()
    try:
        if s.startswith("["):
            vals = json.loads(s)
            if not isinstance(vals, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in vals):
                raise ParseError(f"expected a JSON array of integers: {s!r}")
        else:
            if s.startswith("{") and s.endswith("}"):
                s = s[1:-1]
            vals = [int(tok) for tok in s.replace(" ", "").split(",") if tok != ""]
    except (ValueError, json.JSONDecodeError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"cannot parse integer set {s!r}: {e}") from None
    core.make_set(vals, strict=True)
    return vals


def parse_int_set(text: str) -> core.IntSet:
    return core.make_set(parse_int_list(text), strict=True)


def parse_lattice(text: str) -> lattice.LatticeSet:
    s = _read(text).strip()
    try:
        if s.startswith("["):
            pts = json.loads(s)
            if not isinstance(pts, list) or not all(isinstance(p, list) for p in pts):
                raise ParseError(f"expected a JSON array of integer arrays: {s!r}")
            if not all(isinstance(c, int) and not isinstance(c, bool) for p in pts for c in p):
                raise ParseError(f"lattice coordinates must be integers: {s!r}")
        else:
            pts = [[int(c) for c in chunk.split(",")] for chunk in s.replace(" ", "").split(";") if chunk]
    except (ValueError, json.JSONDecodeError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"cannot parse lattice set {s!r}: {e}") from None
    return lattice.make_lattice_set(pts)


def _fmt(values) -> str:
    return ",".join(map(str, values))


def _table(rows) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def cmd_sumset(args) -> CommandResult:
    if args.lattice:
        A = parse_lattice(args.set)
        S = lattice.hfold_sumset_lattice(A, args.h)
        elems = S.to_list()
        shown = ";".join(_fmt(p) for p in elems)
    else:
        A = parse_int_set(args.set)
        S = core.hfold_sumset(A, args.h)
        elems = S.to_list()
        shown = _fmt(elems)
    if args.size_only:
        return CommandResult(payload={"size": len(S)}, text=str(len(S)))
    return CommandResult(payload={"size": len(S), "elements": elems},
                         text=_table([("size", len(S)), ("elements", shown)]))


def _trace_text(trace: compress1d.CompressionTrace, render) -> str:
    lines = [_table([("initial", render(trace.initial_set)), ("final", render(trace.final_set)),
                     ("size", trace.size), ("steps", len(trace.steps))])]
    for s in trace.steps:
        axis = f"axis={s.axis} " if s.axis is not None else ""
        lines.append(f"  {axis}j={s.j} delta={s.delta} diam {s.diam_before} -> {s.diam_after}")
    return "\n".join(lines)


def cmd_compress(args) -> CommandResult:
    h = args.h
    if args.lattice:
        if args.tail_only or args.one_step:
            raise PreconditionError("--tail-only and --one-step apply to integer sets only")
        A = parse_lattice(args.set)
        final, trace = lattice.axis_compress_full(A, h)
        after = lattice.lattice_sumset_size(final, h)

        def render(X):
            return ";".join(_fmt(p) for p in X.points)
    else:
        A = parse_int_set(args.set)
        if args.tail_only:
            shifted = core.affine_image(A, 1, -A.min)
            out = core.affine_image(compress1d.compress_tail(shifted, h), 1, A.min)
            trace = compress1d.CompressionTrace(A, out, core.sumset_size(A, h))
            if out != A:
                trace.steps.append(compress1d.TraceStep(len(A) - 1, A.max - out.max, A.diam, out.diam))
            final = out
        elif args.one_step:
            final, w = compress1d.compress_step(A, h)
            trace = compress1d.CompressionTrace(A, final, core.sumset_size(A, h),
                                                [compress1d.TraceStep(w.j, w.delta, A.diam, final.diam)])
        else:
            final, trace = compress1d.compress_full(A, h)
        after = core.sumset_size(final, h)
        render = str
    if after != trace.size:
        raise SelfCheckFailure(f"compression changed |{h}A| from {trace.size} to {after}")
    return CommandResult(payload=trace.to_json(), text=_trace_text(trace, render))


def cmd_embed(args) -> CommandResult:
    A = parse_lattice(args.set)
    B, emb = freiman.embed_base_g(A, args.h, args.g)
    size_a = lattice.lattice_sumset_size(A, args.h)
    size_b = core.sumset_size(B, args.h)
    if size_a != size_b:
        raise SelfCheckFailure(f"embedding changed |{args.h}A| from {size_a} to {size_b}")
    payload = emb.to_json(A)
    payload["size"] = size_b
    return CommandResult(payload=payload, text=_table([
        ("g", emb.g), ("offset", _fmt(emb.offset)), ("image", _fmt(payload["image"])), ("size", size_b)]))


def cmd_verify_iso(args) -> CommandResult:
    A = parse_lattice(args.set_a) if args.lattice else parse_int_list(args.set_a)
    B = parse_int_list(args.set_b)
    res = freiman.verify_freiman_iso(A, B, args.h, modulus_a=args.mod_a, modulus_b=args.mod_b)
    wit = None
    if res.witness is not None:
        wit = [[list(x) if isinstance(x, tuple) else x for x in side] for side in res.witness]
    text = "isomorphic" if res.ok else f"not isomorphic; witness {wit[0]} vs {wit[1]}"
    return CommandResult(payload={"isomorphic": res.ok, "witness": wit}, text=text)


def cmd_rescale(args) -> CommandResult:
    A = parse_int_set(args.set)
    res = range_search.rescale_compress(A, args.h)
    before, after = core.sumset_size(A, args.h), core.sumset_size(res.output, args.h)
    if before != after:
        raise SelfCheckFailure(f"rescaling changed |{args.h}A| from {before} to {after}")
    payload = res.to_json()
    payload["size"] = after
    return CommandResult(payload=payload, text=_table([
        ("M", res.M), ("p", res.p), ("r", res.r), ("lambda", res.lam),
        ("output", _fmt(res.output)), ("size", after)]))


def _cache(args):
    return None if args.no_cache else range_search.ResultsCache.from_env()


def cmd_range(args) -> CommandResult:
    rep = range_search.enumerate_sizes(args.h, args.k, args.N, workers=args.threads,
                                       budget=args.budget, cache=_cache(args))
    if not range_search.audit_witnesses(rep):
        raise SelfCheckFailure("a stored witness does not realize its size")
    rows = [("h", rep.h), ("k", rep.k), ("N", rep.N), ("achieved", _fmt(rep.achieved)),
            ("interval", f"[{rep.theoretical_min}, {rep.theoretical_max}]"),
            ("missing", _fmt(rep.missing) or "-")]
    rows += [(f"  {t}", _fmt(w)) for t, w in sorted(rep.witnesses.items())]
    return CommandResult(payload=rep.to_json(), text=_table(rows))


def cmd_nvalue(args) -> CommandResult:
    res = range_search.exact_N(args.h, args.k, args.trust, workers=args.threads,
                               budget=args.budget, cache=_cache(args))
    diag = []
    if res.relative:
        diag.append(f"N is exact relative to trust_N={res.trust_N}, below the proven bound "
                    f"{range_search.n_upper_bound(args.h, args.k)}")
    return CommandResult(payload=res.to_json(), diagnostics=diag, text=str(res.N))


def cmd_nbound(args) -> CommandResult:
    b = range_search.n_upper_bound(args.h, args.k)
    return CommandResult(payload={"h": args.h, "k": args.k, "bound": b}, text=str(b))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON result envelope")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    search.add_argument("--budget", type=int, default=None, help="cap on examined subsets")
    search.add_argument("--no-cache", action="store_true", help=f"ignore ${range_search.CACHE_ENV}")

    parser = argparse.ArgumentParser(prog="sumsetlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sumset", parents=[common], help="h-fold sumset of a set")
    p.add_argument("set")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--size-only", action="store_true")
    p.set_defaults(func=cmd_sumset)

    p = sub.add_parser("compress", parents=[common], help="diameter compression with trace")
    p.add_argument("set")
    p.add_argument("--h", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--tail-only", action="store_true")
    mode.add_argument("--one-step", action="store_true")
    p.add_argument("--lattice", action="store_true")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("embed", parents=[common], help="base-g embedding of a lattice set into Z")
    p.add_argument("set")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--g", type=int, default=None, help="override the base (must be legal)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("verify-iso", parents=[common], help="check a Freiman isomorphism of order h")
    p.add_argument("set_a")
    p.add_argument("set_b")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--lattice", action="store_true", help="set_a is a lattice set")
    p.add_argument("--mod-a", type=int, default=None)
    p.add_argument("--mod-b", type=int, default=None)
    p.set_defaults(func=cmd_verify_iso)

    p = sub.add_parser("rescale", parents=[common], help="modular dilation rescaling")
    p.add_argument("set")
    p.add_argument("--h", type=int, required=True)
    p.set_defaults(func=cmd_rescale)

    p = sub.add_parser("range", parents=[common, search], help="enumerate achievable sizes")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_range)

    p = sub.add_parser("nvalue", parents=[common, search], help="least window realizing every size")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trust", type=int, required=True)
    p.set_defaults(func=cmd_nvalue)

    p = sub.add_parser("nbound", parents=[common], help="proven upper bound on N(h,k)")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_nbound)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        res = args.func(args)
        code = 0
    except SumsetError as e:
        res = CommandResult(status="error", error={"type": type(e).__name__, "message": str(e)})
        code = e.exit_code
    if args.json:
        print(json.dumps(res.to_json()))
    elif res.status == "ok":
        print(res.text)
        for d in res.diagnostics:
            print(f"warning: {d}", file=sys.stderr)
    else:
        print(f"error: {res.error['type']}: {res.error['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
