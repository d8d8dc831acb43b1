"""Command-line front end.

Every subcommand is a thin wrapper over one library call plus formatting;
nothing is computed here that a library user could not reproduce. Exit codes:
0 for success (or a true answer), 1 for a false answer or a found
counterexample witness, 2 for usage, file, or input format errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional

from . import lazy as lz
from .posets import (
    Poset,
    PosetError,
    enumerate_posets,
    format_poset,
    parse_map,
    parse_poset,
    poset_to_dot,
)
from .smyth import (
    canonical_quasi_section,
    check_monad_laws,
    check_quasi_retraction,
    fin_antichains,
    fin_poset,
    format_antichain,
    koenig_chain,
    parse_antichain,
    parse_finmap,
    FIN_CAP,
)
from .treeval import path_space
from .valuations import (
    GRID_CAP,
    ValuationError,
    failed_deflation_a,
    failed_deflation_b,
    failed_deflation_c,
    format_valuation,
    grid,
    grid_poset,
    maximal_below_grid,
    minimal_upper_bounds_grid,
    parse_valuation,
    pushforward,
    pushforward_preimage,
    stochastic_leq,
    stochastic_leq_report,
    way_below_report,
)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_poset(path: str) -> Poset:
    return parse_poset(_read(path))


def _fmt_upper(P: Poset, U) -> str:
    members = sorted(U, key=P.index)
    return "{" + ", ".join(str(x) for x in members) + "}"


def _json_value(P: Poset, v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, frozenset):
        return [str(x) for x in sorted(v, key=P.index)]
    return v


def _emit(fmt: str, P: Poset, pairs) -> None:
    """Print key/value pairs as `key: value` lines or one JSON object."""
    if fmt == "json":
        obj = {k: _json_value(P, v) for k, v in pairs}
        print(json.dumps(obj, indent=2))
    else:
        for k, v in pairs:
            if isinstance(v, frozenset):
                v = _fmt_upper(P, v)
            elif isinstance(v, bool):
                v = "true" if v else "false"
            elif v is None:
                v = "none"
            print(f"{k}: {v}")


# -- handlers ------------------------------------------------------------------


def _cmd_check_poset(args) -> int:
    P = _load_poset(args.poset)
    pairs = [
        ("elements", len(P.elements)),
        ("covers", len(P.covers())),
        ("pointed", P.is_pointed),
        ("bottom", None if P.bottom() is None else str(P.bottom())),
        ("top", None if P.top() is None else str(P.top())),
    ]
    _emit(args.format, P, pairs)
    return 0


def _cmd_hasse(args) -> int:
    P = _load_poset(args.poset)
    if args.dot:
        sys.stdout.write(poset_to_dot(P))
    else:
        for a, b in P.covers():
            print(f"{a} < {b}")
    return 0


def _cmd_upper_sets(args) -> int:
    P = _load_poset(args.poset)
    for U in P.upper_sets(max_elements=args.max_elements):
        print(_fmt_upper(P, U))
    return 0


def _relabel(P: Poset, rename) -> Poset:
    return Poset._from_up_masks(tuple(rename(e) for e in P.elements), P._up)


def _cmd_pathspace(args) -> int:
    P = _load_poset(args.poset)
    pi, r = path_space(P)
    named = _relabel(pi, lambda p: "/".join(str(x) for x in p))
    if args.dot:
        sys.stdout.write(poset_to_dot(named, name="pathspace"))
    else:
        for p in pi.elements:
            print("/".join(str(x) for x in p) + f" -> {r(p)}")
    return 0


def _cmd_fin(args) -> int:
    P = _load_poset(args.poset)
    if args.dot:
        F = fin_poset(P, cap=args.cap)
        named = _relabel(F, format_antichain)
        sys.stdout.write(poset_to_dot(named, name="fin"))
    else:
        for E in fin_antichains(P, cap=args.cap):
            print(format_antichain(E))
    return 0


def _cmd_monad_laws(args) -> int:
    P = _load_poset(args.poset)
    h = parse_finmap(P, P, _read(args.h)) if args.h else None
    g_source = h.target if h is not None else P
    g = parse_finmap(g_source, g_source, _read(args.g)) if args.g else None
    rep = check_monad_laws(P, h, g, cap=args.cap)
    witness = None
    if rep.witness is not None:
        witness = " ".join(f"{k}={v}" for k, v in rep.witness.items())
    _emit(
        args.format,
        P,
        [
            ("unit_identity", rep.unit_identity),
            ("extension_identity", rep.extension_identity),
            ("associativity", rep.associativity),
            ("witness", witness),
        ],
    )
    return 0 if rep.ok else 1


def _cmd_quasi_retraction(args) -> int:
    X = _load_poset(args.source)
    Y = _load_poset(args.target)
    r = parse_map(X, Y, _read(args.map))
    qs = parse_finmap(Y, X, _read(args.qs)) if args.qs else canonical_quasi_section(r)
    rep = check_quasi_retraction(r, qs)
    _emit(
        args.format,
        X,
        [
            ("retraction_law", rep.retraction_law),
            ("projection_law", rep.projection_law),
            ("canonical", rep.canonical),
            ("witness", rep.witness),
        ],
    )
    return 0 if rep.ok else 1


def _cmd_koenig(args) -> int:
    P = _load_poset(args.poset)
    stages = [parse_antichain(P, s) for s in args.stage]
    chain = koenig_chain(P, stages, args.element)
    print(" ".join(str(x) for x in chain))
    return 0


def _cmd_val_order(args) -> int:
    P = _load_poset(args.poset)
    nu = parse_valuation(P, args.nu)
    mu = parse_valuation(P, args.mu)
    if args.mode != "flow":
        result = stochastic_leq(nu, mu, mode=args.mode)
        _emit(args.format, P, [("result", result)])
        return 0 if result else 1
    rep = stochastic_leq_report(nu, mu)
    pairs = [("result", rep.result)]
    if rep.transport is not None:
        plan = " ".join(
            f"{x}->{y}:{w}"
            for (x, y), w in sorted(
                rep.transport.items(),
                key=lambda kv: (P.index(kv[0][0]), P.index(kv[0][1])),
            )
            if w
        )
        pairs.append(("transport", plan))
    if rep.violating_upper is not None:
        pairs.append(("violating_upper", rep.violating_upper))
    _emit(args.format, P, pairs)
    return 0 if rep.result else 1


def _cmd_val_waybelow(args) -> int:
    P = _load_poset(args.poset)
    nu = parse_valuation(P, args.nu)
    mu = parse_valuation(P, args.mu)
    rep = way_below_report(nu, mu)
    pairs = [("result", rep.result)]
    for v in rep.violations:
        pairs.append(
            (
                "violation",
                f"kind={v['kind']} upper={_fmt_upper(P, v['upper'])} "
                f"lhs={v['lhs']} rhs={v['rhs']}",
            )
        )
    if args.format == "json":
        obj = {
            "result": rep.result,
            "violations": [
                {
                    "kind": v["kind"],
                    "upper": _json_value(P, v["upper"]),
                    "lhs": str(v["lhs"]),
                    "rhs": str(v["rhs"]),
                }
                for v in rep.violations
            ],
        }
        print(json.dumps(obj, indent=2))
    else:
        _emit("text", P, pairs)
    return 0 if rep.result else 1


def _cmd_val_mub(args) -> int:
    P = _load_poset(args.poset)
    v1 = parse_valuation(P, args.nu1)
    v2 = parse_valuation(P, args.nu2)
    for m in minimal_upper_bounds_grid(v1, v2, args.grid, cap=args.cap):
        print(format_valuation(m))
    return 0


def _cmd_val_maxbelow(args) -> int:
    P = _load_poset(args.poset)
    nu = parse_valuation(P, args.nu)
    for m in maximal_below_grid(nu, args.grid, cap=args.cap):
        print(format_valuation(m))
    return 0


def _cmd_val_grid(args) -> int:
    P = _load_poset(args.poset)
    if args.dot:
        G = grid_poset(P, args.grid, cap=args.cap)
        named = _relabel(G, format_valuation)
        sys.stdout.write(poset_to_dot(named, name="grid"))
    else:
        for v in grid(P, args.grid, cap=args.cap):
            print(format_valuation(v))
    return 0


def _cmd_val_push(args) -> int:
    X = _load_poset(args.source)
    Y = _load_poset(args.target)
    r = parse_map(X, Y, _read(args.map))
    if args.preimage:
        nu = parse_valuation(Y, args.nu)
        print(format_valuation(pushforward_preimage(r, nu)))
    else:
        nu = parse_valuation(X, args.nu)
        print(format_valuation(pushforward(r, nu)))
    return 0


def _cmd_demo_failed(args) -> int:
    P = _load_poset(args.poset)
    N = args.grid
    targets = [parse_valuation(P, args.nu)] if args.nu else grid(P, N)
    found = False

    hit_a = None
    for v in targets:
        rep = failed_deflation_a(v, N)
        if rep.witness is not None:
            hit_a = (v, rep)
            break
    if hit_a:
        v, rep = hit_a
        U, V = rep.witness
        print(
            f"attempt a: modularity fails at nu={format_valuation(v)}: "
            f"U={_fmt_upper(P, U)} V={_fmt_upper(P, V)}"
        )
        found = True
    else:
        print("attempt a: no modularity witness")

    rep_b = failed_deflation_b(targets[0], N)
    if rep_b.witness is not None:
        lo, hi = rep_b.witness
        print(
            f"attempt b: monotonicity fails: {format_valuation(lo)} <= "
            f"{format_valuation(hi)} but the rounded images are not ordered"
        )
        found = True
    else:
        print("attempt b: no monotonicity witness")

    hit_c = None
    for v in targets:
        rep = failed_deflation_c(v, N)
        if not rep.unique:
            hit_c = (v, rep)
            break
    if hit_c:
        v, rep = hit_c
        print(
            f"attempt c: no largest grid valuation below nu={format_valuation(v)}: "
            f"{rep.cardinality} maximal members"
        )
        found = True
    else:
        print("attempt c: every valuation scanned has a unique largest approximant")

    return 1 if found else 0


def _cmd_lazy(args) -> int:
    L = lz.LazyPoset(args.kind)
    action = args.action
    rest: List[str] = args.args
    if action == "leq":
        if len(rest) != 2:
            raise PosetError("lazy leq takes two elements")
        ok = L.leq(lz.parse_code(rest[0]), lz.parse_code(rest[1]))
        print("true" if ok else "false")
        return 0 if ok else 1
    if action == "family":
        if args.kind == "n2":
            if len(rest) != 3:
                raise PosetError("lazy n2 family takes indices I J and an element")
            phi = lz.n2_family(_nat(rest[0]), _nat(rest[1]))
            x = lz.parse_code(rest[2])
        elif args.kind == "t":
            if len(rest) != 2:
                raise PosetError("lazy t family takes an index I and an element")
            phi = lz.t_family(_nat(rest[0]))
            x = lz.parse_code(rest[1])
        else:
            raise PosetError("no quasi-deflation family is defined for kind 'nsum'")
        print("{" + ", ".join(lz.format_code(c) for c in phi(x)) + "}")
        return 0
    if action == "witness":
        if len(rest) != 2:
            raise PosetError("lazy witness takes two elements")
        idx = lz.family_witness(L, lz.parse_code(rest[0]), lz.parse_code(rest[1]))
        if isinstance(idx, tuple):
            print(f"i={idx[0]} j={idx[1]}")
        else:
            print(f"i={idx}")
        return 0
    if action == "truncate":
        if len(rest) != 1:
            raise PosetError("lazy truncate takes a depth")
        trunc = lz.truncate(L, _nat(rest[0]))
        if args.dot:
            sys.stdout.write(poset_to_dot(trunc.poset, name=f"{args.kind}_trunc"))
        else:
            sys.stdout.write(format_poset(trunc.poset))
        return 0
    raise PosetError(f"unknown lazy action {action!r}")


def _nat(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise PosetError(f"expected a natural number, got {text!r}") from None
    if n < 0:
        raise PosetError(f"expected a natural number, got {n}")
    return n


def _cmd_enumerate(args) -> int:
    count = 0
    for P in enumerate_posets(args.n):
        count += 1
        if args.list:
            cov = "; ".join(f"{a} < {b}" for a, b in P.covers())
            print(" ".join(str(e) for e in P.elements) + (" | " + cov if cov else ""))
    if not args.list:
        print(count)
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ordbench",
        description="Exact-arithmetic workbench for finite posets, antichain "
        "powerspaces, and probability valuations.",
    )
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    def fmt_flag(p):
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="output style (default: text)",
        )

    p = add("check-poset", _cmd_check_poset, "validate a poset file, print a summary")
    p.add_argument("poset")
    fmt_flag(p)

    p = add("hasse", _cmd_hasse, "print cover pairs, or DOT with --dot")
    p.add_argument("poset")
    p.add_argument("--dot", action="store_true")

    p = add("upper-sets", _cmd_upper_sets, "list every upper set")
    p.add_argument("poset")
    p.add_argument(
        "--max-elements", type=int, default=20,
        help="size guard for the 2^n sweep (default: 20)",
    )

    p = add("pathspace", _cmd_pathspace, "cover-chain tree and endpoint map")
    p.add_argument("poset")
    p.add_argument("--dot", action="store_true")

    p = add("fin", _cmd_fin, "list the antichains (canonical finitary compacts)")
    p.add_argument("poset")
    p.add_argument("--cap", type=int, default=FIN_CAP)
    p.add_argument("--dot", action="store_true")

    p = add("monad-laws", _cmd_monad_laws, "check the three extension laws")
    p.add_argument("poset")
    p.add_argument("h", nargs="?", help="antichain-valued map file (default: unit)")
    p.add_argument("g", nargs="?", help="second map file (default: unit)")
    p.add_argument("--cap", type=int, default=FIN_CAP)
    fmt_flag(p)

    p = add(
        "quasi-retraction",
        _cmd_quasi_retraction,
        "check section laws for a map, canonical section by default",
    )
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map", help="file of 'x -> y' lines")
    p.add_argument("qs", nargs="?", help="section file of 'y -> {x1, x2}' lines")
    fmt_flag(p)

    p = add("koenig", _cmd_koenig, "chain through descending antichain stages")
    p.add_argument("poset")
    p.add_argument("element")
    p.add_argument("stage", nargs="+", help="antichains, innermost last, e.g. 'a,b'")

    p = add("val-order", _cmd_val_order, "decide nu <= mu in the pointwise order")
    p.add_argument("poset")
    p.add_argument("nu")
    p.add_argument("mu")
    p.add_argument("--mode", choices=("flow", "oracle", "both"), default="flow")
    fmt_flag(p)

    p = add("val-waybelow", _cmd_val_waybelow, "decide strict approximation")
    p.add_argument("poset")
    p.add_argument("nu")
    p.add_argument("mu")
    fmt_flag(p)

    p = add("val-mub", _cmd_val_mub, "minimal common upper bounds on a grid")
    p.add_argument("poset")
    p.add_argument("nu1")
    p.add_argument("nu2")
    p.add_argument("--grid", type=int, required=True, metavar="N")
    p.add_argument("--cap", type=int, default=GRID_CAP)

    p = add("val-maxbelow", _cmd_val_maxbelow, "maximal grid approximants from below")
    p.add_argument("poset")
    p.add_argument("nu")
    p.add_argument("--grid", type=int, required=True, metavar="N")
    p.add_argument("--cap", type=int, default=GRID_CAP)

    p = add("val-grid", _cmd_val_grid, "list grid valuations, or their order as DOT")
    p.add_argument("poset")
    p.add_argument("--grid", type=int, required=True, metavar="N")
    p.add_argument("--cap", type=int, default=GRID_CAP)
    p.add_argument("--dot", action="store_true")

    p = add("val-push", _cmd_val_push, "transport a valuation along a map")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map", help="file of 'x -> y' lines")
    p.add_argument("nu")
    p.add_argument(
        "--preimage", action="store_true",
        help="lift from the target instead (needs a surjective map)",
    )

    p = add(
        "demo-failed-deflations",
        _cmd_demo_failed,
        "run the three rounding schemes, exit 1 when witnesses appear",
    )
    p.add_argument("poset")
    p.add_argument("nu", nargs="?", help="valuation (default: scan the whole grid)")
    p.add_argument("--grid", type=int, required=True, metavar="N")

    p = add("lazy", _cmd_lazy, "countable-poset queries: leq, family, witness, truncate")
    p.add_argument("kind", choices=lz.KINDS)
    p.add_argument("action", choices=("leq", "family", "witness", "truncate"))
    p.add_argument("args", nargs="*")
    p.add_argument("--dot", action="store_true")

    p = add("enumerate-posets", _cmd_enumerate, "count (or list) labeled posets")
    p.add_argument("n", type=int)
    p.add_argument("--list", action="store_true")

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PosetError, ValuationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
