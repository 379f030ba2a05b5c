"""Command-line surface: graph invariants, kernel tools, and the selfcheck.

Exit codes: 0 success, 1 domain error (message on stderr naming the violated
precondition), 2 usage error.  `--output path` writes JSON; without it each
command prints a short human-readable summary.  All numbers are exact.
"""

from __future__ import annotations

import argparse
import json
import sys

from tuttekit.combinatorics import DomainError, TPoly, format_rational
from tuttekit.graphs import graph_from_json_obj, graph_to_json_obj
from tuttekit.invariants import (
    chromatic_sym,
    chromatic_sym_delcon,
    sigma_l_formula,
    specialize_t,
    tutte_from_connected_partitions,
    tutte_from_contractions,
    tutte_sym,
    tutte_sym_delcon,
)
from tuttekit.kernel import (
    GraphCombination,
    broom_relation,
    classify_n4,
    cycle_relation,
    ell_loop,
    ell_multi,
    ell_os,
    ell_os_plus,
    ell_tri,
    is_tutte_friendly,
    is_x_friendly,
    kernel_membership,
    reduce_to_star_forests,
    two_edge_connected_relation,
    witness_graph,
)
from tuttekit.quasi import (
    digraph_from_json_obj,
    tq,
    tq_from_arc_subsets,
    tq_from_connected_partitions,
    xq,
)
from tuttekit.symfun import SymFunc, m_to_e, m_to_p, mtilde_to_m


#### I/O helpers ###############################################################

def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}")


def _emit(obj: dict, text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
    else:
        print(text)


def _tpoly_text(c: TPoly) -> str:
    if c.is_zero():
        return "0"
    bits = []
    for i, x in enumerate(c.coeffs):
        if x == 0:
            continue
        if i == 0:
            bits.append(format_rational(x))
        elif i == 1:
            bits.append(f"{format_rational(x)}*t")
        else:
            bits.append(f"{format_rational(x)}*t^{i}")
    return " + ".join(bits)


def _symfunc_text(f: SymFunc) -> str:
    if f.is_zero():
        return f"0 (basis {f.basis})"
    lines = [
        f"{f.basis}[{','.join(map(str, lam))}] : {_tpoly_text(c)}"
        for lam, c in f.sorted_terms()
    ]
    return "\n".join(lines)


def _parse_blocks(text: str) -> list[list[int]]:
    blocks = []
    for chunk in text.split("|"):
        chunk = chunk.strip()
        if not chunk:
            raise DomainError(f"empty block in partition {text!r}")
        blocks.append([int(x) for x in chunk.split(",")])
    return blocks


def _parse_edge_list(text: str) -> list[tuple[int, int]]:
    edges = []
    for chunk in text.split(";"):
        parts = [int(x) for x in chunk.strip().split(",")]
        if len(parts) != 2:
            raise DomainError(f"bad edge {chunk!r}; expected 'u,v'")
        edges.append((parts[0], parts[1]))
    return edges


def _basis_view(f: SymFunc, basis: str) -> SymFunc:
    if basis == "mtilde":
        return f
    m = mtilde_to_m(f)
    if basis == "m":
        return m
    if basis == "e":
        return m_to_e(m)
    return m_to_p(m)


#### subcommand handlers #######################################################

def _cmd_x(args) -> int:
    G = graph_from_json_obj(_load(args.graph))
    f = chromatic_sym(G) if args.route == "def" else chromatic_sym_delcon(G)
    f = _basis_view(f, args.basis)
    _emit(f.to_json_obj(), _symfunc_text(f), args.output)
    return 0


_XB_ROUTES = {
    "def": tutte_sym,
    "delcon": tutte_sym_delcon,
    "contract": tutte_from_contractions,
    "connparts": tutte_from_connected_partitions,
}


def _cmd_xb(args) -> int:
    G = graph_from_json_obj(_load(args.graph))
    f = _XB_ROUTES[args.route](G)
    f = _basis_view(f, args.basis)
    if args.t_eval is not None:
        f = specialize_t(f, args.t_eval)
    _emit(f.to_json_obj(), _symfunc_text(f), args.output)
    return 0


def _cmd_sigma(args) -> int:
    G = graph_from_json_obj(_load(args.graph))
    value = sigma_l_formula(G, args.k, args.l)
    obj = {"k": args.k, "l": args.l, "value": format_rational(value)}
    _emit(obj, f"sigma_{args.l} of [(1+t)^{args.k}] XB = {format_rational(value)}", args.output)
    return 0


def _cmd_friendly(args) -> int:
    L = GraphCombination.from_json_obj(_load(args.combination))
    ok, pi, a = is_tutte_friendly(L)
    obj = {"friendly": ok}
    if not ok:
        obj["pi"] = [list(b) for b in pi]
        obj["a"] = a
    text = "friendly" if ok else f"not friendly: B nonzero at pi={obj['pi']} (least power a={a})"
    _emit(obj, text, args.output)
    return 0


def _cmd_xfriendly(args) -> int:
    L = GraphCombination.from_json_obj(_load(args.combination))
    ok, pi = is_x_friendly(L)
    obj = {"xfriendly": ok}
    if not ok:
        obj["pi"] = [list(b) for b in pi]
    text = "X-friendly" if ok else f"not X-friendly: C nonzero at pi={obj['pi']}"
    _emit(obj, text, args.output)
    return 0


def _cmd_witness(args) -> int:
    L = GraphCombination.from_json_obj(_load(args.combination))
    blocks = _parse_blocks(args.pi)
    W = witness_graph(L, blocks, args.a)
    text = f"witness on [{W.n}] with {len(W.edges)} edges"
    _emit(graph_to_json_obj(W), text, args.output)
    return 0


def _cmd_reduce(args) -> int:
    L = GraphCombination.from_json_obj(_load(args.combination))
    result, cert = reduce_to_star_forests(L)
    obj = cert.to_json_obj()
    obj = {"terms": obj["result"], "certificate": obj["steps"]}
    lines = [
        f"R{list(lam)} * (1+t)^{k} * {format_rational(c)}"
        for lam, k, c in result.shape_triples()
    ] or ["0"]
    lines.append(f"({len(cert.steps)} certificate steps)")
    _emit(obj, "\n".join(lines), args.output)
    return 0


def _cmd_member(args) -> int:
    L = GraphCombination.from_json_obj(_load(args.combination))
    verdict = kernel_membership(L)
    _emit({"member": verdict}, "in the kernel of XB" if verdict else "not in the kernel of XB", args.output)
    return 0


_FIXED_RELATIONS = {
    "os-plus": ell_os_plus,
    "tri": ell_tri,
    "multi": ell_multi,
    "loop": ell_loop,
    "os": ell_os,
}


def _cmd_relation(args) -> int:
    kind = args.kind
    if kind in _FIXED_RELATIONS:
        L = _FIXED_RELATIONS[kind]()
    elif kind == "two-edge-connected":
        if args.graph is None or args.i is None or args.j is None:
            raise DomainError("two-edge-connected relation needs GRAPH --i I --j J")
        G = graph_from_json_obj(_load(args.graph))
        L = two_edge_connected_relation(G, args.i, args.j)
    elif kind == "cycle":
        if args.graph is None or args.cycle is None or args.i is None or args.j is None:
            raise DomainError("cycle relation needs GRAPH --cycle 'u,v;...' --i I --j J")
        G = graph_from_json_obj(_load(args.graph))
        L = cycle_relation(G, _parse_edge_list(args.cycle), args.i, args.j)
    else:  # broom
        if args.n is None or args.k is None:
            raise DomainError("broom relation needs --n N --k K")
        L = broom_relation(args.n, args.k)
    lines = [
        f"{_tpoly_text(c)}  *  {g!r}" for g, c in L.sorted_terms()
    ] or ["0"]
    _emit(L.to_json_obj(), "\n".join(lines), args.output)
    return 0


def _cmd_classify_n4(args) -> int:
    families = classify_n4()
    obj = {
        "families": [[graph_to_json_obj(g) for g in fam] for fam in families]
    }
    lines = []
    for i, fam in enumerate(families, 1):
        lines.append(f"family {i} ({len(fam)} graphs):")
        for g in fam:
            lines.append(f"  edges {sorted(g.edges)}")
    _emit(obj, "\n".join(lines), args.output)
    return 0


def _cmd_quasi(args) -> int:
    D = digraph_from_json_obj(_load(args.digraph))
    N = args.vars if args.vars is not None else D.total_weight()
    if args.kind == "xq":
        if args.route != "def":
            raise DomainError("xq has a single route; use --route def")
        F = xq(D, N)
    else:
        route = {
            "def": tq,
            "connparts": tq_from_connected_partitions,
            "subsets": tq_from_arc_subsets,
        }[args.route]
        F = route(D, N)
    lines = []
    for exps, c in F.sorted_terms():
        mono = " ".join(f"x{i+1}^{e}" for i, e in enumerate(exps) if e)
        qbits = " + ".join(
            f"{format_rational(v)}*q^{a}*t^{b}" for (a, b), v in sorted(c.terms.items())
        )
        lines.append(f"{mono or '1'} : {qbits}")
    _emit(F.to_json_obj(), "\n".join(lines) or "0", args.output)
    return 0


def _cmd_selfcheck(args) -> int:
    from tuttekit.selfcheck import format_report, run_all

    ids = None
    if args.only:
        ids = [int(x) for x in args.only.split(",")]
    results = run_all(ids)
    print(format_report(results))
    return 0 if all(r["passed"] for r in results) else 1


#### parser ####################################################################

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuttekit",
        description="Exact chromatic and Tutte symmetric functions of weighted graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("--output", help="write JSON to this path instead of printing text")

    p = sub.add_parser("x", help="chromatic symmetric function of a graph")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--route", choices=("def", "delcon"), default="def")
    p.add_argument("--basis", choices=("mtilde", "m", "p", "e"), default="mtilde")
    add_output(p)
    p.set_defaults(func=_cmd_x)

    p = sub.add_parser("xb", help="Tutte symmetric function of a graph")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--route", choices=("def", "delcon", "contract", "connparts"), default="def")
    p.add_argument("--basis", choices=("mtilde", "m", "p", "e"), default="mtilde")
    p.add_argument("--t-eval", dest="t_eval", help="evaluate t at this rational, e.g. -1 or 1/2")
    add_output(p)
    p.set_defaults(func=_cmd_xb)

    p = sub.add_parser("sigma", help="signed acyclic-orientation count sigma_l of [(1+t)^k] XB")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    add_output(p)
    p.set_defaults(func=_cmd_sigma)

    p = sub.add_parser("friendly", help="Tutte-friendliness of a graph combination")
    p.add_argument("combination", help="combination JSON file")
    add_output(p)
    p.set_defaults(func=_cmd_friendly)

    p = sub.add_parser("xfriendly", help="X-friendliness of a graph combination")
    p.add_argument("combination", help="combination JSON file")
    add_output(p)
    p.set_defaults(func=_cmd_xfriendly)

    p = sub.add_parser("witness", help="cloud witness graph for a non-friendly combination")
    p.add_argument("combination", help="combination JSON file")
    p.add_argument("--pi", required=True, help="partition blocks, e.g. '1,2|3'")
    p.add_argument("--a", type=int, default=None, help="(1+t)-power to certify")
    add_output(p)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("reduce", help="reduce a combination to canonical star forests")
    p.add_argument("combination", help="combination JSON file")
    add_output(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("member", help="kernel membership (reduction + direct check)")
    p.add_argument("combination", help="combination JSON file")
    add_output(p)
    p.set_defaults(func=_cmd_member)

    p = sub.add_parser("relation", help="named kernel relations")
    p.add_argument(
        "kind",
        choices=("os-plus", "tri", "multi", "loop", "os", "cycle", "two-edge-connected", "broom"),
    )
    p.add_argument("graph", nargs="?", help="graph JSON file (cycle / two-edge-connected)")
    p.add_argument("--cycle", help="cycle edges 'u,v;u,v;...' (cycle relation)")
    p.add_argument("--i", type=int, help="1-based edge index")
    p.add_argument("--j", type=int, help="1-based edge index")
    p.add_argument("--n", type=int, help="broom path length")
    p.add_argument("--k", type=int, help="broom star size")
    add_output(p)
    p.set_defaults(func=_cmd_relation)

    p = sub.add_parser("classify-n4", help="friendliness families on four vertices")
    add_output(p)
    p.set_defaults(func=_cmd_classify_n4)

    p = sub.add_parser("quasi", help="quasisymmetric XQ / TQ of a digraph")
    p.add_argument("kind", choices=("xq", "tq"))
    p.add_argument("digraph", help="digraph JSON file")
    p.add_argument("--vars", type=int, default=None, help="variable count N (default w(D))")
    p.add_argument("--route", choices=("def", "connparts", "subsets"), default="def")
    add_output(p)
    p.set_defaults(func=_cmd_quasi)

    p = sub.add_parser("selfcheck", help="run the acceptance suites")
    p.add_argument("--only", help="comma-separated criterion ids, e.g. 1,5,12")
    p.set_defaults(func=_cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
