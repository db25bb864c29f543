"""Command-line front end.

Every run prints one JSON object per instance on stdout; diagnostics go to
stderr.  Exit codes: 0 success, 1 unreadable input, 2 invalid instance,
3 method does not fit the instance (or unknown generator), 4 brute-force
size guard, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import instances
from .chains import ComplexError, apply_coboundary
from .embedded import VoidError, max_flow_shortest_path, min_cut_via_min_cost_flow
from .flows import (
    BruteForceGuardError,
    NetworkError,
    brute_graph_max_flow,
    brute_min_combinatorial_cut,
    flow_violation,
    graph_terminals,
    max_flow_lp,
    min_cut_lp,
    verify_directed_combinatorial_cut,
    verify_gamma_cut,
)
from .ford_fulkerson import FordFulkersonError, max_flow_ff, trace_records
from .generators import GENERATORS, GeneratorError

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_MISMATCH, EXIT_GUARD, EXIT_VERIFY = 0, 1, 2, 3, 4, 5


class CliFailure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _q(x) -> str:
    return str(Fraction(x))


def _load(path):
    try:
        return instances.load(path)
    except instances.InstanceFormatError as e:
        raise CliFailure(EXIT_PARSE, f"{path}: {e}") from None
    except OSError as e:
        raise CliFailure(EXIT_PARSE, f"{path}: {e.strerror}") from None
    except (ComplexError, NetworkError, VoidError) as e:
        raise CliFailure(EXIT_INVALID, f"{path}: {e}") from None


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_maxflow(path, method="lp", check=True, trace_sink=None) -> dict:
    b = _load(path)
    net = b.network
    out = {"instance": str(path), "name": b.name, "method": method}
    if method == "lp":
        res = max_flow_lp(net)
    elif method == "ff":
        steps = []
        try:
            res, its = max_flow_ff(net, trace=steps)
        except FordFulkersonError as e:
            raise CliFailure(EXIT_VERIFY, f"{path}: {e}") from None
        out["iterations"] = its
        if trace_sink is not None:
            for rec in trace_records(net, steps):
                rec = dict(rec, instance=str(path), value=_q(rec["value"]))
                trace_sink(rec)
    elif method == "dual":
        if b.voids is None:
            raise CliFailure(EXIT_MISMATCH, f"{path}: method 'dual' needs a voids block")
        try:
            res = max_flow_shortest_path(net, b.voids)
        except VoidError as e:
            raise CliFailure(EXIT_INVALID, f"{path}: {e}") from None
    else:
        raise CliFailure(EXIT_MISMATCH, f"unknown method {method!r}")
    out["value"] = _q(res.value)
    out["flow"] = [_q(x) for x in res.flow]
    violation = flow_violation(net, res.flow, res.value)
    if violation:
        raise CliFailure(EXIT_VERIFY, f"{path}: computed flow violates {violation}")
    if check and method != "lp":
        ref = max_flow_lp(net).value
        if ref != res.value:
            raise CliFailure(EXIT_VERIFY, f"{path}: {method} value {res.value} differs from lp value {ref}")
        out["check"] = "ok"
    return out


def cmd_mincut(path, method="lp", combinatorial=False, brute=False, check=True, max_size=None) -> dict:
    b = _load(path)
    net = b.network
    out = {"instance": str(path), "name": b.name, "method": method}
    if combinatorial and brute:
        try:
            C, w = brute_min_combinatorial_cut(net, max_subset_size=max_size)
        except BruteForceGuardError as e:
            raise CliFailure(EXIT_GUARD, f"{path}: {e}") from None
        out.update(method="brute", combinatorial=True, cut=sorted(C), weight=_q(w))
        return out
    if method == "lp":
        if combinatorial:
            raise CliFailure(
                EXIT_MISMATCH,
                "the min-cut LP finds topological cuts; a minimum combinatorial cut is NP-hard in general. "
                "Use --method dual on embedded instances or --brute.",
            )
        cut = min_cut_lp(net)
    elif method == "dual":
        if b.voids is None:
            raise CliFailure(EXIT_MISMATCH, f"{path}: method 'dual' needs a voids block")
        try:
            if combinatorial:
                C, w = min_cut_via_min_cost_flow(net, b.voids, unit_capacities=True)
                if not verify_directed_combinatorial_cut(net, C):
                    raise CliFailure(EXIT_VERIFY, f"{path}: returned set is not a directed combinatorial cut")
                out.update(combinatorial=True, cut=sorted(C), weight=_q(w))
                return out
            cut = min_cut_via_min_cost_flow(net, b.voids)
        except VoidError as e:
            raise CliFailure(EXIT_INVALID, f"{path}: {e}") from None
    else:
        raise CliFailure(EXIT_MISMATCH, f"unknown method {method!r}")
    support_weight = sum((net.capacities[j] for j in cut.directed_cut), Fraction(0))
    out.update(
        value=_q(cut.value),
        norm=_q(cut.norm),
        cochain=[_q(x) for x in cut.cochain],
        coboundary=[_q(x) for x in cut.coboundary],
        directed_cut=sorted(cut.directed_cut),
        support_weight=_q(support_weight),
    )
    if support_weight > cut.value:
        print(
            f"warning: {path}: support weight {support_weight} exceeds the cut value {cut.value}; "
            "the support need not be a minimum combinatorial cut",
            file=sys.stderr,
        )
    if not verify_gamma_cut(net, cut.cochain):
        raise CliFailure(EXIT_VERIFY, f"{path}: cochain is not a gamma-cut")
    if not verify_directed_combinatorial_cut(net, cut.directed_cut):
        raise CliFailure(EXIT_VERIFY, f"{path}: support is not a directed combinatorial cut")
    if check and method != "lp":
        ref = min_cut_lp(net).value
        if ref != cut.value:
            raise CliFailure(EXIT_VERIFY, f"{path}: dual cut value {cut.value} differs from lp value {ref}")
        out["check"] = "ok"
    return out


def cmd_brute(path, kind="comb-cut", max_size=None) -> dict:
    b = _load(path)
    net = b.network
    out = {"instance": str(path), "name": b.name, "kind": kind}
    try:
        if kind in ("comb-cut", "directed-cut"):
            C, w = brute_min_combinatorial_cut(net, max_subset_size=max_size, directed=kind == "directed-cut")
            out.update(cut=sorted(C), weight=_q(w))
        elif kind == "flow":
            if graph_terminals(net) is None:
                raise CliFailure(EXIT_MISMATCH, f"{path}: brute-force flow needs a graph with gamma = t - s")
            value, side = brute_graph_max_flow(net)
            out.update(value=_q(value), source_side=sorted(side))
        else:
            raise CliFailure(EXIT_MISMATCH, f"unknown brute-force kind {kind!r}")
    except BruteForceGuardError as e:
        raise CliFailure(EXIT_GUARD, f"{path}: {e}") from None
    return out


def _split_items(text: str) -> list:
    items = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok:
            items.append(int(tok) if tok.lstrip("-").isdigit() else tok)
    return items


def _parse_edges(text: str):
    """``"0>1:5,1>2:1/2"`` into edges and capacities (capacity defaults to 1)."""
    edges, caps = [], []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        arc, _, cap = tok.partition(":")
        u, _, v = arc.partition(">")
        edges.append((int(u), int(v)))
        caps.append(instances.parse_rational(cap) if cap else Fraction(1))
    return edges, caps


def cmd_gen(name, args) -> tuple[dict, str]:
    if name not in GENERATORS:
        raise CliFailure(EXIT_MISMATCH, f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}")
    try:
        if name in ("md", "mdw", "planar-cycle"):
            b = GENERATORS[name]()
        elif name == "octahedron":
            b = GENERATORS[name](split=args.split)
        elif name == "hitting-set":
            if not args.sets:
                raise CliFailure(EXIT_PARSE, "hitting-set needs --sets, e.g. \"1,2;2,3\"")
            family = [_split_items(s) for s in args.sets.split(";") if s.strip()]
            universe = _split_items(args.universe) if args.universe else sorted({e for S in family for e in S}, key=str)
            b = GENERATORS[name](universe, family)
        elif name == "graph":
            if not args.edges:
                raise CliFailure(EXIT_PARSE, "graph needs --edges, e.g. \"0>1:3,1>2:2\"")
            edges, caps = _parse_edges(args.edges)
            b = GENERATORS[name](edges, caps, args.source, args.sink)
        elif name == "random":
            b = GENERATORS[name](args.seed, args.n_vertices, args.dim, args.density)
        else:
            b = GENERATORS[name](args.seed)
    except instances.InstanceFormatError as e:
        raise CliFailure(EXIT_PARSE, str(e)) from None
    except (GeneratorError, ComplexError, NetworkError) as e:
        raise CliFailure(EXIT_INVALID, str(e)) from None
    except ValueError as e:
        raise CliFailure(EXIT_PARSE, str(e)) from None
    return {"generated": b.name, "n_top": b.network.n_top}, instances.dumps(b)


def _read_solution(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.loads(fh.read(), parse_float=instances.reject_float)
    except (OSError, ValueError) as e:
        raise CliFailure(EXIT_PARSE, f"{path}: {e}") from None


def cmd_verify(path, solution_path) -> dict:
    b = _load(path)
    net = b.network
    sol = _read_solution(solution_path)
    out = {"instance": str(path), "solution": str(solution_path)}
    try:
        if "flow" in sol:
            f = [instances.parse_rational(x) for x in sol["flow"]]
            k = instances.parse_rational(sol["value"])
            if len(f) != net.n_top:
                raise CliFailure(EXIT_VERIFY, f"flow has {len(f)} entries, instance has {net.n_top} top simplices")
            bad = flow_violation(net, f, k)
            if bad:
                raise CliFailure(EXIT_VERIFY, f"flow fails: {bad}")
            out.update(kind="flow", value=_q(k), result="pass")
        elif "cochain" in sol:
            p = [instances.parse_rational(x) for x in sol["cochain"]]
            if len(p) != net.n_faces:
                raise CliFailure(EXIT_VERIFY, f"cochain has {len(p)} entries, expected {net.n_faces}")
            cochain = net.complex.cochain(net.d - 1, p)
            if sum((a * g for a, g in zip(p, net.gamma)), Fraction(0)) != -1:
                raise CliFailure(EXIT_VERIFY, "cut fails: cochain does not take the value -1 on gamma")
            if not verify_gamma_cut(net, cochain):
                raise CliFailure(EXIT_VERIFY, "cut fails: gamma still bounds off the coboundary support")
            dp = apply_coboundary(net.complex, cochain)
            C = sol.get("directed_cut", [j for j, a in enumerate(dp) if a < 0])
            if not verify_directed_combinatorial_cut(net, C):
                raise CliFailure(EXIT_VERIFY, "cut fails: a non-negative chain bounds gamma off the directed cut")
            out.update(kind="cut", result="pass")
        elif "cut" in sol:
            C = sol["cut"]
            if not verify_directed_combinatorial_cut(net, C):
                raise CliFailure(EXIT_VERIFY, "cut fails: a non-negative chain bounds gamma off the set")
            out.update(kind="set", result="pass")
        else:
            raise CliFailure(EXIT_PARSE, f"{solution_path}: expected a 'flow', 'cochain' or 'cut' entry")
    except (KeyError, TypeError, instances.InstanceFormatError) as e:
        raise CliFailure(EXIT_PARSE, f"{solution_path}: malformed solution ({e})") from None
    return out


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simplicial-flows", description="Exact max flows and min cuts on simplicial complexes.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, multi=True):
        if multi:
            sp.add_argument("paths", nargs="+", help="instance files")
            sp.add_argument("--jobs", type=int, default=1, help="instances processed in parallel")

    mf = sub.add_parser("maxflow", help="maximum flow")
    common(mf)
    mf.add_argument("--method", choices=("lp", "ff", "dual"), default="lp")
    mf.add_argument("--check", action=argparse.BooleanOptionalAction, default=True,
                    help="cross-check against the LP (default on)")
    mf.add_argument("--trace", help="write per-iteration records of --method ff here")

    mc = sub.add_parser("mincut", help="minimum cut")
    common(mc)
    mc.add_argument("--method", choices=("lp", "dual"), default="lp")
    mc.add_argument("--combinatorial", action="store_true", help="minimum directed combinatorial cut")
    mc.add_argument("--brute", action="store_true", help="with --combinatorial: exhaustive search")
    mc.add_argument("--check", action=argparse.BooleanOptionalAction, default=True)
    mc.add_argument("--max-size", type=int, default=None)

    br = sub.add_parser("brute", help="exhaustive oracles")
    common(br)
    br.add_argument("--kind", default="comb-cut", help="comb-cut, directed-cut or flow")
    br.add_argument("--max-size", type=int, default=None, help="largest subset size tried")

    gn = sub.add_parser("gen", help="write a generated instance")
    gn.add_argument("name")
    gn.add_argument("--out", help="output file (default: stdout)")
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--n-vertices", type=int, default=8)
    gn.add_argument("--dim", type=int, default=2)
    gn.add_argument("--density", type=float, default=0.3)
    gn.add_argument("--split", action="store_true", help="octahedron with an equatorial disk")
    gn.add_argument("--sets", help="hitting-set family, e.g. \"1,2;2,3\"")
    gn.add_argument("--universe", help="hitting-set universe, e.g. \"1,2,3\"")
    gn.add_argument("--edges", help="graph arcs, e.g. \"0>1:3,1>2:1/2\"")
    gn.add_argument("--source", type=int, default=0)
    gn.add_argument("--sink", type=int, default=1)

    vf = sub.add_parser("verify", help="check a flow or cut against an instance")
    vf.add_argument("path")
    vf.add_argument("solution")
    return p


def _run_many(paths, jobs, fn):
    """Apply ``fn`` to each path; returns a list of (result or None, code, message)."""

    def one(path):
        try:
            return fn(path), EXIT_OK, None
        except CliFailure as e:
            return None, e.code, str(e)

    if jobs > 1 and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(one, paths))
    return [one(p) for p in paths]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "gen":
            summary, text = cmd_gen(args.name, args)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text + "\n")
                print(json.dumps(dict(summary, written=args.out)))
            else:
                print(text)
            return EXIT_OK
        if args.verb == "verify":
            print(json.dumps(cmd_verify(args.path, args.solution)))
            return EXIT_OK
    except CliFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code

    trace_fh = None
    sink = None
    if getattr(args, "trace", None):
        trace_fh = open(args.trace, "w", encoding="utf-8")
        lock = threading.Lock()

        def sink(rec):
            with lock:
                trace_fh.write(json.dumps(rec) + "\n")

    try:
        if args.verb == "maxflow":
            results = _run_many(args.paths, args.jobs, lambda p: cmd_maxflow(p, args.method, args.check, sink))
        elif args.verb == "mincut":
            results = _run_many(
                args.paths, args.jobs,
                lambda p: cmd_mincut(p, args.method, args.combinatorial, args.brute, args.check, args.max_size),
            )
        else:
            results = _run_many(args.paths, args.jobs, lambda p: cmd_brute(p, args.kind, args.max_size))
    finally:
        if trace_fh is not None:
            trace_fh.close()
    code = EXIT_OK
    for out, c, msg in results:
        if out is not None:
            print(json.dumps(out))
        if msg:
            print(f"error: {msg}", file=sys.stderr)
        code = max(code, c)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
