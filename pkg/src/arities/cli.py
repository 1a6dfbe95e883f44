"""Command-line front end.  Every command prints one JSON report.

Exit codes: 0 pass, 1 fail (or a counterexample to a claim being checked),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from typing import Any

from ._util import freeze, thaw
from .factcat import (
    check_arity_connectivity,
    counterexample_map,
    seq_counterexample,
)
from .generic import (
    FactObject,
    FactorisationError,
    TMap,
    g_generic_factor,
    is_g_generic,
    is_t_generic,
    morphism_to_json,
    t_generic_factor,
    zigzag_connect,
)
from .graphs import GraphError, graph_from_json, graph_to_dot, graph_to_json, loop_pair, make_sequence, terminal, y_graph
from .paths import Path, PathError, g_compose, g_hom, g_identity, g_inverse, not_cartesian_demo, reduce_count
from .sampling import random_domain, random_g_object, random_graph, random_tmap

DEFAULT_SEED = 20240101


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- input helpers -----------------------------------------------------------


def _load(path: str | None) -> Any:
    if path is None:
        raise UsageError("this command needs a JSON input file (or '-' for stdin)")
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _builtin_graph(name: str):
    if name == "terminal":
        return terminal()
    if name == "loop":
        return loop_pair()
    if name == "y":
        return y_graph()
    if name.startswith("seq:"):
        return make_sequence(int(name[4:]))
    raise UsageError(f"unknown builtin graph {name!r} (terminal, loop, y, seq:N)")


def _graph_arg(args):
    if args.graph:
        return _builtin_graph(args.graph)
    return graph_from_json(_load(args.input))


def _f_arg(args) -> TMap:
    if args.input is None:
        return counterexample_map()
    data = _load(args.input)
    return TMap.from_json(data.get("f", data))


def _dot_or(obj, args, graph):
    if args.format == "dot" and graph is not None:
        obj["dot"] = graph_to_dot(graph)
    return obj


# --- commands ---------------------------------------------------------------


def cmd_reduce(args):
    data = _load(args.input)
    G = graph_from_json(data["graph"])
    p = data["path"]
    path = Path(G, freeze(p["start"]), tuple(freeze(e) for e in p["steps"]))
    r, k = reduce_count(path)
    w = {"input": path.to_json(), "reduced": r.to_json(), "deletions": k}
    return "pass", _dot_or(w, args, G)


def cmd_free_groupoid(args):
    G = _graph_arg(args)
    L = args.max_len
    homs = {(a, b): sorted(g_hom(G, a, b, L), key=lambda p: (len(p), repr(p.steps))) for a in G.vertices for b in G.vertices}
    bad = []
    for (a, b), ps in homs.items():
        for p in ps:
            if g_compose(g_identity(G, a), p) != p or g_compose(p, g_identity(G, b)) != p:
                bad.append(("unit", p.to_json()))
            if g_compose(p, g_inverse(p)) != g_identity(G, a):
                bad.append(("inverse", p.to_json()))
    # associativity on short triples
    short = {k: [p for p in v if len(p) <= max(1, L // 2)] for k, v in homs.items()}
    for (a, b), ps in short.items():
        for (b2, c), qs in short.items():
            if b2 != b:
                continue
            for (c2, d), rs in short.items():
                if c2 != c:
                    continue
                for p in ps:
                    for q in qs:
                        for r in rs:
                            if g_compose(g_compose(p, q), r) != g_compose(p, g_compose(q, r)):
                                bad.append(("assoc", [p.to_json(), q.to_json(), r.to_json()]))
    w = {
        "graph": graph_to_json(G),
        "max_len": L,
        "hom_sizes": [[thaw(a), thaw(b), len(ps)] for (a, b), ps in homs.items()],
        "law_failures": bad[:10],
    }
    return ("fail" if bad else "pass"), _dot_or(w, args, G)


def cmd_generic_factor(args):
    f = _f_arg(args)
    if args.mode == "G":
        o = g_generic_factor(f)
        ok = is_g_generic(o.g) and o.factors(f)
    else:
        o = t_generic_factor(f)
        ok = is_t_generic(o.g) and o.factors(f)
    w = {"f": f.to_json(), "object": o.to_json(), "generic": ok}
    return ("pass" if ok else "fail"), _dot_or(w, args, o.arity)


def cmd_zigzag(args):
    if args.input is None:
        rng = random.Random(args.seed)
        X = random_graph(rng, 5, 6)
        B = random_domain(rng)
        f = random_tmap(rng, B, X, 3, reduced=True)
        o1, o2 = random_g_object(rng, f), random_g_object(rng, f)
    else:
        data = _load(args.input)
        f = TMap.from_json(data["f"])
        o1 = FactObject.from_json(data["o1"])
        o2 = FactObject.from_json(data["o2"])
    zz = zigzag_connect(f, o1, o2)
    ok = zz.validate() and len(zz) <= 4
    w = {"f": f.to_json(), "zigzag": zz.to_json(), "valid": ok}
    return ("pass" if ok else "fail"), w


def _public(rep: dict) -> dict:
    return {k: v for k, v in rep.items() if not k.startswith("_")}


def cmd_check_arities(args):
    f = _f_arg(args)
    rep = check_arity_connectivity(f, args.arity_class, args.bound, mode=args.mode, method=args.method, jobs=args.jobs)
    w = _public(rep)
    if rep["components"] > 1:
        objs, comps = rep["_objects"], rep["_components"]
        w["separated_objects"] = [objs[comps[0][0]].to_json(), objs[comps[1][0]].to_json()]
        return "counterexample", w
    if rep.get("zigzag_failures"):
        return "fail", w
    return "pass", w


def cmd_counterexample(args):
    if args.which != "seq":
        raise UsageError("only the 'seq' counterexample is available")
    rep = seq_counterexample(args.bound, jobs=args.jobs)
    o1, o2 = rep["objects"]
    w = {
        "graph": graph_to_json(rep["graph"]),
        "f": rep["f"].to_json(),
        "objects": [o1.to_json(), o2.to_json()],
        "both_factor_f": rep["both_factor_f"],
        "inner_redundancy": rep["inner_redundancy"],
        "core_redundancy": rep["core_redundancy"],
        "bound": rep["bound"],
        "n_objects": rep["n_objects"],
        "n_morphisms": rep["n_morphisms"],
        "components": rep["components"],
        "separated": rep["separated"],
        "core_violations": rep["core_violations"],
        "inner_violations": rep["inner_violations"],
    }
    if rep["inner_witness"] is not None:
        a, b, k = rep["inner_witness"]
        w["inner_witness"] = {"source": a.to_json(), "target": b.to_json(), "k": morphism_to_json(k)}
    ok = rep["both_factor_f"] and rep["separated"] and rep["core_violations"] == 0
    return ("counterexample" if ok else "fail"), _dot_or(w, args, rep["graph"])


def cmd_not_cartesian(args):
    rep = not_cartesian_demo()
    ok = rep["words_distinct"] and rep["same_image"] and not rep["comparison_injective"]
    return ("counterexample" if ok else "fail"), rep


def _theory_input(args, kind: str):
    from .theories import nerves as nv
    from .theories.commutative import FinCommMonoid, cyclic_monoid

    if args.builtin:
        name = args.builtin
        if name.startswith("cyclic:"):
            n = int(name[7:])
            return cyclic_monoid(n) if kind == "monoid" else nv.cyclic_group(n)
        if name.startswith("chaotic:"):
            return nv.chaotic_groupoid(range(int(name[8:])))
        if name.startswith("chain:") and kind == "category":
            return nv.poset_category(range(int(name[6:])), lambda a, b: a <= b)
        if name.startswith("discrete:"):
            return nv.discrete_category(int(name[9:]))
        raise UsageError(f"unknown builtin {name!r}")
    data = _load(args.input)
    if kind == "monoid":
        return FinCommMonoid.from_json(data)
    if kind == "groupoid" or "inverse" in data:
        return nv.FinGroupoid.from_json(data)
    return nv.FinCategory.from_json(data)


def cmd_nerve(args):
    from .theories import nerves as nv
    from .theories.commutative import gamma_nerve
    from .theories.presheaf import presheaf_to_json

    if args.shape == "delta":
        X = nv.nerve_cat(_theory_input(args, "category"), args.dim)
    elif args.shape == "sym":
        X = nv.sym_nerve(_theory_input(args, "groupoid"), args.dim)
    else:
        X = gamma_nerve(_theory_input(args, "monoid"), args.dim)
    return "pass", {"sizes": X.sizes(), "presheaf": presheaf_to_json(X)}


def _presheaf_arg(args):
    from .theories.presheaf import presheaf_from_json

    data = _load(args.input)
    # accept a full `nerve` report as well as a bare presheaf
    if isinstance(data, dict) and "shape" not in data and "presheaf" in data.get("witnesses", {}):
        data = data["witnesses"]["presheaf"]
    return presheaf_from_json(data)


def cmd_segal_check(args):
    from .theories import nerves as nv
    from .theories.commutative import gamma_segal_failures

    X = _presheaf_arg(args)
    if X.shape.name == "gamma":
        problems = gamma_segal_failures(X)
    else:
        if X.dim < 2:
            raise UsageError("the Segal check needs dimension at least 2")
        problems = nv.segal_failures(X.restrict(nv.SHAPES["delta"]))
    return ("fail" if problems else "pass"), {"shape": X.shape.name, "sizes": X.sizes(), "problems": problems[:10]}


def cmd_reconstruct(args):
    from .theories import nerves as nv
    from .theories.commutative import recover_monoid

    X = _presheaf_arg(args)
    try:
        if X.shape.name == "gamma":
            out = recover_monoid(X)
        elif X.shape.name == "sym":
            out = nv.reconstruct_groupoid(X)
        else:
            out = nv.reconstruct_cat(X)
    except nv.PresheafError as exc:
        return "fail", {"reason": str(exc)}
    return "pass", {"shape": X.shape.name, "result": out.to_json()}


def cmd_factor(args):
    from .theories import operators as ops
    from .theories.commutative import NMatrix, factor_theta_com, is_free, is_generic_com, theta_com_compose

    if args.kind == "thetacom":
        if args.matrix is None:
            raise UsageError("--matrix is required, e.g. --matrix '[[2,1]]'")
        try:
            A = NMatrix.from_json(json.loads(args.matrix))
        except json.JSONDecodeError as exc:
            raise UsageError(f"malformed matrix at column {exc.colno}: {exc.msg}") from exc
        g, h = factor_theta_com(A)
        ok = theta_com_compose(g, h) == A and is_generic_com(g) and is_free(h)
        return ("pass" if ok else "fail"), {"input": A.to_json(), "generic": g.to_json(), "free": h.to_json()}
    if args.op is None:
        raise UsageError("--op is required, e.g. --op 0,1,0")
    try:
        values = [int(x) for x in args.op.split(",")]
    except ValueError as exc:
        raise UsageError(f"--op must be comma-separated integers: {exc}") from exc
    n = args.n if args.n is not None else max(values)
    if args.kind == "delta":
        f = ops.SimplicialOperator(len(values) - 1, n, values, True)
        g, h = ops.factor_delta(f)
        ok = g.then(h).values == f.values and g.is_endpoint_preserving() and ops.is_delta0(h)
    else:
        f = ops.SimplicialOperator(len(values) - 1, n, values, False)
        g, h = ops.factor_delta_sym(f)
        ok = g.then(h).values == f.values and ops.is_sym_generic(g) and (ops.is_unit_step(h))
    return ("pass" if ok else "fail"), {"input": f.to_json(), "generic": g.to_json(), "free": h.to_json()}


def cmd_gamma_segal(args):
    from .theories.commutative import gamma_nerve, gamma_segal_failures, recover_monoid

    M = _theory_input(args, "monoid")
    X = gamma_nerve(M, args.dim)
    problems = gamma_segal_failures(X)
    w = {"sizes": X.sizes(), "problems": problems[:10]}
    if not problems:
        R = recover_monoid(X)
        same = R.unit == (M.unit,) and all(R.add((a,), (b,)) == (M.add(a, b),) for a in M.carrier for b in M.carrier)
        w["recovered"] = R.to_json()
        w["round_trip"] = same
        if not same:
            problems = ["recovered monoid differs"]
    return ("fail" if problems else "pass"), w


COMMANDS = {
    "reduce": cmd_reduce,
    "free-groupoid": cmd_free_groupoid,
    "generic-factor": cmd_generic_factor,
    "zigzag": cmd_zigzag,
    "check-arities": cmd_check_arities,
    "counterexample": cmd_counterexample,
    "not-cartesian": cmd_not_cartesian,
    "nerve": cmd_nerve,
    "segal-check": cmd_segal_check,
    "reconstruct": cmd_reconstruct,
    "factor": cmd_factor,
    "gamma-segal": cmd_gamma_segal,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "dot"], default="json", help="add DOT renderings of graph witnesses")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomised inputs")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for enumeration")

    p = _Parser(prog="arities", description="Checks for monads with arities on involutive graphs and their theories.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, inp=True):
        s = sub.add_parser(name, help=help_, parents=[common])
        if inp:
            s.add_argument("input", nargs="?", help="JSON input file, or - for stdin")
        return s

    add("reduce", "remove all redundancies from a path ({graph, path} JSON)")
    s = add("free-groupoid", "enumerate reduced-path hom-sets and check groupoid laws")
    s.add_argument("--graph", help="builtin graph: terminal, loop, y, seq:N")
    s.add_argument("--max-len", type=int, default=3)
    s = add("generic-factor", "initial factorisation of f: B -> TX (default: the Seq counterexample f)")
    s.add_argument("--mode", choices=["T", "G"], default="T")
    add("zigzag", "join two G-generic factorisations of f ({f, o1, o2} JSON, or random from --seed)")
    s = add("check-arities", "connected components of the bounded factorisation category")
    s.add_argument("--class", dest="arity_class", choices=["seq", "acyc"], required=True)
    s.add_argument("--bound", type=int, default=6)
    s.add_argument("--mode", choices=["T", "G"], default="G")
    s.add_argument("--method", choices=["auto", "brute", "moves"], default="auto")
    s = add("counterexample", "reproduce the sequence-arity counterexample for the free groupoid monad", inp=False)
    s.add_argument("which", choices=["seq"])
    s.add_argument("--bound", type=int, default=6)
    add("not-cartesian", "witness that the free groupoid monad does not preserve a pullback", inp=False)
    s = add("nerve", "nerve of a category, groupoid or commutative monoid")
    s.add_argument("--shape", choices=["delta", "sym", "gamma"], default="delta")
    s.add_argument("--dim", type=int, default=4)
    s.add_argument("--builtin", help="cyclic:N, chaotic:N, chain:N, discrete:N")
    add("segal-check", "Segal condition for a presheaf JSON")
    add("reconstruct", "category, groupoid or monoid from a Segal presheaf")
    s = add("factor", "generic/free factorisation of an operator or matrix", inp=False)
    s.add_argument("--in", dest="kind", choices=["delta", "sym", "thetacom"], required=True)
    s.add_argument("--op", help="operator values, e.g. 0,1,0")
    s.add_argument("--n", type=int, help="target dimension of the operator")
    s.add_argument("--matrix", help="row-major matrix, e.g. [[2,1]]")
    s = add("gamma-segal", "Γ-nerve of a commutative monoid: Segal check and recovery")
    s.add_argument("--dim", type=int, default=4)
    s.add_argument("--builtin", help="cyclic:N")
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    t0 = time.perf_counter()
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        verdict, witnesses = COMMANDS[command](args)
        code = 0 if verdict == "pass" else 1
        if verdict == "counterexample" and command in ("counterexample", "not-cartesian"):
            code = 0  # the counterexample is the claim being reproduced
        report = {"command": command, "verdict": verdict, "seed": getattr(args, "seed", None), "witnesses": witnesses}
    except UsageError as exc:
        report, code = {"command": command, "verdict": "error", "error": str(exc)}, 2
    except (GraphError, PathError, FactorisationError, KeyError, TypeError, ValueError) as exc:
        report, code = {"command": command, "verdict": "error", "error": f"{type(exc).__name__}: {exc}"}, 2
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 4)}
    json.dump(report, out, indent=2, default=_fallback)
    out.write("\n")
    return code


def _fallback(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj, key=repr)
    if isinstance(obj, tuple):
        return list(obj)
    return repr(obj)


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 0
    sys.exit(code)


if __name__ == "__main__":
    main()
