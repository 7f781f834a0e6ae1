"""Command-line entry point: ``rtgirth <command> [flags]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from collections import Counter

from . import oracle
from .cover import fast_roundtrip_cover, scc_via_cover
from .cycles import CycleWitness, WitnessError
from .detour import girth_additive_deterministic
from .girth import fast_roundtrip_spanner, girth_additive_randomized, girth_multiplicative
from .graph import Graph, GraphParseError, edge_subgraph, format_graph, parse_graph, tarjan_scc

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

COMMANDS = ("cover", "spanner", "girth-mult", "girth-add", "girth-add-det", "scc", "verify", "gen")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rtgirth", description="Roundtrip covers, spanners and girth estimates.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", metavar="FILE", help="edge-list graph ('-' for stdin)")
    p.add_argument("--output", metavar="FILE", help="write the report (or generated graph) here")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--R", type=int, default=None)
    p.add_argument("--a", type=float, default=0.5)
    p.add_argument("--epsilon", type=float, default=0.25)
    p.add_argument("--c", type=float, default=2.0)
    p.add_argument("--oracle", action="store_true", help="check the result against brute force")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p.add_argument("--early-stop", action="store_true", help="girth-add-det: stop at the first detour <= 16d")
    p.add_argument("--report", metavar="FILE", help="verify: a previous JSON report to check")
    # gen
    p.add_argument("--family", choices=("random", "strong", "cycle"), default="random")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--max-len", type=int, default=1)
    p.add_argument("--hardness", action="store_true", help="gen: hardness instance of --input")
    return p


def _read_input(path: str | None) -> tuple[Graph, dict]:
    if not path:
        raise UsageError("--input is required")
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    g = parse_graph(text)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    return g, {"path": path, "sha256": digest, "n": g.n, "m": g.m}


def _default_k(args, n: int) -> float:
    if args.k is not None:
        if args.k < 1:
            raise UsageError("--k must be at least 1")
        return args.k
    return 2.0


def _check_unit(name: str, value: float) -> None:
    if not 0 < value < 1:
        raise UsageError(f"--{name} must lie in (0, 1)")


def _log_n(n: int) -> float:
    return math.log(n) if n > 1 else 1.0


# --------------------------------------------------------------------------- #
# verdicts


def verify_witness(g: Graph, w: dict | None, claimed) -> dict:
    """Is the claimed estimate certified by its witness and no smaller than the girth?"""
    true_g, _ = oracle.exact_girth(g)
    if w is None:
        ok = claimed is None and math.isinf(true_g)
        return {"check": "girth soundness", "pass": ok, "exact": None if math.isinf(true_g) else true_g,
                "reason": "" if ok else "no witness for a cyclic graph"}
    try:
        cyc = CycleWitness(tuple(w["edges"]), tuple(w["vertices"]), w["length"], w.get("provenance", ""))
        length = cyc.verify(g)
    except (WitnessError, KeyError, TypeError) as exc:
        return {"check": "girth soundness", "pass": False, "exact": true_g, "reason": f"bad witness: {exc}"}
    if claimed != length:
        return {"check": "girth soundness", "pass": False, "exact": true_g,
                "reason": f"estimate {claimed} != witness length {length}"}
    ok = length >= true_g
    return {"check": "girth soundness", "pass": ok, "exact": true_g,
            "reason": "" if ok else f"estimate {length} below the girth {true_g}"}


def verify_spanner(g: Graph, edges, k: float, c: float) -> dict:
    bound = 24 * (c + 1) * k * _log_n(g.n)
    if any(not 0 <= e < g.m for e in edges):
        return {"check": "spanner stretch", "pass": False, "reason": "edge id out of range"}
    stretch = oracle.max_stretch(g, edge_subgraph(g, edges))
    ok = stretch <= bound
    return {"check": "spanner stretch", "pass": ok, "stretch": None if math.isinf(stretch) else stretch,
            "bound": bound, "reason": "" if ok else f"stretch {stretch} exceeds {bound:.3f}"}


def verify_cover(g: Graph, balls: list[dict], R: float) -> dict:
    rt = oracle.exact_roundtrip_apsp(g)
    share = [[False] * g.n for _ in range(g.n)]
    for b in balls:
        if b.get("failure"):
            continue
        mem = b["members"]
        for u in mem:
            row = share[u]
            for v in mem:
                row[v] = True
    missing = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if rt[u, v] <= R and not share[u][v]]
    ok = not missing
    return {"check": "cover membership", "pass": ok, "uncovered_pairs": len(missing),
            "reason": "" if ok else f"pair {missing[0]} at roundtrip <= {R} shares no ball"}


def verify_scc(g: Graph, labels) -> dict:
    want = tarjan_scc(g).canonical()
    got = {}
    for v, lab in enumerate(labels):
        got.setdefault(lab, set()).add(v)
    ok = frozenset(frozenset(c) for c in got.values()) == want
    return {"check": "scc agreement", "pass": ok, "reason": "" if ok else "partition differs from Tarjan"}


# --------------------------------------------------------------------------- #
# commands


def _girth_report(g, est, args, params):
    out = est.to_dict()
    rep = {"parameters": params, "outputs": out}
    if args.oracle:
        rep["verification"] = [verify_witness(g, out["witness"], out["estimate"])]
    return rep


def run(args) -> dict:
    cmd = args.command
    if cmd == "gen":
        return _gen(args)
    if cmd == "verify":
        return _verify(args)
    g, info = _read_input(args.input)
    params = {"seed": args.seed, "c": args.c}
    if cmd == "cover":
        if args.R is None or args.R <= 0:
            raise UsageError("cover needs a positive --R")
        k = _default_k(args, g.n)
        params.update(k=k, R=args.R)
        cover = fast_roundtrip_cover(g, k, args.R, args.c, args.seed)
        d = cover.to_dict()
        hist = Counter(cover.membership)
        d["membership_histogram"] = {str(key): hist[key] for key in sorted(hist)}
        d["ball_count"] = len(cover)
        rep = {"parameters": params, "outputs": d}
        if args.oracle:
            rep["verification"] = [verify_cover(g, d["balls"], args.R)]
    elif cmd == "spanner":
        k = _default_k(args, g.n)
        params.update(k=k)
        sp = fast_roundtrip_spanner(g, k, args.c, args.seed)
        rep = {"parameters": params, "outputs": {
            "edges": sp.edges, "size": sp.size, "f0_size": len(sp.f0),
            "scales": [sg.t for sg in sp.scales], "ball_count": sum(len(cv) for cv in sp.covers),
        }}
        if args.oracle:
            rep["verification"] = [verify_spanner(g, sp.edges, k, args.c)]
    elif cmd == "girth-mult":
        k = _default_k(args, g.n)
        params.update(k=k)
        rep = _girth_report(g, girth_multiplicative(g, k, args.c, args.seed), args, params)
    elif cmd == "girth-add":
        _check_unit("a", args.a)
        params.update(a=args.a)
        rep = _girth_report(g, girth_additive_randomized(g, args.a, args.c, args.seed), args, params)
    elif cmd == "girth-add-det":
        _check_unit("a", args.a)
        _check_unit("epsilon", args.epsilon)
        params = {"a": args.a, "epsilon": args.epsilon, "early_stop": args.early_stop}
        est = girth_additive_deterministic(g, args.a, args.epsilon, early_stop=args.early_stop)
        rep = _girth_report(g, est, args, params)
    elif cmd == "scc":
        if args.R is not None:
            params.update(R=args.R, method="cover")
            part = scc_via_cover(g, args.R, args.seed, args.c)
        else:
            params = {"method": "tarjan"}
            part = tarjan_scc(g)
        rep = {"parameters": params, "outputs": {"labels": part.labels, "components": part.clusters}}
        if args.oracle:
            rep["verification"] = [verify_scc(g, part.labels)]
    else:  # pragma: no cover
        raise UsageError(f"unknown command {cmd}")
    rep["input"] = info
    return rep


def _verify(args) -> dict:
    g, info = _read_input(args.input)
    checks = []
    if args.report:
        try:
            with open(args.report, encoding="utf-8") as fh:
                prior = json.load(fh)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load report {args.report}: {exc}") from None
        if prior.get("schema") != SCHEMA:
            raise UsageError("report has an unknown schema")
        if prior.get("input", {}).get("sha256") not in (None, info["sha256"]):
            checks.append({"check": "input digest", "pass": False, "reason": "report was made from another input"})
        kind = prior.get("command", "")
        out = prior.get("outputs", {})
        par = prior.get("parameters", {})
        if kind.startswith("girth"):
            checks.append(verify_witness(g, out.get("witness"), out.get("estimate")))
        elif kind == "spanner":
            checks.append(verify_spanner(g, out.get("edges", []), par.get("k", 2.0), par.get("c", 2.0)))
        elif kind == "cover":
            checks.append(verify_cover(g, out.get("balls", []), par.get("R", 0)))
        elif kind == "scc":
            checks.append(verify_scc(g, out.get("labels", [])))
        else:
            raise UsageError(f"cannot verify a {kind!r} report")
        params = {"report": args.report, "command": kind}
    else:
        k = _default_k(args, g.n)
        params = {"seed": args.seed, "k": k, "c": args.c}
        sp = fast_roundtrip_spanner(g, k, args.c, args.seed)
        checks.append(verify_spanner(g, sp.edges, k, args.c))
        est = girth_multiplicative(g, k, args.c, args.seed).to_dict()
        checks.append(verify_witness(g, est["witness"], est["estimate"]))
        if args.R is not None:
            params["R"] = args.R
            cover = fast_roundtrip_cover(g, k, args.R, args.c, args.seed).to_dict()
            checks.append(verify_cover(g, cover["balls"], args.R))
    return {"parameters": params, "outputs": {}, "verification": checks, "input": info}


def _gen(args) -> dict:
    if args.hardness:
        base, info = _read_input(args.input)
        g = oracle.hardness_instance(base)
        params = {"hardness": True, "base": info}
    else:
        try:
            if args.family == "random":
                g = oracle.random_digraph(args.n, args.m, args.max_len, args.seed)
            elif args.family == "strong":
                g = oracle.random_strongly_connected(args.n, args.m, args.max_len, args.seed)
            else:
                g = Graph(args.n, [(i, (i + 1) % args.n, 1) for i in range(args.n)])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        params = {"family": args.family, "n": args.n, "m": args.m, "max_len": args.max_len, "seed": args.seed}
    return {"parameters": params, "graph": format_graph(g)}


def _human(rep: dict) -> str:
    out = rep.get("outputs", {})
    lines = [f"command: {rep['command']}"]
    if "estimate" in out:
        est = out["estimate"]
        lines.append(f"estimate: {'inf' if est is None else est}")
        if out.get("witness"):
            lines.append("witness: " + " ".join(map(str, out["witness"]["vertices"])))
    if "size" in out:
        lines.append(f"spanner size: {out['size']}")
    if "ball_count" in out:
        lines.append(f"balls: {out['ball_count']}")
    if "components" in out:
        lines.append(f"components: {len(out['components'])}")
    for v in rep.get("verification", []):
        lines.append(f"{v['check']}: {'PASS' if v['pass'] else 'FAIL'}" + (f" ({v['reason']})" if v.get("reason") else ""))
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        started = time.perf_counter()
        rep = run(args)
    except UsageError as exc:
        print(f"rtgirth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GraphParseError as exc:
        print(f"rtgirth: input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, oracle.OracleLimitError) as exc:
        print(f"rtgirth: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "gen":
        text = rep["graph"]
    else:
        rep = {"schema": SCHEMA, "command": args.command, **rep}
        if args.timing:
            rep["wall_clock_s"] = round(time.perf_counter() - started, 6)
        text = json.dumps(rep, sort_keys=True, indent=2) + "\n" if args.json else _human(rep)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [v for v in rep.get("verification", []) if not v["pass"]] if isinstance(rep, dict) else []
    if failed:
        for v in failed:
            print(f"rtgirth: verification failed: {v['check']}: {v['reason']}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
