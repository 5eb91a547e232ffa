"""Command-line interface.

Exit status: 0 on success, 2 when an input violates a precondition, 3 when
the node budget runs out.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import chow, io, projgeom, sha, weights, wonderful
from .errors import BudgetExceeded, PreconditionError
from .rational import fmt, fmt_all, parse_list, random_nonzero_rational, random_rational

EXIT_OK, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3


@dataclass
class RunConfig:
    n: Optional[int]
    weights: Optional[weights.WeightVector]
    seed: int
    budget: int
    format: str
    threads: int

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        n = args.n
        if n is not None and n < 3:
            raise PreconditionError("n must be at least 3")
        if args.budget <= 0:
            raise PreconditionError("budget must be positive")
        w = None
        if args.weights is not None:
            w = weights.WeightVector(parse_list(args.weights))
            if n is not None and w.n != n:
                raise PreconditionError(f"--weights has {w.n} entries but --n is {n}")
        elif n is not None and n >= 3:
            w = weights.default_base_weight(n)
        return cls(n, w, args.seed, args.budget, args.format, args.threads)

    def need_n(self) -> int:
        if self.n is None:
            raise PreconditionError("--n is required")
        return self.n


def _report(args: argparse.Namespace, result, certificates=()) -> dict:
    return {"command": args.command, "result": result, "certificates": list(certificates)}


# -- commands -------------------------------------------------------------------


def cmd_building_set(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    elems = wonderful.building_set(n, cfg.weights)
    per = {}
    for e in elems:
        per[str(e.codim)] = per.get(str(e.codim), 0) + 1
    res = {"n": n, "weights": io.weights_to_json(cfg.weights), "count": len(elems),
           "per_codim": per, "elements": [list(e.I) for e in elems]}
    text = f"{len(elems)} elements\n" + "".join(f"H{{{','.join(map(str, e.I))}}} codim {e.codim}\n" for e in elems)
    return res, text, None


def cmd_strata(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    labels = wonderful.strata(n, cfg.weights, args.depth, cfg.budget, cfg.seed)
    zero = wonderful.zero_dimensional(labels, n)
    res = {"n": n, "count": len(labels), "zero_dimensional": len(zero),
           "strata": [{"factors": io.label_to_json(L), "dim": L.dim(n)} for L in labels]}
    text = "".join(f"{io._label_name(L)} dim {L.dim(n)}\n" for L in labels)
    return res, text, io.strata_to_dot(labels)


def cmd_blowup_order(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    seq = wonderful.blow_up_sequence(n, cfg.weights)
    res = {"n": n, "order": [{"I": list(e.I), "dim": e.dim(n)} for e in seq]}
    text = "".join(f"{k + 1}. H{{{','.join(map(str, e.I))}}} dim {e.dim(n)}\n" for k, e in enumerate(seq))
    return res, text, None


def _need_sha(args) -> sha.Sha:
    if not args.sha:
        raise PreconditionError("--sha FILE is required")
    return io.load_sha(args.sha)


def cmd_stable_replace(cfg: RunConfig, args) -> tuple:
    x = _need_sha(args)
    if args.I is None:
        raise PreconditionError("--I is required")
    I = tuple(int(i) for i in args.I.split(","))
    mu = parse_list(args.mu) if args.mu else None
    w = cfg.weights if args.weights is not None else None
    y = sha.stable_replacement(x, args.vertex, I, mu=mu, w=w, seed=cfg.seed)
    data = io.sha_to_json(y)
    return data, io.dumps(data), io.sha_to_dot(y)


def cmd_dual_graph(cfg: RunConfig, args) -> tuple:
    x = _need_sha(args)
    g = sha.dual_graph(x)
    res = io.dual_graph_to_json(g)
    text = "".join(f"{v}{' (root)' if v == g.root else ''}: {{{','.join(map(str, m))}}}\n" for v, m in g.markings)
    text += "".join(f"{a} -- {b}\n" for a, b in g.edges)
    return res, text, io.dual_graph_to_dot(g)


def cmd_cycle_class(cfg: RunConfig, args) -> tuple:
    x = _need_sha(args)
    ms = [chow.check_m(parse_list(args.m), x.n)] if args.m else chow.m_vectors(x.n)
    ms = [tuple(int(k) for k in m) for m in ms]
    cls = chow.cycle_class(x)
    oracle = None
    certs = []
    if args.oracle:
        def per_component(c):
            config = chow.DualConfig.of_component(c)
            cond = chow.generic_conditions(config, cfg.seed)
            return [int(chow.reparametrized_orbit_system(config, cond, m)) for m in ms]

        with ThreadPoolExecutor(max_workers=max(1, cfg.threads)) as pool:
            verdicts = list(pool.map(per_component, x.components))
        oracle = [sum(v[k] for v in verdicts) for k in range(len(ms))]
        certs.append(f"generic conditions certified on {len(x.components)} components")
    rows = []
    for k, m in enumerate(ms):
        row = {"m": list(m), "c": cls[m]}
        if oracle is not None:
            row["oracle"] = oracle[k]
        rows.append(row)
    text = "".join(f"{list(r['m'])} c={r['c']}" + (f" oracle={r['oracle']}" if "oracle" in r else "") + "\n" for r in rows)
    return rows, text, None, certs


def cmd_exclusion(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    cert = weights.exclusion_certificate(n)
    res = cert.to_json()
    text = (f"{res['verdict']}\nwitness triple: {{{','.join(map(str, cert.triple))}}}\n"
            f"relaxed system: {'feasible' if cert.relaxed_feasible else 'infeasible'}"
            + (f" at w = ({', '.join(res['relaxed_witness'])})" if cert.relaxed_witness else "") + "\n")
    return res, text, None


def cmd_family_check(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    rng = random.Random(f"family-check/{n}/{cfg.seed}")
    a = projgeom.generic_base_params(n, cfg.seed)
    ok = 0
    for _ in range(args.trials):
        s = [random_nonzero_rational(rng) for _ in range(n - 2)]
        t = [random_nonzero_rational(rng), random_rational(rng), random_rational(rng)]
        ok += projgeom.verify_universal_family(n, a, s, t)
    res = {"n": n, "trials": args.trials, "holds": ok, "base_params": fmt_all(a)}
    return res, f"{ok}/{args.trials} identities hold\n", None


def cmd_walls(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    if args.target is None:
        walls = weights.all_walls(n)
        res = {"n": n, "walls": [w.to_json() for w in walls]}
        return res, "".join(f"{w.kind} {{{','.join(map(str, w.indices))}}}\n" for w in walls), None
    start = cfg.weights if args.weights is not None else weights.default_base_weight(n)
    target = weights.WeightVector(parse_list(args.target))
    chain = weights.weight_chain(start, target, seed=cfg.seed)
    crossed = [weights.adjacent(u, v) for u, v in zip(chain, chain[1:])]
    res = {"n": n, "chain": [fmt_all(w) for w in chain], "crossed": [w.to_json() for w in crossed]}
    text = "".join(f"{w.kind} {{{','.join(map(str, w.indices))}}}\n" for w in crossed)
    return res, text, None


def cmd_h_locus(cfg: RunConfig, args) -> tuple:
    n = cfg.need_n()
    if args.I is None:
        raise PreconditionError("--I is required")
    I = tuple(int(i) for i in args.I.split(","))
    a = parse_list(args.a) if args.a else projgeom.generic_base_params(n, cfg.seed)
    eqs = projgeom.h_locus_equations(n, a, I)
    res = {"n": n, "a": fmt_all(a), "I": list(I), "equations": [fmt_all(e) for e in eqs],
           "rank": len(eqs), "dim": n - len(I) - 1}
    text = "".join(" + ".join(f"({fmt(c)})s{k + 1}" for k, c in enumerate(e) if c) + " = 0\n" for e in eqs)
    return res, text, None


COMMANDS: dict[str, Callable] = {
    "building-set": cmd_building_set,
    "strata": cmd_strata,
    "blowup-order": cmd_blowup_order,
    "stable-replace": cmd_stable_replace,
    "dual-graph": cmd_dual_graph,
    "cycle-class": cmd_cycle_class,
    "exclusion": cmd_exclusion,
    "family-check": cmd_family_check,
    "walls": cmd_walls,
    "h-locus": cmd_h_locus,
}


def _default_seed() -> int:
    raw = os.environ.get("SHAMODULI_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"SHAMODULI_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--weights", help="comma-separated rationals, e.g. 1,1,2/3")
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--budget", type=int, default=10 ** 6)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    p = argparse.ArgumentParser(prog="shamoduli", description="Exact computations with stable line arrangements.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "strata":
            sp.add_argument("--depth", type=int)
        if name in ("stable-replace", "dual-graph", "cycle-class"):
            sp.add_argument("--sha", help="sha JSON file")
        if name == "stable-replace":
            sp.add_argument("--vertex", type=int, default=0)
            sp.add_argument("--I")
            sp.add_argument("--mu")
        if name == "cycle-class":
            sp.add_argument("--m")
            sp.add_argument("--oracle", action="store_true")
        if name == "family-check":
            sp.add_argument("--trials", type=int, default=100)
        if name == "walls":
            sp.add_argument("--target", help="end weight vector for a wall-crossing chain")
        if name == "h-locus":
            sp.add_argument("--I")
            sp.add_argument("--a")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        cfg = RunConfig.from_args(args)
        out = COMMANDS[args.command](cfg, args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, ValueError) as exc:
        print(f"precondition failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    result, text, dot = out[:3]
    certs = out[3] if len(out) > 3 else ()
    if cfg.format == "dot":
        if dot is None:
            print(f"{args.command} has no DOT output", file=sys.stderr)
            return EXIT_PRECONDITION
        sys.stdout.write(dot)
    elif cfg.format == "text":
        sys.stdout.write(text)
    else:
        rep = _report(args, result, certs)
        if args.timing:
            rep["timing_ms"] = round((time.perf_counter() - start) * 1000)
        sys.stdout.write(io.dumps(rep))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
