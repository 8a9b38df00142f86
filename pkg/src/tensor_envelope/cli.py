"""Command-line workbench.

Every command writes one JSON report (schema 1) to stdout or to --out.
Exit codes: 0 success, 1 a checked property or axiom failed (the report
carries the witness), 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .cache import ENV_VAR, default_cache_dir, load_or_build
from .errors import ConfigError, EnvelopeError, SizeLimitExceeded, UnsupportedAutGroup
from .scalar import ScalarParseError, make_field

SCHEMA = 1
ALGEBRA_CAP = 3


# ------------------------------------------------------------ configuration
class Config:
    def __init__(self, args):
        from .regular import make_backend
        self.args = args
        self.backend = args.backend
        if args.N < 0:
            raise ConfigError("N must be non-negative")
        if args.threads < 1:
            raise ConfigError("threads must be at least 1")
        try:
            self.F = make_field(args.t)
        except (ScalarParseError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot parse the parameter {args.t!r}: {exc}") from exc
        try:
            self.cat = make_backend(args.backend, args.q)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if args.N > self.cat.cap:
            raise ConfigError(f"N={args.N} exceeds the backend cap {self.cat.cap}")
        self.cache_dir = args.cache_dir or default_cache_dir()

    def header(self, command) -> dict:
        a = self.args
        return {"schema": SCHEMA, "command": command, "backend": self.cat.backend,
                "q": a.q if self.cat.backend == "finvec" else None,
                "t": self.F.name, "N": a.N}

    def need_algebra_cap(self):
        if self.args.N > ALGEBRA_CAP:
            raise ConfigError(f"truncations are limited to N <= {ALGEBRA_CAP}")

    def algebra(self):
        from .weights import build_algebra
        self.need_algebra_cap()
        A = build_algebra(self.cat, self.F, self.args.N)
        # the status goes to stderr so cold and warm runs print identical reports
        sys.stderr.write(f"structure cache: {load_or_build(self.cache_dir, A)}\n")
        return A

    def hw(self):
        from .weights import highest_weight_category
        if self.cat.backend != "finset_op":
            raise ConfigError("highest-weight commands need the finset-op backend")
        A = self.algebra()
        return A, highest_weight_category(A)

    def diagram(self):
        from .diagram import DiagramCategory
        return DiagramCategory(self.cat, self.F)

    def pmap(self, fn, items):
        """Map in a thread pool; results come back in input order."""
        items = list(items)
        if self.args.threads > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.args.threads) as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]


def write_csv(path, names, matrix):
    """A labelled square matrix; the header row repeats the column labels."""
    if not path:
        return
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([""] + list(names))
        for name, row in zip(names, matrix):
            w.writerow([name] + list(row))


# ------------------------------------------------------------ commands
def cmd_homdim(cfg, a):
    X, Y = cfg.cat.obj(a.X), cfg.cat.obj(a.Y)
    try:
        dim = len(cfg.cat.enumerate_relations(X, Y))
    except SizeLimitExceeded as exc:
        raise ConfigError(str(exc)) from exc
    return {**cfg.header("homdim"), "source": X.to_json(), "target": Y.to_json(), "dim": dim}, True


def cmd_compose(cfg, a):
    from .jsonio import morphism_from_json, morphism_to_json
    text = a.morphisms
    if not text.lstrip().startswith(("{", "[")):
        path = Path(text)
        if not path.exists():
            raise ConfigError(f"{text!r} is neither JSON nor a file")
        text = path.read_text()
    try:
        data = json.loads(text)
    except ValueError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from exc
    if isinstance(data, dict):
        data = [data.get("left"), data.get("right")]
    if not isinstance(data, list) or len(data) != 2 or None in data:
        raise ConfigError("compose expects [g, f] or {\"left\": g, \"right\": f}")
    D = cfg.diagram()
    g, f = (morphism_from_json(D, m) for m in data)
    if g.source != f.target:
        raise ConfigError(f"cannot compose: {g.source} != {f.target}")
    h = D.compose(g, f)
    return {**cfg.header("compose"), "result": morphism_to_json(D, h)}, True


def cmd_triangular(cfg, a):
    from .verify import factorization_report, order_report, triangular_verify
    D = cfg.diagram()
    N = a.N
    objs = [cfg.cat.obj(n) for n in range(N + 1)]
    tri = triangular_verify(D, N)
    fac = {f"{X}->{Z}": factorization_report(D, X, Z, objs) for X in objs for Z in objs}
    order = order_report(cfg.cat, min(N, 3))
    ok = tri["ok"] and all(v["ok"] for v in fac.values()) and order["ok"]
    return {**cfg.header("triangular-check"), "triangular": tri, "factorization": fac,
            "order": order, "ok": ok}, ok


def cmd_algebra_build(cfg, a):
    A = cfg.algebra()
    n = len(A.objects)
    full = a.N <= 2
    ok, info = A.check_associativity(samples=None if full else 50, seed=a.seed)
    out = {**cfg.header("algebra build"),
           "objects": [X.to_json() for X in A.objects],
           "hom_dims": [[A.hom_dim(i, j) for j in range(n)] for i in range(n)],
           "total_dim": A.total_dim(),
           "associativity": {"ok": ok, "mode": "exhaustive" if full else "sampled",
                             **({"checked": info} if ok else {"witness": list(info)})}}
    try:
        from .weights import weight_labels
        labels, _, _ = weight_labels(A)
        out["weights"] = [lab.to_json() for lab in labels]
    except UnsupportedAutGroup as exc:
        out["weights"] = {"unsupported": str(exc)}
    out["ok"] = ok
    write_csv(a.csv, [str(X) for X in A.objects], out["hom_dims"])
    return out, ok


def cmd_hwc_verify(cfg, a):
    from .verify import gram_rank_drops, verify_highest_weight
    A, hw = cfg.hw()
    rep = verify_highest_weight(hw, A)
    rep["gram_rank_drops"] = gram_rank_drops(hw)
    rep["labels"] = [hw.names[lab] for lab in hw.labels]
    if "matrix" in rep.get("unitriangular", {}):
        write_csv(a.csv, rep["labels"], rep["unitriangular"]["matrix"])
    return {**cfg.header("hwc verify"), "report": rep, "ok": rep["ok"]}, rep["ok"]


def cmd_ringel(cfg, a):
    from .jsonio import complex_to_json
    from .ringel import RingelEngine, format_laurent
    from .verify import ringel_report
    A, hw = cfg.hw()
    eng = RingelEngine(hw)
    names = hw.names
    head = cfg.header(f"ringel {a.action}")
    if a.action == "resolve":
        cxs = cfg.pmap(eng.Y, hw.labels)
        ok, table, wit = eng.exceptional_report()
        out = {"collection": {names[lab]: complex_to_json(hw, Y) for lab, Y in zip(hw.labels, cxs)},
               "exceptional": {"ok": ok, "witnesses": wit,
                               "hom": {f"{names[x]},{names[y]}": format_laurent(h)
                                       for (x, y), h in table.items() if h}}}
        return {**head, **out, "ok": ok}, ok
    if a.action == "dual":
        cxs = cfg.pmap(eng.X, hw.labels)
        rep = ringel_report(hw, eng)
        out = {"dual_collection": {names[lab]: complex_to_json(hw, X) for lab, X in zip(hw.labels, cxs)},
               "report": rep}
        return {**head, **out, "ok": rep["ok"]}, rep["ok"]
    # tilting
    def one(lab):
        T, record = hw.tilting(lab)
        dcert = hw.delta_certificate(T)
        ncert = hw.nabla_certificate(T)
        E = hw.endomorphism_algebra(T)
        return {"dims": T.dims, "record": [names[x] for x in record],
                "top_multiplicity": hw.multiplicity(T, lab),
                "delta_certificate": all(v == 0 for v in dcert.values()),
                "nabla_certificate": all(v == 0 for v in ncert.values()),
                "local_endomorphisms": bool(E is not None and E.is_local())}
    res = cfg.pmap(one, hw.labels)
    table = {names[lab]: r for lab, r in zip(hw.labels, res)}
    ok = all(r["delta_certificate"] and r["nabla_certificate"] and r["local_endomorphisms"]
             and r["top_multiplicity"] == 1 for r in res)
    return {**head, "tiltings": table, "ok": ok}, ok


def cmd_tensor(cfg, a):
    from .monoidal import MonoidalChecker
    A, hw = cfg.hw()
    M = MonoidalChecker(hw, A)
    names = hw.names
    pairs = [(x, y) for x in hw.labels for y in hw.labels]
    head = cfg.header(f"tensor {a.action}")
    if a.action == "check":
        reps = cfg.pmap(lambda p: M.check_pair(*p), pairs)
        pair_json = {f"{names[x]}*{names[y]}": r.to_json(hw.F) for (x, y), r in zip(pairs, reps)}
        y = M.check_Ytensor()
        x = M.check_Xtensor_via_duality(direct=True)
        ok = all(r.ok for r in reps) and y["ok"] and x["certified"] and x["direct"]["ok"]
        return {**head, "pairs": pair_json, "y_tensor": y, "x_tensor": x, "ok": ok}, ok
    # splitting idempotents directly is only affordable on objects of size <= 2
    reps = cfg.pmap(lambda p: M.tilting_tensor_decompose(
        *p, certify=True, split_check=p[0].size + p[1].size <= 2), pairs)
    by_pair = dict(zip(pairs, reps))
    symmetric = all(by_pair[(x, y)].multiset() == by_pair[(y, x)].multiset() for x, y in pairs)
    ok = symmetric and all(r.ok for r in reps)
    return {**head, "pairs": {f"{names[x]}*{names[y]}": r.to_json() for (x, y), r in zip(pairs, reps)},
            "symmetric": symmetric, "ok": ok}, ok


def cmd_blocks(cfg, a):
    from .karoubi import truncation_block_report
    cfg.need_algebra_cap()
    rep = truncation_block_report(cfg.diagram(), a.N, a.threads)
    return {**cfg.header("blocks"), "report": rep, "ok": True}, True


def cmd_fuzz(cfg, a):
    from .fuzz import appendix_fuzz
    if a.cases < 0:
        raise ConfigError("cases must be non-negative")
    rep = appendix_fuzz(a.seed, a.cases)
    return {**cfg.header("appendix fuzz"), "report": rep, "ok": rep["ok"]}, rep["ok"]


# ------------------------------------------------------------ parser
def _common(p):
    p.add_argument("--backend", choices=["finset-op", "finvec"], default="finset-op")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--t", default="generic", help="'generic' or a rational value")
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--cache-dir", default=None, help=f"defaults to ${ENV_VAR}")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--csv", default=None, help="also export the main matrix as CSV (algebra build, hwc verify)")


def build_parser():
    parser = argparse.ArgumentParser(prog="tensor-envelope",
                                     description="Exact computations in tensor envelopes of regular categories.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("homdim", help="dimension of Hom(X, Y)")
    p.add_argument("X", type=int)
    p.add_argument("Y", type=int)
    _common(p)
    p.set_defaults(func=cmd_homdim)
    p = sub.add_parser("compose", help="compose two morphisms given as JSON")
    p.add_argument("morphisms", help="JSON text or a file path")
    _common(p)
    p.set_defaults(func=cmd_compose)
    p = sub.add_parser("triangular-check", help="triangular structure and factorizations")
    _common(p)
    p.set_defaults(func=cmd_triangular)
    p = sub.add_parser("algebra", help="truncated algebras")
    p.add_argument("action", choices=["build"])
    _common(p)
    p.set_defaults(func=cmd_algebra_build)
    p = sub.add_parser("hwc", help="highest-weight verification")
    p.add_argument("action", choices=["verify"])
    _common(p)
    p.set_defaults(func=cmd_hwc_verify)
    p = sub.add_parser("ringel", help="exceptional collections, dual collections, tiltings")
    p.add_argument("action", choices=["resolve", "dual", "tilting"])
    _common(p)
    p.set_defaults(func=cmd_ringel)
    p = sub.add_parser("tensor", help="monoidal compatibility and tilting tensor products")
    p.add_argument("action", choices=["check", "decompose"])
    _common(p)
    p.set_defaults(func=cmd_tensor)
    p = sub.add_parser("blocks", help="blocks of the Karoubi truncation")
    _common(p)
    p.set_defaults(func=cmd_blocks)
    p = sub.add_parser("appendix", help="relation-calculus property fuzzer")
    p.add_argument("action", choices=["fuzz"])
    _common(p)
    p.set_defaults(func=cmd_fuzz)
    return parser


def _default(o):
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = Config(args)
        report, ok = args.func(cfg, args)
    except (ConfigError, SizeLimitExceeded, UnsupportedAutGroup) as exc:
        sys.stderr.write(dumps({"schema": SCHEMA, "error": "config", "message": str(exc)}))
        return 2
    except EnvelopeError as exc:
        report, ok = {"schema": SCHEMA, "command": args.command, "ok": False,
                      "error": type(exc).__name__, "message": str(exc)}, False
    text = dumps(report)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
