"""Command-line driver.

Exit codes: 0 success, 1 a numerical check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bnd
from .constructions import FamilySpec, b_graph
from .enumeration import EmptySearchSpaceError, SearchSpec, extremal_search, generate, verify_extremal_structure
from .formats import FormatError, graph6_decode, graph6_encode, read_edge_list, write_edge_list
from .graph import Graph, GraphError
from .spectral import DEFAULT_TOL, ConvergenceError, spectral_radius
from .tridiagonal import (TridiagError, TridiagSpec, m_least_eigenvalue_closed, m_matrix,
                          tridiag_eigenvalues_numeric, willms_eigenvalues)

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
FORMATS = ("text", "json", "csv", "graph6", "edges")
OBJECTIVE_ALIASES = {
    "max-rho": "max_spectral_radius",
    "min-ac": "min_algebraic_connectivity",
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    tol: float = DEFAULT_TOL
    fmt: str = "text"
    out: str | None = None
    workers: int = 1

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.fmt not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")


def num(x) -> str:
    return f"{x:.10g}"


def _round(obj):
    if isinstance(obj, float):
        return float(num(obj)) if math.isfinite(obj) else obj
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2)


def _family_graph(family: str, params: list[int]) -> Graph:
    family = {"K": "complete_bipartite", "kab": "complete_bipartite"}.get(family, family)
    if family == "complete_bipartite":
        if len(params) != 2:
            raise UsageError("complete_bipartite takes two part sizes")
        return FamilySpec(family, params[0] + params[1], parts=(params[0], params[1])).build()
    if family == "H":
        if len(params) != 2:
            raise UsageError("H takes n and Delta")
        return FamilySpec("H", params[0], delta=params[1]).build()
    if len(params) != 1:
        raise UsageError(f"{family} takes exactly n")
    return FamilySpec(family, params[0]).build()


def _input_graph(args) -> Graph:
    given = [x is not None for x in (args.graph6, args.edges, args.family)]
    if sum(given) != 1:
        raise UsageError("give exactly one of --graph6, --edges, --family")
    if args.graph6 is not None:
        return graph6_decode(args.graph6)
    if args.edges is not None:
        with open(args.edges) as fh:
            return read_edge_list(fh.read())
    if args.n is None:
        raise UsageError("--family needs --n")
    params = [args.n] + ([args.delta] if args.delta is not None else [])
    if args.family == "complete_bipartite":
        params = [args.delta, args.n - args.delta] if args.delta is not None else params
    return _family_graph(args.family, params)


def _graph_text(g: Graph, fmt: str) -> str:
    if fmt == "edges":
        return write_edge_list(g)
    if fmt == "json":
        return dumps({"n": g.n, "edges": g.sorted_edges(), "graph6": graph6_encode(g)}) + "\n"
    return graph6_encode(g) + "\n"


# ---------------------------------------------------------------------------
# subcommands; each returns (exit code, output text)


def cmd_construct(cfg: RunConfig, args) -> tuple[int, str]:
    g = _family_graph(args.family, args.params)
    return EXIT_OK, _graph_text(g, cfg.fmt)


def cmd_spectral(cfg: RunConfig, args) -> tuple[int, str]:
    g = _input_graph(args)
    r = spectral_radius(g, cfg.tol)
    data = {"n": g.n, "m": g.m, "delta": g.max_degree, "rho": r.rho,
            "w_hat": r.w_hat, "w_check": r.w_check, "iterations": r.iterations,
            "residual": r.residual, "x": r.x.tolist()}
    if cfg.fmt == "json":
        return EXIT_OK, dumps(data) + "\n"
    lines = [f"rho {num(r.rho)}", f"delta {g.max_degree}", f"gap {num(g.max_degree - r.rho)}",
             f"w_hat {r.w_hat}", f"w_check {r.w_check}", f"iterations {r.iterations}",
             f"residual {num(r.residual)}"]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_tridiag(cfg: RunConfig, args) -> tuple[int, str]:
    if args.b is None and args.d is None:
        spec = m_matrix(args.n)
        label = f"M_{args.n}"
    else:
        if args.b is None or args.d is None:
            raise UsageError("--b and --d go together")
        spec = TridiagSpec.with_constant(args.n, args.b, args.d)
        label = f"n={args.n} b={num(args.b)} d={num(args.d)}"
    closed = willms_eigenvalues(spec)
    numeric = tridiag_eigenvalues_numeric(spec, min(cfg.tol, 1e-12))
    err = float(np.max(np.abs(closed - numeric)))
    ok = err <= 1e-10
    data = {"matrix": label, "closed_form": closed.tolist(), "sturm": numeric.tolist(),
            "max_abs_diff": err, "ok": ok}
    if args.b is None:
        data["least_closed"] = m_least_eigenvalue_closed(args.n)
    if cfg.fmt == "json":
        text = dumps(data) + "\n"
    else:
        lines = [f"# {label}", "i closed sturm"]
        lines += [f"{i + 1} {num(c)} {num(s)}" for i, (c, s) in enumerate(zip(closed, numeric))]
        if "least_closed" in data:
            lines.append(f"least 4sin^2(pi/(4n+2)) {num(data['least_closed'])}")
        lines.append(f"max_abs_diff {num(err)} {'PASS' if ok else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_CHECK), text


def cmd_bounds(cfg: RunConfig, args) -> tuple[int, str]:
    g = _input_graph(args)
    rep = bnd.bound_report(g, cfg.tol)
    if cfg.fmt == "json":
        text = dumps([rep.to_dict()]) + "\n"
    elif cfg.fmt == "csv":
        text = bnd.reports_to_csv([rep])
    else:
        lines = []
        for k, v in rep.to_dict().items():
            lines.append(f"{k} {num(v) if isinstance(v, float) else v}")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if rep.all_ok() else EXIT_CHECK), text


def cmd_search(cfg: RunConfig, args) -> tuple[int, str]:
    objective = OBJECTIVE_ALIASES.get(args.objective, args.objective)
    kwargs = {}
    if objective == "min_algebraic_connectivity":
        kwargs = {"require_irregular": False, "regularity_mode": "k-regular"}
    spec = SearchSpec(args.n, args.delta, objective=objective, **kwargs)
    if args.population:
        return EXIT_OK, "".join(graph6_encode(g) + "\n" for g in generate(spec, cfg.workers))
    res = extremal_search(spec, cfg.tol, cfg.workers)
    ok = all(c.ok for c in res.certificates)
    if cfg.fmt == "json":
        text = dumps(res.to_dict()) + "\n"
    elif cfg.fmt == "graph6":
        text = graph6_encode(res.winner) + "\n"
    else:
        d = res.to_dict()
        lines = [f"winner {d['winner']}", f"objective {objective} {num(res.objective_value)}",
                 f"runner_up {'-' if res.runner_up_value is None else num(res.runner_up_value)}",
                 f"unique {res.unique}", f"graphs_considered {res.graphs_considered}"]
        lines += [f"tie {t}" for t in d["tie_set"]]
        for c in res.certificates:
            lines.append(f"certificate unsaturated={c.unsaturated_ok} "
                         f"complete_bipartite={c.complete_bipartite_ok} "
                         f"distance={c.distance}<={num(c.distance_bound)}:{c.distance_ok}")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_CHECK), text


def limit_rows(ns: list[int], tol: float = DEFAULT_TOL) -> list[dict]:
    rows = []
    for n in ns:
        if n < 6:
            raise UsageError(f"limit-table needs n >= 6, got {n}")
        rho = spectral_radius(b_graph(n), tol).rho
        scaled = n * n * (3.0 - rho)
        row = {"n": n, "rho": rho, "scaled_gap": scaled, "lower": None, "upper": None, "ok": None}
        if n % 2 == 0:
            lo, hi = bnd.lemma5_bounds(n)
            row.update(lower=n * n * lo, upper=n * n * hi, ok=n * n * lo <= scaled <= n * n * hi)
        rows.append(row)
    return rows


def cmd_limit_table(cfg: RunConfig, args) -> tuple[int, str]:
    rows = limit_rows(args.ns, cfg.tol)
    ok = all(r["ok"] is not False for r in rows)
    if cfg.fmt == "json":
        text = dumps({"rows": rows, "pi_squared": math.pi ** 2}) + "\n"
    elif cfg.fmt == "csv":
        lines = ["n,rho,scaled_gap,lower,upper,ok"]
        for r in rows:
            cells = [str(r["n"])] + [("" if r[k] is None else num(r[k])) for k in ("rho", "scaled_gap", "lower", "upper")]
            lines.append(",".join(cells + ["" if r["ok"] is None else str(r["ok"])]))
        lines.append(f"pi^2,,{num(math.pi ** 2)},,,")
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{'n':>6} {'rho(B_n)':>16} {'n^2(3-rho)':>16} {'lower':>16} {'upper':>16}"]
        for r in rows:
            lo = "-" if r["lower"] is None else num(r["lower"])
            hi = "-" if r["upper"] is None else num(r["upper"])
            lines.append(f"{r['n']:>6} {num(r['rho']):>16} {num(r['scaled_gap']):>16} {lo:>16} {hi:>16}")
        lines.append(f"{'pi^2':>6} {'':>16} {num(math.pi ** 2):>16}")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_CHECK), text


def cmd_verify(cfg: RunConfig, args) -> tuple[int, str]:
    g = _input_graph(args)
    cert = verify_extremal_structure(g, g.max_degree, cfg.tol)
    return (EXIT_OK if cert.ok else EXIT_CHECK), dumps(cert.to_dict()) + "\n"


COMMANDS = {
    "construct": cmd_construct,
    "spectral": cmd_spectral,
    "tridiag": cmd_tridiag,
    "bounds": cmd_bounds,
    "search": cmd_search,
    "limit-table": cmd_limit_table,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default=None)
    common.add_argument("--out")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1)

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--graph6")
    graph_in.add_argument("--edges", help="edge-list file: header 'n m', then 'u v' lines")
    graph_in.add_argument("--family", choices=("path", "complete_bipartite", "H", "B"))
    graph_in.add_argument("--n", type=int)
    graph_in.add_argument("--delta", type=int)

    p = argparse.ArgumentParser(prog="irregbip", description=__doc__)
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a named graph")
    c.add_argument("family", choices=("path", "complete_bipartite", "K", "H", "B"))
    c.add_argument("params", type=int, nargs="+")

    sub.add_parser("spectral", parents=[common, graph_in], help="spectral radius and Perron vector")

    t = sub.add_parser("tridiag", parents=[common], help="closed-form vs Sturm eigenvalues")
    t.add_argument("n", type=int)
    t.add_argument("--b", type=float)
    t.add_argument("--d", type=float)

    sub.add_parser("bounds", parents=[common, graph_in], help="bound report for one graph")

    s = sub.add_parser("search", parents=[common], help="exhaustive extremal search")
    s.add_argument("n", type=int)
    s.add_argument("delta", type=int)
    s.add_argument("objective", nargs="?", default="max-rho",
                   choices=sorted(OBJECTIVE_ALIASES) + sorted(OBJECTIVE_ALIASES.values()))
    s.add_argument("--population", action="store_true", help="stream every generated graph as graph6")

    lt = sub.add_parser("limit-table", parents=[common], help="n^2 (3 - rho(B_n)) table")
    lt.add_argument("ns", type=int, nargs="+")

    sub.add_parser("verify", parents=[common, graph_in], help="structure certificate of a graph")
    return p


_DEFAULT_FMT = {"construct": "graph6", "verify": "json"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            subcommand=args.subcommand,
            params={k: v for k, v in vars(args).items()
                    if k not in ("subcommand", "tol", "fmt", "out", "workers")},
            tol=args.tol,
            fmt=args.fmt or _DEFAULT_FMT.get(args.subcommand, "text"),
            out=args.out,
            workers=args.workers,
        )
        code, text = COMMANDS[args.subcommand](cfg, args)
    except (UsageError, GraphError, FormatError, TridiagError, EmptySearchSpaceError,
            ValueError, OSError) as exc:
        print(f"irregbip {args.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"irregbip {args.subcommand}: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
