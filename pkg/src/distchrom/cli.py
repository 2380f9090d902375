"""Command-line front end.

    distchrom bound <graph> --t T --method M [--dump-lp PATH] [--pretty]
    distchrom table <1a|1b|1c|1d|2a|2b|2c|2d> [--budget S]
    distchrom lee wprime N Q | lee perfect N Q | lee validate CODEFILE
    distchrom oracle <graph> --t T <chi|alpha> [--budget S]

Graphs: ``qn:<n>``, ``lee:<n>:<q>``, ``cycle:<q>``, ``file:<path>``.
Exit codes: 0 success, 2 usage or inapplicable bound, 3 numeric failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Callable, Optional

from . import bounds as B
from .errors import (
    BoundInapplicableError,
    BudgetExceeded,
    DegenerateCaseError,
    DistChromError,
    InvalidParameterError,
    NumericFailureError,
    OracleTimeout,
)
from .graphs import Graph, LeeParams, build_cycle, build_hypercube, build_lee_graph, graph_power, read_edge_list
from .leecodes import (
    MAX_SPACE,
    code_min_distance,
    packing_and_covering_radius,
    perfect_code_exists,
    read_code,
    w_prime_generators,
    w_prime_membership,
)
from .lpopt import dump_lp, lp_general_ratio, lp_minor_certificate, minor_lp, rationalize
from .oracle import MAX_COLOR_VERTICES, MAX_INDEPENDENCE_VERTICES, default_budget, exact_chromatic_number, exact_independence_number
from .spectra import Spectrum, hypercube_spectrum, is_partially_walk_regular, lee_spectrum, numeric_spectrum, walk_diagonal

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


@dataclass(frozen=True)
class GraphSpec:
    kind: str  # "qn", "lee" or "file"
    n: int = 0
    q: int = 0
    path: str = ""

    @classmethod
    def parse(cls, text: str) -> "GraphSpec":
        kind, _, rest = text.partition(":")
        try:
            if kind == "qn":
                spec = cls("qn", n=int(rest))
            elif kind == "lee":
                n, q = rest.split(":")
                spec = cls("lee", n=int(n), q=int(q))
            elif kind == "cycle":
                spec = cls("lee", n=1, q=int(rest))
            elif kind == "file" and rest:
                return cls("file", path=rest)
            else:
                raise ValueError
        except ValueError:
            raise InvalidParameterError(
                f"bad graph spec {text!r}; expected qn:<n>, lee:<n>:<q>, cycle:<q> or file:<path>"
            ) from None
        if spec.n < 1 or (spec.kind == "lee" and spec.q < 3):
            raise InvalidParameterError(f"bad graph spec {text!r}: need n >= 1 and q >= 3")
        return spec

    @property
    def graph_id(self) -> str:
        if self.kind == "qn":
            return f"Q{self.n}"
        if self.kind == "lee":
            return f"C{self.q}" if self.n == 1 else f"G({self.n},{self.q})"
        return self.path

    @property
    def vertex_count(self) -> int:
        if self.kind == "qn":
            return 2**self.n
        if self.kind == "lee":
            return self.q**self.n
        return self.graph.vertex_count

    @cached_property
    def graph(self) -> Graph:
        if self.kind == "qn":
            return build_hypercube(self.n)
        if self.kind == "lee":
            return build_cycle(self.q) if self.n == 1 else build_lee_graph(LeeParams(self.n, self.q))
        return read_edge_list(self.path)

    @cached_property
    def spectrum(self) -> Spectrum:
        if self.kind == "qn":
            return hypercube_spectrum(self.n)
        if self.kind == "lee":
            return lee_spectrum(LeeParams(self.n, self.q))
        return numeric_spectrum(self.graph)

    @property
    def max_degree(self) -> int:
        if self.kind == "qn":
            return self.n
        if self.kind == "lee":
            return 2 * self.n
        return int(self.graph.degrees().max())

    @property
    def regular(self) -> bool:
        return self.kind != "file" or self.graph.is_regular()

    @property
    def delta3(self) -> int:
        """Largest diagonal entry of A^3 (twice the most triangles at a vertex)."""
        if self.kind == "qn":
            return 0
        if self.kind == "lee":
            return 2 * self.n if self.q == 3 else 0
        return int(walk_diagonal(self.graph, 3).column_max(3))

    def walk_regular(self, t: int) -> bool:
        return self.kind != "file" or is_partially_walk_regular(self.graph, t)


def _need_t(t: int, allowed: tuple[int, ...], method: str) -> None:
    if t not in allowed:
        raise BoundInapplicableError(f"{method} needs t in {allowed}, got t={t}")


def _need_regular(spec: GraphSpec, method: str) -> None:
    if not spec.regular:
        raise BoundInapplicableError(f"{method} needs a regular graph")


def compute_bound(
    spec: GraphSpec, t: int, method: str, dump_path: Optional[str] = None, budget: Optional[float] = None
) -> B.BoundReport:
    """Run one bound method on one graph; the single code path shared by ``bound`` and ``table``."""
    try:
        m = B.Method(method)
    except ValueError:
        raise InvalidParameterError(
            f"unknown method {method!r}; choose from {', '.join(x.value for x in B.Method)}"
        ) from None
    if t < 1:
        raise InvalidParameterError(f"t must be >= 1, got {t}")
    gid = spec.graph_id
    if m in (B.Method.NGO_LOWER, B.Method.NGO_UPPER, B.Method.HYPERCUBE_T45) and spec.kind != "qn":
        raise BoundInapplicableError(f"{m.value} is only defined for hypercubes")

    if m is B.Method.CLOSED_T2_GENERAL:
        _need_t(t, (2,), m.value)
        cert = B.chi2_closed_general(spec.spectrum, spec.max_degree)
        return B.BoundReport(gid, t, m, cert.bound_ceiled, cert)
    if m is B.Method.CLOSED_T2_REGULAR:
        _need_t(t, (2,), m.value)
        _need_regular(spec, m.value)
        cert = B.chi2_closed_regular(spec.spectrum, spec.vertex_count)
        return B.BoundReport(gid, t, m, cert.bound_ceiled, cert)
    if m is B.Method.CLOSED_T3_REGULAR:
        _need_t(t, (3,), m.value)
        _need_regular(spec, m.value)
        cert = B.chi3_closed_regular(spec.spectrum, spec.delta3, spec.vertex_count)
        return B.BoundReport(gid, t, m, cert.bound_ceiled, cert)
    if m in (B.Method.NGO_LOWER, B.Method.NGO_UPPER):
        ngo = B.ngo_bounds(spec.n, t)
        value = ngo.lower if m is B.Method.NGO_LOWER else ngo.upper
        extra = {"lower_plain": ngo.lower_plain, "expression": str(ngo.expression)}
        return B.BoundReport(gid, t, m, value, None, extra)
    if m is B.Method.HYPERCUBE_T45:
        _need_t(t, (4, 5), m.value)
        cert = B.hypercube_t45_bound(spec.n, t)
        return B.BoundReport(gid, t, m, cert.bound_ceiled, cert, {"m": B._t45_m(spec.n, t)})
    if m is B.Method.LEE_THEOREM:
        _need_t(t, (2,), m.value)
        if spec.kind != "lee":
            raise BoundInapplicableError("lee_theorem is only defined for Lee graphs")
        return B.BoundReport(gid, t, m, B.lee_chi2_theorem_bound(LeeParams(spec.n, spec.q)))
    if m is B.Method.LP_GENERAL:
        res = lp_general_ratio(spec.graph, t, spec.spectrum)
        if dump_path:
            dump_lp(res.problem, dump_path)
        extra = {"vertex": res.vertex, "ell": res.ell}
        return B.BoundReport(gid, t, m, res.certificate.bound_ceiled, res.certificate, extra)
    # lp_minor
    if not spec.walk_regular(t):
        raise BoundInapplicableError(f"lp_minor needs a {t}-partially walk-regular graph")
    if dump_path:
        dump_lp(minor_lp(rationalize(spec.spectrum), t), dump_path)
    cert = lp_minor_certificate(spec.spectrum, t, spec.vertex_count, budget)
    return B.BoundReport(gid, t, m, cert.bound_ceiled, cert)


def run_oracle(spec: GraphSpec, t: int, which: str, budget: Optional[float]) -> dict:
    """Exact chi_t or alpha_t, or the proven bracket if the budget runs out."""
    if budget is None:
        budget = default_budget()
    out = {"graph": spec.graph_id, "t": t, "quantity": which}
    cap = MAX_COLOR_VERTICES if which == "chi" else MAX_INDEPENDENCE_VERTICES
    if spec.vertex_count > cap:
        out.update(status="timeout", lower=None, upper=None, reason=f"more than {cap} vertices")
        return out
    h = graph_power(spec.graph, t)
    try:
        if which == "chi":
            value, witness = exact_chromatic_number(h, budget)
            out.update(status="exact", value=value, witness=list(witness.colors))
        else:
            value, vertices = exact_independence_number(h, budget)
            out.update(status="exact", value=value, witness=vertices)
    except OracleTimeout as exc:
        out.update(status="timeout", lower=exc.lower, upper=exc.upper)
    return out


# --- tables ---------------------------------------------------------------


def _load_best_lb() -> dict:
    text = resources.files("distchrom").joinpath("data/best_lb.json").read_text()
    return {(e["graph"], e["t"]): e for e in json.loads(text)["entries"]}


@dataclass(frozen=True)
class TableSpec:
    table_id: str
    t: int
    rows: tuple[str, ...]  # graph specs
    methods: tuple[str, ...]
    best_lb: bool


TABLES = {
    "1a": TableSpec("1a", 2, tuple(f"qn:{n}" for n in range(2, 16)), ("closed_t2_regular",), False),
    "1b": TableSpec("1b", 3, tuple(f"qn:{n}" for n in range(3, 16)), ("closed_t3_regular",), False),
    "1c": TableSpec("1c", 4, tuple(f"qn:{n}" for n in range(4, 16)), ("hypercube_t45", "ngo_lower"), False),
    "1d": TableSpec("1d", 5, tuple(f"qn:{n}" for n in range(5, 16)), ("hypercube_t45", "ngo_lower"), False),
    "2a": TableSpec("2a", 2, tuple(f"lee:3:{q}" for q in range(3, 10)), ("closed_t2_regular",), False),
    "2b": TableSpec("2b", 3, tuple(f"lee:3:{q}" for q in range(3, 10)), ("closed_t3_regular",), True),
    "2c": TableSpec("2c", 4, tuple(f"lee:3:{q}" for q in range(3, 10)), ("lp_minor",), True),
    "2d": TableSpec("2d", 2, tuple(f"lee:4:{q}" for q in range(3, 7)), ("closed_t2_regular",), True),
}


def bound_cell(spec: GraphSpec, t: int, method: str, budget: Optional[float]) -> str:
    try:
        return str(compute_bound(spec, t, method, budget=budget).value)
    except DegenerateCaseError:
        return "degenerate"
    except BudgetExceeded:
        return "time"


def oracle_cell(spec: GraphSpec, t: int, budget: Optional[float]) -> str:
    res = run_oracle(spec, t, "chi", budget)
    return str(res["value"]) if res["status"] == "exact" else "time"


def table_rows(table_id: str, budget: Optional[float] = None) -> list[list[str]]:
    ts = TABLES[table_id]
    header = ["graph", *ts.methods]
    if ts.best_lb:
        header += ["best_lb", "best_lb_source"]
    header.append(f"chi_{ts.t}")
    rows = [header]
    best = _load_best_lb() if ts.best_lb else {}
    for text in ts.rows:
        spec = GraphSpec.parse(text)
        row = [spec.graph_id] + [bound_cell(spec, ts.t, m, budget) for m in ts.methods]
        if ts.best_lb:
            entry = best.get((spec.graph_id, ts.t))
            row += [str(entry["value"]), f"external: {entry['citation']}"] if entry else ["N/A", ""]
        row.append(oracle_cell(spec, ts.t, budget))
        rows.append(row)
    return rows


# --- entry point ----------------------------------------------------------


def _emit(obj: dict, pretty: bool) -> None:
    if pretty:
        width = max(len(k) for k in obj)
        for k, v in obj.items():
            print(f"{k:<{width}}  {v}")
    else:
        print(json.dumps(obj))


def _cmd_bound(args) -> int:
    report = compute_bound(GraphSpec.parse(args.graph), args.t, args.method, args.dump_lp)
    _emit(report.as_dict(), args.pretty)
    return EXIT_OK


def _cmd_table(args) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerows(table_rows(args.table_id, args.budget))
    return EXIT_OK


def _cmd_lee(args) -> int:
    if args.action == "wprime":
        out = {"n": args.n, "q": args.q, "member": w_prime_membership(args.n, args.q),
               "generators": w_prime_generators(args.q)}
    elif args.action == "perfect":
        out = {"n": args.n, "q": args.q, **perfect_code_exists(args.n, args.q).as_dict()}
    else:
        code = read_code(args.codefile)
        out = {"n": code.n, "q": code.q, "size": len(code),
               "min_distance": code_min_distance(code) if len(code) > 1 else None}
        if code.q**code.n <= MAX_SPACE:
            packing, covering = packing_and_covering_radius(code)
            out.update(packing_radius=packing if packing != float("inf") else None,
                       covering_radius=covering, perfect=packing == covering)
        else:
            out.update(perfect=None, reason=f"q^n exceeds {MAX_SPACE}")
    _emit(out, args.pretty)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    out = run_oracle(GraphSpec.parse(args.graph), args.t, args.which, args.budget)
    if not args.witness:
        out.pop("witness", None)
    _emit(out, args.pretty)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distchrom", description="Spectral bounds on distance-t chromatic numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="compute one bound")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--method", required=True, choices=[m.value for m in B.Method])
    p.add_argument("--dump-lp", metavar="PATH")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("table", help="reproduce a bound table as CSV")
    p.add_argument("table_id", choices=sorted(TABLES))
    p.add_argument("--budget", type=float, default=None, help="seconds per oracle or LP cell")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("lee", help="Lee-code utilities")
    lee = p.add_subparsers(dest="action", required=True)
    for name in ("wprime", "perfect"):
        q = lee.add_parser(name)
        q.add_argument("n", type=int)
        q.add_argument("q", type=int)
        q.add_argument("--pretty", action="store_true")
    q = lee.add_parser("validate")
    q.add_argument("codefile")
    q.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_lee)

    p = sub.add_parser("oracle", help="exact chi_t or alpha_t by search")
    p.add_argument("graph")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("which", choices=["chi", "alpha"])
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--witness", action="store_true", help="include the coloring or independent set")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameterError, BoundInapplicableError, OSError) as exc:
        print(f"distchrom: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailureError as exc:
        print(f"distchrom: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DistChromError as exc:
        print(f"distchrom: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
