"""Command-line driver.

Every subcommand reads one JSON document (``--input``, default stdin) and
writes one report (``--output``, default stdout). Exit codes: 0 when every
check passes, 1 for rejected input, 2 when a check that must hold fails
(a bug), 3 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from typing import Any, Callable

from . import __version__
from .brauer import (
    BrauerClass,
    brauer_from_h2_class,
    kernel,
    obstruction_from_bundle,
    p_map,
    topological_twisting_class,
)
from .cech import cech_cohomology, is_cohomologous
from .dp import TwistedPair, dp_identity_check, kernel_intersection
from .errors import AdmissibilityError, InvalidInputError, K3TwistError
from .lattice import Sublattice, classify_form, quotient_structure, signature
from .moduli import CLAUSES, ModuliProblem, verify_theorem_suite
from .mukai import K3Surface, MukaiVector
from .serialize import (
    INPUT_SCHEMA,
    REPORT_SCHEMA,
    dumps,
    loads,
    parse_cochain,
    parse_int,
    parse_int_vector,
    parse_lattice,
    parse_mukai_vector,
    parse_nerve,
    parse_rational_vector,
    parse_surface_spec,
    to_json_value,
    validate,
)

__all__ = [
    "EXIT_PASS",
    "EXIT_INPUT",
    "EXIT_INVARIANT",
    "EXIT_IO",
    "RunReport",
    "run_analyze_moduli",
    "execute",
    "main",
]

EXIT_PASS, EXIT_INPUT, EXIT_INVARIANT, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("analyze-moduli", "brauer-order", "brauer-kernel", "dp-check", "cech-h2", "twist-class")


@dataclass
class RunReport:
    """Everything a subcommand emits; ``to_document`` gives the JSON form."""

    command: str
    input: Any = None
    result: dict | None = None
    runs: list | None = None
    passed: bool = False
    exit_code: int = EXIT_PASS
    error: dict | None = None
    elapsed_us: int | None = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "error"
        return "pass" if self.passed else "fail"

    def to_document(self) -> dict:
        doc = {
            "schema": REPORT_SCHEMA,
            "command": self.command,
            "tool": {"name": "k3twist", "version": __version__},
            "status": self.status,
            "exit_code": self.exit_code,
            "input": self.input,
        }
        if self.result is not None:
            doc["result"] = self.result
        if self.runs is not None:
            doc["runs"] = self.runs
        if self.error is not None:
            doc["error"] = self.error
        if self.elapsed_us is not None:
            doc["timing"] = {"elapsed_us": self.elapsed_us}
        return to_json_value(doc)


def _error(exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, AdmissibilityError):
        err["failed"] = list(exc.failed)
    return err


def _exit_for(exc: Exception) -> int:
    return EXIT_INPUT if isinstance(exc, InvalidInputError) else EXIT_INVARIANT


# ----------------------------------------------------------------------
# result builders


def _surface_summary(X: K3Surface) -> dict:
    return {
        "label": X.label,
        "picard_rank": X.picard_rank,
        "ns_gram": X.ns_embedding.source.gram,
        "ns_basis": X.ns.vectors,
        "transcendental_rank": X.transcendental.rank,
    }


def _mukai(v: MukaiVector | None):
    return None if v is None else {"r": v.r, "l": v.l, "s": v.s}


def _sub(S: Sublattice | None, with_signature: bool = False):
    if S is None:
        return None
    out = {"rank": S.rank, "basis": S.vectors}
    if with_signature:
        out["signature"] = signature(S.lattice)
    return out


def run_analyze_moduli(surface: Any, v: Any) -> tuple[dict, bool]:
    """Run the full moduli verification for one ``(surface, v)`` pair."""
    X = parse_surface_spec(surface)
    P = ModuliProblem(X, parse_mukai_vector(v, X))
    rep = verify_theorem_suite(P)
    h2m = None
    if rep.h2m is not None:
        form = classify_form(rep.h2m)
        h2m = {
            "rank": rep.h2m.rank,
            "det": rep.h2m.det,
            "even": form.even,
            "unimodular": form.unimodular,
            "signature": signature(rep.h2m),
            "gram": rep.h2m.gram,
        }
    result = {
        "surface": _surface_summary(X),
        "v": _mukai(P.v),
        "n": rep.n,
        "h2m": h2m,
        "ns_m": _sub(rep.ns_m),
        "t_m": _sub(rep.t_m, with_signature=True),
        "phi_t": None if rep.phi_t is None else rep.phi_t.matrix,
        "cokernel": rep.cokernel,
        "lambda": rep.lam,
        "cokernel_generator": rep.cokernel_generator,
        "obstruction": {
            "order": rep.n,
            "generators": [{"order": a.order, "values": a.values} for a in rep.obstruction_generators],
            "canonical_w": rep.obstruction_w,
        },
        "u": _mukai(rep.u),
        "checks": {k: rep.checks.get(k) for k in CLAUSES},
        "failures": rep.failures,
    }
    return result, rep.passed


def _analyze_moduli(doc: dict) -> RunReport:
    report = RunReport("analyze-moduli", doc)
    if "runs" not in doc:
        report.result, report.passed = run_analyze_moduli(doc["surface"], doc["v"])
        report.exit_code = EXIT_PASS if report.passed else EXIT_INVARIANT
        return report
    runs, worst = [], EXIT_PASS
    for item in doc["runs"]:
        entry = {"label": item.get("label", "")}
        try:
            entry["result"], ok = run_analyze_moduli(item["surface"], item["v"])
            entry["status"] = "pass" if ok else "fail"
            code = EXIT_PASS if ok else EXIT_INVARIANT
        except K3TwistError as exc:
            entry["status"], entry["error"] = "error", _error(exc)
            code = _exit_for(exc)
        worst = max(worst, code)
        runs.append(entry)
    report.runs, report.exit_code, report.passed = runs, worst, worst == EXIT_PASS
    return report


def _host(doc: dict) -> tuple[Sublattice, Any]:
    if "surface" in doc:
        X = parse_surface_spec(doc["surface"])
        return X.transcendental, X
    T = parse_lattice(doc["lattice"])
    return T, T


def _brauer_class(entry: dict, T: Sublattice, host: Any, what: str) -> BrauerClass:
    if "w" in entry:
        w = parse_rational_vector(entry["w"], T.ambient.rank, f"{what}.w")
        return brauer_from_h2_class(host, w)
    return BrauerClass(T, parse_rational_vector(entry["values"], T.rank, f"{what}.values"))


def _brauer_order(doc: dict) -> RunReport:
    T, host = _host(doc)
    alpha = _brauer_class(doc["class"], T, host, "class")
    result = {"lattice_rank": T.rank, "values": alpha.values, "order": alpha.order}
    return RunReport("brauer-order", doc, result, passed=True)


def _brauer_kernel(doc: dict) -> RunReport:
    T, host = _host(doc)
    alpha = _brauer_class(doc["class"], T, host, "class")
    K = kernel(alpha)
    group, _ = quotient_structure(K, T)
    result = {
        "lattice_rank": T.rank,
        "order": alpha.order,
        "kernel_basis": K.vectors,
        "quotient": group,
        "index_equals_order": group.order == alpha.order,
    }
    ok = group.order == alpha.order
    return RunReport("brauer-kernel", doc, result, passed=ok, exit_code=EXIT_PASS if ok else EXIT_INVARIANT)


def _dp_check(doc: dict) -> RunReport:
    T, host = _host(doc)
    pair = TwistedPair(T, _brauer_class(doc["alpha"], T, host, "alpha"), _brauer_class(doc["beta"], T, host, "beta"))
    both = kernel_intersection(pair)
    group, _ = quotient_structure(both, T)
    check = dp_identity_check(pair)
    result = {
        "order_alpha": pair.alpha.order,
        "order_beta": pair.beta.order,
        "intersection_basis": both.vectors,
        "intersection_quotient": group,
        "identity_holds": check.passed,
        "witness": check.witness,
        "detail": check.detail,
    }
    return RunReport("dp-check", doc, result, passed=check.passed,
                     exit_code=EXIT_PASS if check.passed else EXIT_INVARIANT)


def _cech_h2(doc: dict) -> RunReport:
    N = parse_nerve(doc["nerve"])
    n = parse_int(doc["modulus"], "modulus")
    if n < 1:
        raise InvalidInputError("cech-h2 computes finite groups; modulus must be >= 1")
    k = doc.get("degree", 2)
    result = {
        "simplex_counts": [N.count(d) for d in range(4)],
        "degree": k,
        "modulus": n,
        "group": cech_cohomology(N, k, n),
    }
    if "cocycle" in doc:
        c = parse_cochain(doc["cocycle"], N, k, n)
        test = is_cohomologous(c, c.zero(N, k, n))
        result["cocycle_is_coboundary"] = test.cohomologous
        w = test.witness
        result["witness"] = None if w is None else [[list(s), x] for s, x in zip(N.simplices[k - 1], w.values) if x]
    return RunReport("cech-h2", doc, result, passed=True)


def _twist_class(doc: dict) -> RunReport:
    X = parse_surface_spec(doc["surface"])
    c1 = parse_int_vector(doc["c1"], 22, "c1")
    n = parse_int(doc["n"], "n")
    t = topological_twisting_class(c1, n)
    via_p = p_map(X, t)
    direct = obstruction_from_bundle(X, c1, n)
    ok = via_p == direct
    result = {
        "topological_class": t.coords,
        "p_of_t": {"order": via_p.order, "values": via_p.values},
        "obstruction": {"order": direct.order, "values": direct.values},
        "compatible": ok,
    }
    return RunReport("twist-class", doc, result, passed=ok, exit_code=EXIT_PASS if ok else EXIT_INVARIANT)


HANDLERS: dict[str, Callable[[dict], RunReport]] = {
    "analyze-moduli": _analyze_moduli,
    "brauer-order": _brauer_order,
    "brauer-kernel": _brauer_kernel,
    "dp-check": _dp_check,
    "cech-h2": _cech_h2,
    "twist-class": _twist_class,
}


def execute(command: str, text: str, timing: bool = False) -> RunReport:
    """Parse, validate and run one input document; never raises package errors."""
    start = time.perf_counter_ns()
    doc = None
    try:
        doc = loads(text)
        validate(doc, command)
        if doc["schema"] != INPUT_SCHEMA:
            raise InvalidInputError(f"unsupported schema {doc['schema']!r}")
        report = HANDLERS[command](doc)
    except K3TwistError as exc:
        report = RunReport(command, doc, error=_error(exc), exit_code=_exit_for(exc))
    if timing:
        report.elapsed_us = (time.perf_counter_ns() - start) // 1000
    return report


# ----------------------------------------------------------------------
# human-readable rendering


def _fmt(x) -> str:
    x = to_json_value(x)
    if isinstance(x, list):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    if isinstance(x, dict):
        if "text" in x:
            return x["text"]
        return ", ".join(f"{k} {_fmt(v)}" for k, v in x.items())
    return str(x)


def _human_result(command: str, r: dict) -> list[str]:
    if command == "analyze-moduli":
        lines = [
            f"surface: {r['surface']['label'] or 'unnamed'} (Picard rank {r['surface']['picard_rank']})",
            f"n = {r['n']}",
            f"T_M / phi(T_X) = {_fmt(r['cokernel'])}",
            f"lambda = {_fmt(r['lambda'])}",
            f"obstruction generators: {len(r['obstruction']['generators'])}",
        ]
        lines += [f"  [{'pass' if ok else 'FAIL'}] {name}: {CLAUSES[name]}" for name, ok in r["checks"].items()]
        return lines
    return [f"{key}: {_fmt(val)}" for key, val in r.items()]


def render_human(report: RunReport) -> str:
    lines = [f"k3twist {report.command}: {report.status} (exit {report.exit_code})"]
    if report.error is not None:
        lines.append(f"error: {report.error['type']}: {report.error['message']}")
    if report.result is not None:
        lines += _human_result(report.command, report.result)
    for i, run in enumerate(report.runs or []):
        lines.append(f"run {i} {run['label']}: {run['status']}")
        if "error" in run:
            lines.append(f"  error: {run['error']['type']}: {run['error']['message']}")
        else:
            lines += ["  " + line for line in _human_result(report.command, run["result"])]
    if report.elapsed_us is not None:
        lines.append(f"elapsed: {report.elapsed_us} us")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3twist", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"k3twist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", default="-", help="input JSON file (default: stdin)")
        p.add_argument("--output", default="-", help="report file (default: stdout)")
        p.add_argument("--report", choices=("human", "machine"), default="machine")
        p.add_argument("--timing", action="store_true", help="add elapsed time (makes output non-reproducible)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"k3twist: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    report = execute(args.command, text, timing=args.timing)
    out = dumps(report.to_document()) if args.report == "machine" else render_human(report)
    try:
        if args.output == "-":
            sys.stdout.write(out)
            sys.stdout.flush()
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
    except OSError as exc:
        print(f"k3twist: cannot write report: {exc}", file=sys.stderr)
        return EXIT_IO
    if report.error is not None:
        print(f"k3twist: {report.error['type']}: {report.error['message']}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
