#!/usr/bin/env python3
"""OGC - Orthogonal Grassmann Codes: CLI entry point."""

import argparse
import logging
import os
import sys
import time
from typing import List, Optional

# Ensure the project root is on sys.path so that sibling modules resolve.
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import (
    APP_NAME,
    CLIQUE_VERTEX_CAP,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    FORMULA_INSTANCES,
    HYPERPLANE_BUDGET,
    MAX_HADAMARD_R,
    MESSAGE_BUDGET,
    QUADRIC_BUDGET,
    VERSION,
)
from errors import BudgetExceeded, OGCError, UsageError, VerificationFailed
from normalizer import canonical_json, payload_checksum
from schema import RunReport
import db


logger = logging.getLogger("ogc")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors raised as UsageError (exit 1)."""

    def __init__(self, *args, **kwargs) -> None:
        # Subcommand flags like --q would otherwise match global --quiet.
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message: str) -> None:
        raise UsageError("{}: {}".format(self.prog, message))


# ------------------------------------------------------------------
# Sub-command handlers
# ------------------------------------------------------------------

def _cmd_enum(args: argparse.Namespace, report: RunReport) -> None:
    """Enumerate Δ_k and optionally write the point list."""
    from analyzers.export import enumeration_payload, write_json
    from geometry.grassmann import GrassCtx, load_or_enumerate, stack

    ctx = GrassCtx.from_params(args.n, args.k, args.q)
    points, hit = load_or_enumerate(ctx, not args.no_cache)
    report.cache_hits += int(hit)
    bases = stack(points)
    report.results = enumeration_payload(args.n, args.k, args.q, bases)
    report.results["checksum"] = db.stack_checksum(bases)
    if args.out:
        report.artifacts.append(write_json(enumeration_payload(args.n, args.k, args.q, bases), args.out, None))


def _cmd_code(args: argparse.Namespace, report: RunReport) -> None:
    """Build C_{k,n}; exact or bounded distance, weights, generator file."""
    from analyzers import codes, spreads
    from analyzers.export import write_generator

    code, system, hit = codes.orthogonal_code(args.n, args.k, args.q, not args.no_cache)
    report.cache_hits += int(hit)
    expected = codes.expected_parameters(args.n, args.k, args.q)
    results = {"n": args.n, "k": args.k, "q": args.q, "expected": expected}

    if args.weights:
        results["weights"] = codes.weight_enumerator(code, args.budget, args.threads)
    elif args.mindist == "exact":
        try:
            codes.min_distance(code, args.budget, args.threads)
        except BudgetExceeded as exc:
            logger.warning("%s; reporting bounds instead", exc)
            args.mindist = "bound"
    if args.mindist == "bound" and code.d_exact is None:
        psi = spreads.psi(args.n - args.k, args.q, args.clique_cap) if args.k < args.n else None
        codes.distance_bounds(code, args.n, args.k, psi)
        results["psi"] = psi
    if args.hyperplanes:
        results["d_hyperplanes"] = codes.min_distance_by_hyperplanes(system, args.hyperplane_budget)
        if code.d_exact is not None and results["d_hyperplanes"] != code.d_exact:
            report.fail("hyperplane distance {} != enumerated distance {}".format(
                results["d_hyperplanes"], code.d_exact))

    results.update(code.to_dict())
    report.results = results
    if code.N != expected["N"]:
        report.fail("N = {} but the product formula gives {}".format(code.N, expected["N"]))
    if code.K != expected["K"]:
        report.fail("K = {} but the closed form gives {}".format(code.K, expected["K"]))
    if code.d_exact is not None and expected["d"] is not None and code.d_exact != expected["d"]:
        report.fail("d = {} but the closed form gives {}".format(code.d_exact, expected["d"]))
    if expected["weight_support"] is not None and code.weights is not None:
        support = sorted(w for w in code.weights if w)
        if support != expected["weight_support"]:
            report.fail("weight support {} != {}".format(support, expected["weight_support"]))
    if not codes.singleton_ok(code):
        report.fail("Singleton bound violated")
    if args.emit_generator:
        report.artifacts.append(write_generator(code, args.emit_generator))


def _cmd_cap(args: argparse.Namespace, report: RunReport) -> None:
    """Build a polar cap from J; optionally truncate and verify it."""
    from analyzers import caps

    tau = [int(t) for t in args.tau.split(",")] if args.tau else None
    spec = caps.cap_spec(args.n, args.q, caps.parse_J(args.J), args.table, tau)
    fam = caps.build_cap(spec)
    if args.truncate:
        caps.truncate(fam)
    results = fam.to_dict()
    results["r"] = spec.r
    if args.verify:
        for label, truncated in (("full", False), ("truncated", True)):
            if truncated and not args.truncate:
                continue
            check = caps.check_family(fam, truncated)
            results[label] = check
            keys = ["totally_singular", "grassmann_cap_ok", "projective_cap_ok"]
            if check["polar_cap_expected"]:
                keys.append("polar_cap_ok")
            elif check["collinear_pairs"]:
                logger.info("%s members: k = n, %d collinear pairs", label, len(check["collinear_pairs"]))
            for key in keys:
                if not check[key]:
                    report.fail("{} members: {} is false".format(label, key))
        results["polar_cap_ok"] = results["full"]["polar_cap_ok"]
        results["projective_cap_ok"] = results["full"]["projective_cap_ok"]
    report.results = results


def _parse_from_cap(text: str):
    parts = [p for p in text.split(",") if p]
    if len(parts) < 3:
        raise UsageError("--from-cap expects n,q,J (for example 4,3,1,2,5,6)")
    try:
        n, q = int(parts[0]), int(parts[1])
    except ValueError:
        raise UsageError("--from-cap: n and q must be integers")
    return n, q, ",".join(parts[2:])


def _cmd_hadamard(args: argparse.Namespace, report: RunReport) -> None:
    """Sign matrix A_r from the closed form or from a cap, with the requested checks."""
    import numpy as np
    from analyzers import caps, codes, hadamard
    from analyzers.export import write_sign_grid

    checks = [c for c in args.check.split(",") if c]
    unknown = set(checks) - {"sylvester", "design", "rm", "hadamard"}
    if unknown:
        raise UsageError("unknown checks: {}".format(", ".join(sorted(unknown))))

    if args.from_cap:
        n, q, J = _parse_from_cap(args.from_cap)
        fam = caps.truncate(caps.build_cap(caps.cap_spec(n, q, caps.parse_J(J))))
        if args.r is not None and args.r != fam.spec.r:
            raise UsageError("--r {} does not match the cap's r = {}".format(args.r, fam.spec.r))
        A = hadamard.a_matrix_from_cap(fam)
        formula = hadamard.a_matrix_formula(A.r, args.max_r)
        same = bool(np.array_equal(A.entries, formula.entries))
        report.parameters["cap"] = fam.spec.to_dict()
        if not same:
            report.fail("cap sign matrix differs from (-1)^|S∩T|")
    elif args.r is None:
        raise UsageError("hadamard needs --r or --from-cap")
    else:
        A = hadamard.a_matrix_formula(args.r, args.max_r)
        same = None

    results = {"r": A.r, "order": A.order, "source": A.source, "matches_formula": same}
    if "hadamard" in checks:
        results["is_hadamard"] = hadamard.is_hadamard(A)
        if not results["is_hadamard"]:
            report.fail("A is not Hadamard")
    if "sylvester" in checks:
        results["equals_sylvester"] = bool(np.array_equal(A.entries, hadamard.sylvester(A.r, args.max_r).entries))
        results["kronecker_blocks"] = hadamard.kronecker_blocks_ok(A.r)
        if not (results["equals_sylvester"] and results["kronecker_blocks"]):
            report.fail("A differs from the Sylvester matrix")
    if "design" in checks:
        design = hadamard.hadamard_design(A)
        results["design"] = design.to_dict()
        if not design.is_2design and not design.degenerate:
            report.fail("rows of A do not form a 2-design")
    if "rm" in checks:
        code = hadamard.rm_code(A.r)
        d, _ = codes.min_distance(code, args.budget)
        results["rm"] = {"N": code.N, "K": code.K, "d": d, "oracle": hadamard.rm_matches_oracle(A.r)}
        if not results["rm"]["oracle"]:
            report.fail("code of A differs from RM(1,{})".format(A.r))
    if A.order <= 64:
        results["entries"] = A.entries.tolist()
    report.results = results
    if args.out:
        report.artifacts.append(write_sign_grid(A, args.out))


def _cmd_quadrics(args: argparse.Namespace, report: RunReport) -> None:
    """Largest quadric section of Q+(2n+1, q), with the counting-formula check."""
    from geometry import intersections
    from geometry.field import field_from_order

    F = field_from_order(args.q)
    mode = "no_shared_generator" if args.mode == "no-shared" else "all"
    res = intersections.intersection_max(F, args.n, mode, args.quadric_budget)
    results = res.to_dict()
    if res.match is False:
        report.fail("max {} != closed form {}".format(res.max_size, res.formula_value))
    if mode == "no_shared_generator":
        bound = intersections.no_shared_generator_bound(args.n, args.q)
        results["bound"] = bound
        if res.max_size > bound:
            report.fail("max {} exceeds the no-shared-generator bound {}".format(res.max_size, bound))
    if args.formula_instances and F.p != 2:
        instances = intersections.random_formula_instances(F, args.n, args.formula_instances, args.seed)
        checks = [intersections.intersection_formula_check(F, M, B, args.n) for M, B in instances]
        passed = sum(1 for c in checks if c.equal)
        results["formula"] = {"instances": len(checks), "passed": passed,
                              "failures": [c.to_dict() for c in checks if not c.equal][:5]}
        if passed != len(checks):
            report.fail("counting formula failed on {} of {} instances".format(len(checks) - passed, len(checks)))
    report.results = results


def _cmd_spread(args: argparse.Namespace, report: RunReport) -> None:
    """Maximum partial spread of Q(2m, q)."""
    from analyzers import spreads
    from geometry.field import field_from_order

    res = spreads.max_partial_spread(args.m, args.q, args.method, args.clique_cap)
    if not spreads.is_partial_spread(field_from_order(args.q), res.witness):
        report.fail("witness generators are not pairwise disjoint")
    report.results = res.to_dict()


def _cmd_verify_all(args: argparse.Namespace, report: RunReport) -> None:
    """Run an acceptance suite."""
    from analyzers.acceptance import SuiteOptions, run_suite
    from analyzers.export import suite_report

    opts = SuiteOptions(threads=args.threads, use_cache=not args.no_cache, budget=args.budget)
    only = [c for c in args.only.split(",") if c] if args.only else None
    results = run_suite(args.suite, opts, only)
    report.results = {"suite": args.suite, "checks": [r.to_dict() for r in results]}
    for r in results:
        if not r.ok:
            report.fail("check {} ({}) failed".format(r.id, r.title))
    if not args.quiet:
        from ui.terminal import show_suite
        show_suite(args.suite, report.results["checks"])
    if args.report:
        rows = [(r.id, r.title, r.ok, r.error or "") for r in results]
        report.artifacts.append(suite_report(args.suite, rows, args.report))


def _cmd_cache(args: argparse.Namespace, report: RunReport) -> None:
    """List or clear cached enumerations."""
    if args.action == "clear":
        report.results = {"removed": db.clear_cache()}
        return
    rows = db.list_enumerations()
    report.results = {"path": db.CACHE_PATH, "enumerations": rows}
    if not args.quiet:
        from ui.terminal import show_cache
        show_cache(rows)


# ------------------------------------------------------------------
# Argument parser
# ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    """Build the CLI argument parser."""
    parser = _Parser(
        prog="ogc",
        description="{} v{}".format(APP_NAME, VERSION),
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable debug logging")
    parser.add_argument("--quiet", action="store_true", help="No terminal summary; JSON only")
    parser.add_argument("--version", action="version", version="{} {}".format(APP_NAME, VERSION))
    parser.add_argument("--json", dest="json_out", default=None, metavar="FILE",
                        help="Write the JSON report to FILE instead of stdout")
    parser.add_argument("--threads", type=int, default=DEFAULT_THREADS, help="Worker processes")
    parser.add_argument("--no-cache", action="store_true",
                        help="Recompute enumerations and compare with the cache")
    parser.add_argument("--budget", type=int, default=MESSAGE_BUDGET,
                        help="Max codewords for exact enumeration")
    parser.add_argument("--hyperplane-budget", type=int, default=HYPERPLANE_BUDGET)
    parser.add_argument("--quadric-budget", type=int, default=QUADRIC_BUDGET)
    parser.add_argument("--clique-cap", type=int, default=CLIQUE_VERTEX_CAP)
    parser.add_argument("--max-r", type=int, default=MAX_HADAMARD_R)

    subparsers = parser.add_subparsers(dest="command")

    # enum
    sp = subparsers.add_parser("enum", help="Enumerate the points of Δ_k")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--out", default=None, help="Write {schema,n,k,q,count,points} here")

    # code
    sp = subparsers.add_parser("code", help="Parameters of the code C_{k,n}")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--mindist", choices=["exact", "bound", "none"], default="exact")
    sp.add_argument("--weights", action="store_true", help="Full weight enumerator")
    sp.add_argument("--hyperplanes", action="store_true",
                    help="Cross-check d through hyperplane sections")
    sp.add_argument("--emit-generator", default=None, metavar="FILE")

    # cap
    sp = subparsers.add_parser("cap", help="Polar cap from an index set J")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--J", required=True, help="Comma-separated 1-based indices")
    sp.add_argument("--table", choices=["auto", "1", "2"], default="auto")
    sp.add_argument("--tau", default=None, help="Permutation of 0..r-1 for the m_i")
    sp.add_argument("--truncate", action="store_true")
    sp.add_argument("--verify", action="store_true")

    # hadamard
    sp = subparsers.add_parser("hadamard", help="Sign matrices, designs and RM codes")
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--from-cap", default=None, metavar="n,q,J")
    sp.add_argument("--check", default="hadamard,sylvester,design,rm")
    sp.add_argument("--out", default=None, help="Write the sign grid here")

    # quadrics
    sp = subparsers.add_parser("quadrics", help="Quadric sections of Q+(2n+1, q)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--mode", choices=["all", "no-shared"], default="all")
    sp.add_argument("--formula-instances", type=int, default=FORMULA_INSTANCES)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    # spread
    sp = subparsers.add_parser("spread", help="Maximum partial spread of Q(2m, q)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--method", choices=["exact", "greedy"], default="exact")

    # verify-all
    sp = subparsers.add_parser("verify-all", help="Run an acceptance suite")
    sp.add_argument("--suite", choices=["quick", "desk"], default="quick")
    sp.add_argument("--only", default=None, help="Comma-separated check ids")
    sp.add_argument("--report", default=None, help="Write a Markdown summary here")

    # cache
    sp = subparsers.add_parser("cache", help="Inspect the enumeration cache")
    sp.add_argument("action", choices=["list", "clear"])

    return parser


# ------------------------------------------------------------------
# Entry point
# ------------------------------------------------------------------

_COMMAND_MAP = {
    "enum": _cmd_enum,
    "code": _cmd_code,
    "cap": _cmd_cap,
    "hadamard": _cmd_hadamard,
    "quadrics": _cmd_quadrics,
    "spread": _cmd_spread,
    "verify-all": _cmd_verify_all,
    "cache": _cmd_cache,
}

_PARAMETER_SKIP = {"verbose", "quiet", "json_out", "command"}


def _emit(report: RunReport, args: Optional[argparse.Namespace]) -> None:
    from analyzers.export import write_json

    out = report.to_dict()
    out["results_checksum"] = payload_checksum(report.results)
    if args is not None and args.json_out:
        write_json(out, args.json_out)
    else:
        sys.stdout.write(canonical_json(out, indent=2) + "\n")


def dispatch(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        logging.getLogger("ogc").error("%s", exc)
        return EXIT_ERROR

    level = logging.DEBUG if args.verbose else (logging.ERROR if args.quiet else logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s")

    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_ERROR

    if args.verbose and not args.quiet:
        from ui.terminal import show_banner
        show_banner()

    report = RunReport(
        command=args.command,
        parameters={k: v for k, v in sorted(vars(args).items()) if k not in _PARAMETER_SKIP},
    )
    start = time.monotonic()
    code = EXIT_OK
    try:
        _COMMAND_MAP[args.command](args, report)
        if not report.ok:
            code = EXIT_VERIFY
    except VerificationFailed as exc:
        report.ok = False
        report.error = str(exc)
        code = EXIT_VERIFY
    except OGCError as exc:
        report.ok = False
        report.error = "{}: {}".format(type(exc).__name__, exc)
        code = EXIT_ERROR
        if args.verbose:
            logger.exception("%s failed", args.command)
    report.runtime_ms = int((time.monotonic() - start) * 1000)

    _emit(report, args)
    if not args.quiet:
        from ui.terminal import show_report
        show_report(report)
    return code


def main() -> None:
    """CLI entry point."""
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
