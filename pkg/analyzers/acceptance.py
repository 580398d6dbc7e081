"""Acceptance suites: the closed-form claims checked by brute force, as data.

Each check has parameters per suite; ``quick`` keeps every check that fits in a
test run, ``desk`` runs the full table (the 2^28 enumeration and the q = 5
quadric sweep included).
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from analyzers import caps, codes, hadamard, spreads
from config import MESSAGE_BUDGET
from errors import OGCError
from geometry import intersections
from geometry.field import field_from_order
from geometry.grassmann import GrassCtx, delta_size, embed, load_or_enumerate
from normalizer import to_jsonable

logger = logging.getLogger("ogc.acceptance")

SUITES = ("quick", "desk")

# (n, k, q) -> (N, K, d)
KNOWN_CODES = {
    (2, 1, 2): (15, 5, 6),
    (2, 1, 3): (40, 5, 24),
    (2, 2, 2): (15, 9, 4),
    (2, 2, 3): (40, 10, 18),
    (3, 3, 2): (135, 28, 32),
}

C22_Q3_SUPPORT = [18, 24, 27, 30, 36]


@dataclass
class SuiteOptions:
    threads: int = 1
    use_cache: bool = True
    budget: int = MESSAGE_BUDGET


@dataclass
class CheckResult:
    id: str
    title: str
    ok: bool
    detail: Dict[str, Any] = field(default_factory=dict)
    runtime_ms: int = 0
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.id, "title": self.title, "ok": self.ok,
                "detail": to_jsonable(self.detail), "runtime_ms": self.runtime_ms, "error": self.error}


@dataclass
class Check:
    id: str
    title: str
    run: Callable[..., Dict[str, Any]]
    params: Dict[str, Dict[str, Any]]


def _key(*parts: Any) -> str:
    return ",".join(str(p) for p in parts)


# ------------------------------------------------------------------
# Checks.  Each returns a detail dict with a boolean "ok".
# ------------------------------------------------------------------

def check_point_counts(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    for n, k, q in cases:
        pts, _ = load_or_enumerate(GrassCtx.from_params(n, k, q), opts.use_cache)
        detail[_key(n, k, q)] = {"count": len(pts), "expected": delta_size(n, k, q)}
    detail["ok"] = all(v["count"] == v["expected"] for v in detail.values())
    return detail


def check_dimensions(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    for n, k, q in cases:
        code, _, _ = codes.orthogonal_code(n, k, q, opts.use_cache)
        detail[_key(n, k, q)] = {"K": code.K, "expected": codes.expected_dimension(n, k, q)}
    detail["ok"] = all(v["K"] == v["expected"] for v in detail.values())
    return detail


def check_known_codes(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    ok = True
    for n, k, q in cases:
        code, _, _ = codes.orthogonal_code(n, k, q, opts.use_cache)
        entry = {"N": code.N, "K": code.K}  # type: Dict[str, Any]
        if (n, k, q) == (2, 2, 3):
            weights = codes.weight_enumerator(code, opts.budget, opts.threads)
            support = sorted(w for w in weights if w)
            entry["weight_support"] = support
            entry["weight_total"] = sum(weights.values())
            ok = ok and support == C22_Q3_SUPPORT and entry["weight_total"] == q ** code.K
        else:
            codes.min_distance(code, opts.budget, opts.threads)
        entry["d"] = code.d_exact
        entry["expected"] = list(KNOWN_CODES[(n, k, q)])
        ok = ok and (code.N, code.K, code.d_exact) == KNOWN_CODES[(n, k, q)]
        ok = ok and code.d_exact == codes.expected_parameters(n, k, q)["d"]
        detail[_key(n, k, q)] = entry
    detail["ok"] = ok
    return detail


def check_duality(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    for n, k, q in cases:
        code, system, _ = codes.orthogonal_code(n, k, q, opts.use_cache)
        d, _ = codes.min_distance(code, opts.budget, opts.threads)
        detail[_key(n, k, q)] = {"gray": d, "hyperplanes": codes.min_distance_by_hyperplanes(system)}
    detail["ok"] = all(v["gray"] == v["hyperplanes"] for v in detail.values())
    return detail


def check_partial_spread_bound(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    for n, k, q in cases:
        psi = spreads.psi(n - k, q)
        bound = codes.mr1_lower_bound(n, k, q, psi)
        code, _, _ = codes.orthogonal_code(n, k, q, opts.use_cache)
        d, _ = codes.min_distance(code, opts.budget, opts.threads)
        detail[_key(n, k, q)] = {"psi": psi, "bound": bound, "d": d}
    detail["ok"] = all(v["d"] >= v["bound"] for v in detail.values())
    return detail


def check_quadric_intersections(opts: SuiteOptions, qs: Sequence[int], formula_q: Sequence[int],
                                instances: int = 100) -> Dict[str, Any]:
    detail = {}
    ok = True
    for q in qs:
        F = field_from_order(q)
        full = intersections.intersection_max(F, 1, "all")
        apart = intersections.intersection_max(F, 1, "no_shared_generator")
        bound = intersections.no_shared_generator_bound(1, q)
        detail["max q={}".format(q)] = {"max": full.max_size, "expected": 4 * q,
                                        "no_shared": apart.max_size, "no_shared_bound": bound}
        ok = ok and full.max_size == 4 * q and apart.max_size <= bound
    for q in formula_q:
        F = field_from_order(q)
        checks = [intersections.intersection_formula_check(F, M, B, 1)
                  for M, B in intersections.random_formula_instances(F, 1, instances, seed=q)]
        passed = sum(1 for c in checks if c.equal)
        detail["formula q={}".format(q)] = {"instances": len(checks), "passed": passed}
        ok = ok and passed == len(checks) >= 100
    detail["ok"] = ok
    return detail


def check_caps(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    ok = True
    for n, q, J in cases:
        fam = caps.truncate(caps.build_cap(caps.cap_spec(n, q, J)))
        full = caps.check_family(fam)
        short = caps.check_family(fam, truncated=True)
        entry = {"r": fam.spec.r, "members": fam.size, "full": full, "truncated": short}
        for label, report in (("full", full), ("truncated", short)):
            ok = ok and report["totally_singular"] and report["grassmann_cap_ok"] \
                and report["projective_cap_ok"]
            if report["polar_cap_expected"]:
                ok = ok and report["polar_cap_ok"]
            elif report["collinear_pairs"]:
                # k = n: members one pair apart share a conic line.
                entry.setdefault("collinear_pairs", {})[label] = report["collinear_pairs"]
        ok = ok and fam.size == 2 ** fam.spec.r
        detail[_key(n, q, "{" + ",".join(map(str, J)) + "}")] = entry
    detail["ok"] = ok
    return detail


def check_dual_polar_caps(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    detail = {}
    for n, q in cases:
        ctx = GrassCtx.from_params(n, n, q)
        pts, _ = load_or_enumerate(ctx, opts.use_cache)
        system = embed(ctx, pts)
        ok, triple = caps.verify_projective_cap(ctx.field, system.points)
        detail[_key(n, q)] = {"points": system.size, "ok": ok, "triple": triple}
    detail["ok"] = all(v["ok"] for v in detail.values())
    return detail


def check_hadamard(opts: SuiteOptions, cap_cases: Sequence[tuple], max_r: int,
                   designs: Sequence[tuple], rm_max: int) -> Dict[str, Any]:
    detail = {}
    ok = True
    for n, q, J in cap_cases:
        fam = caps.truncate(caps.build_cap(caps.cap_spec(n, q, J)))
        A = hadamard.a_matrix_from_cap(fam)
        same = bool(np.array_equal(A.entries, hadamard.a_matrix_formula(fam.spec.r).entries))
        field_ok = all(hadamard.xi_matches_field(fam, mask) for mask in range(fam.size))
        detail["cap " + _key(n, q, J)] = {"r": fam.spec.r, "matches_formula": same,
                                         "sigma_empty": hadamard.sigma_empty_ok(fam), "field": field_ok}
        ok = ok and same and field_ok and hadamard.sigma_empty_ok(fam)
    for r in range(1, max_r + 1):
        A = hadamard.a_matrix_formula(r)
        row = {"sylvester": bool(np.array_equal(A.entries, hadamard.sylvester(r).entries)),
               "hadamard": hadamard.is_hadamard(A), "blocks": hadamard.kronecker_blocks_ok(r)}
        detail["r={}".format(r)] = row
        ok = ok and all(row.values())
    for r, expected in designs:
        design = hadamard.hadamard_design(hadamard.a_matrix_formula(r))
        got = (design.v, design.k, design.lam)
        detail["design r={}".format(r)] = design.to_dict()
        ok = ok and design.is_2design and got == tuple(expected)
    for r in range(1, rm_max + 1):
        code = hadamard.rm_code(r)
        d, _ = codes.min_distance(code)
        row = {"N": code.N, "K": code.K, "d": d, "oracle": hadamard.rm_matches_oracle(r)}
        detail["rm r={}".format(r)] = row
        ok = ok and row["oracle"] and (code.N, code.K, d) == (2 ** r, r + 1, 2 ** (r - 1))
    detail["ok"] = ok
    return detail


def check_bounds(opts: SuiteOptions, cases: Sequence[tuple]) -> Dict[str, Any]:
    """Out-of-budget codes: only bound consistency is asserted."""
    detail = {}
    ok = True
    for n, k, q, budget in cases:
        code, _, _ = codes.orthogonal_code(n, k, q, opts.use_cache)
        exact_needed = q ** code.K - 1
        psi = spreads.psi(n - k, q) if k < n else None
        lower, upper = codes.distance_bounds(code, n, k, psi)
        closed = codes.expected_parameters(n, k, q)["d"]
        entry = {"N": code.N, "K": code.K, "d_lower": lower, "d_upper": upper,
                 "beyond_budget": exact_needed > budget, "closed_form_d": closed}
        good = lower <= upper <= code.N - code.K + 1 and exact_needed > budget
        if k < n:
            good = good and lower == codes.mr1_lower_bound(n, k, q, psi)
        if closed is not None:
            good = good and lower <= closed <= upper
        entry["consistent"] = good
        ok = ok and good
        detail[_key(n, k, q)] = entry
    detail["ok"] = ok
    return detail


# ------------------------------------------------------------------
# The table
# ------------------------------------------------------------------

COUNT_CASES = [(2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2), (3, 3, 2), (3, 3, 3), (2, 2, 5)]
# k < n families are polar caps; the k = n ones only Grassmann and projective caps.
CAP_CASES = [(3, 3, (1, 4)), (4, 3, (1, 5)), (4, 3, (1, 5, 9)), (5, 3, (1, 2, 6, 7)), (3, 5, (1, 4)),
             (2, 3, (1, 3)), (3, 3, (1, 4, 7)), (4, 3, (1, 2, 5, 6)), (2, 5, (1, 3))]

CHECKS = [
    Check("1", "point counts of Δ_k", check_point_counts, {
        "quick": {"cases": [c for c in COUNT_CASES if c != (3, 3, 3)]},
        "desk": {"cases": COUNT_CASES},
    }),
    Check("2", "code dimensions", check_dimensions, {
        "quick": {"cases": [(2, 1, 2), (2, 2, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2)]},
        "desk": {"cases": COUNT_CASES},
    }),
    Check("3", "C_{1,2} parameters", check_known_codes, {
        "quick": {"cases": [(2, 1, 2), (2, 1, 3)]},
        "desk": {"cases": [(2, 1, 2), (2, 1, 3)]},
    }),
    Check("4", "C_{2,2} parameters and weights", check_known_codes, {
        "quick": {"cases": [(2, 2, 2), (2, 2, 3)]},
        "desk": {"cases": [(2, 2, 2), (2, 2, 3)]},
    }),
    Check("5", "C_{3,3} over GF(2)", check_known_codes, {
        "desk": {"cases": [(3, 3, 2)]},
    }),
    Check("6", "Gray and hyperplane distances agree", check_duality, {
        "quick": {"cases": [(2, 1, 2), (2, 1, 3), (2, 2, 2)]},
        "desk": {"cases": [(2, 1, 2), (2, 1, 3), (2, 2, 2), (2, 2, 3)]},
    }),
    Check("7", "partial-spread lower bound", check_partial_spread_bound, {
        "quick": {"cases": [(2, 1, 3)]},
        "desk": {"cases": [(3, 2, 2), (2, 1, 3)]},
    }),
    Check("8", "quadric intersections and counting formula", check_quadric_intersections, {
        "quick": {"qs": [3], "formula_q": [3]},
        "desk": {"qs": [3, 5], "formula_q": [3, 5]},
    }),
    Check("9", "caps from hyperbolic pairs (polar when k < n)", check_caps, {
        "quick": {"cases": CAP_CASES},
        "desk": {"cases": CAP_CASES},
    }),
    Check("10", "Plücker image of Δ_n is a projective cap", check_dual_polar_caps, {
        "quick": {"cases": [(2, 2), (2, 3)]},
        "desk": {"cases": [(2, 2), (2, 3), (3, 2)]},
    }),
    Check("11", "Hadamard, designs and Reed-Muller codes", check_hadamard, {
        "quick": {"cap_cases": [(2, 3, (1, 3)), (4, 3, (1, 2, 5, 6))], "max_r": 6,
                  "designs": [(3, (7, 3, 1)), (4, (15, 7, 3))], "rm_max": 4},
        "desk": {"cap_cases": [(2, 3, (1, 3)), (2, 5, (1, 3)), (4, 3, (1, 2, 5, 6)), (4, 5, (1, 2, 5, 6))],
                 "max_r": 6, "designs": [(3, (7, 3, 1)), (4, (15, 7, 3))], "rm_max": 4},
    }),
    Check("12", "bounds beyond the exact budget", check_bounds, {
        "quick": {"cases": [(3, 2, 2, 2 ** 10)]},
        "desk": {"cases": [(3, 3, 3, MESSAGE_BUDGET), (3, 2, 2, 2 ** 10)]},
    }),
]


def checks_for(suite: str) -> List[Check]:
    return [c for c in CHECKS if suite in c.params]


def run_check(check: Check, suite: str, opts: SuiteOptions) -> CheckResult:
    start = time.monotonic()
    try:
        detail = check.run(opts, **check.params[suite])
        result = CheckResult(id=check.id, title=check.title, ok=bool(detail.pop("ok")), detail=detail)
    except OGCError as exc:
        logger.warning("check %s failed with %s: %s", check.id, type(exc).__name__, exc)
        result = CheckResult(id=check.id, title=check.title, ok=False,
                             error="{}: {}".format(type(exc).__name__, exc))
    result.runtime_ms = int((time.monotonic() - start) * 1000)
    logger.debug("check %s (%s): ok=%s in %d ms", check.id, suite, result.ok, result.runtime_ms)
    return result


def run_suite(suite: str, opts: Optional[SuiteOptions] = None,
              only: Optional[Sequence[str]] = None) -> List[CheckResult]:
    opts = opts or SuiteOptions()
    selected = [c for c in checks_for(suite) if only is None or c.id in only]
    return [run_check(c, suite, opts) for c in selected]
