"""Linear codes from projective systems: parameters, minimum distance, weights and bounds."""

import logging
import os
import sys
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

# Allow imports from the project root.
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from analyzers import gray
from config import (
    DEFAULT_SEED,
    HYPERPLANE_BUDGET,
    MESSAGE_BUDGET,
    PREFIX_BLOCKS,
    RANDOM_PROBES,
)
from errors import BudgetExceeded, UsageError
from geometry import linalg
from geometry.field import FieldSpec, field_from_order
from geometry.grassmann import GrassCtx, delta_size, embed, load_or_enumerate
from schema import ProjSystem

logger = logging.getLogger("ogc.codes")

# Functionals evaluated per numpy batch in the hyperplane scan.
HYPERPLANE_CHUNK = 2 ** 14


@dataclass
class LinearCode:
    """[N, K] code over GF(q) given by a K x N generator matrix."""
    field: FieldSpec
    G: np.ndarray
    label: str = ""
    d_exact: Optional[int] = None
    d_lower: Optional[int] = None
    d_upper: Optional[int] = None
    witness: Optional[List[int]] = None
    weights: Optional[Dict[int, int]] = None

    @property
    def N(self) -> int:
        return int(self.G.shape[1])

    @property
    def K(self) -> int:
        return int(self.G.shape[0])

    @property
    def q(self) -> int:
        return self.field.q

    def set_exact(self, d: int) -> None:
        self.d_exact = d
        self.d_lower = d
        self.d_upper = d

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "label": self.label,
            "q": self.q,
            "N": self.N,
            "K": self.K,
            "d_exact": self.d_exact,
            "d_lower": self.d_lower,
            "d_upper": self.d_upper,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.weights is not None:
            out["weights"] = {str(w): c for w, c in sorted(self.weights.items())}
        return out


def code_from_system(system: ProjSystem) -> LinearCode:
    """Generator matrix: the nonzero RREF rows of the point-column matrix, in pivot order."""
    if system.size == 0:
        raise UsageError("a projective system needs at least one point")
    F = field_from_order(system.q)
    R, K, _ = linalg.rref(F, system.points.T)
    logger.debug("%s: N=%d K=%d", system.label or "system", system.size, K)
    return LinearCode(field=F, G=R[:K], label=system.label)


def min_distance(code: LinearCode, budget: int = MESSAGE_BUDGET, threads: int = 1) -> Tuple[int, List[int]]:
    """Exact minimum distance by Gray-code enumeration; returns (d, witness message)."""
    result = gray.enumerate_codewords(code.field, code.G, budget=budget, threads=threads)
    code.set_exact(result.d)
    code.witness = result.witness
    return result.d, result.witness


def weight_enumerator(code: LinearCode, budget: int = MESSAGE_BUDGET, threads: int = 1) -> Dict[int, int]:
    """Full weight distribution {weight: count}; the counts sum to q^K."""
    total = code.q ** code.K
    if total > budget:
        raise BudgetExceeded("weight enumerator of {}".format(code.label or "code"), total, budget)
    result = gray.enumerate_codewords(code.field, code.G, want_weights=True, threads=threads)
    code.weights = result.weights
    code.set_exact(result.d)
    code.witness = result.witness
    return result.weights


def hyperplane_scan(system: ProjSystem, budget: int = HYPERPLANE_BUDGET) -> Tuple[int, List[int]]:
    """Largest |Ω ∩ Σ| over hyperplanes Σ, with a functional attaining it.

    Functionals vanishing on every point are skipped: they do not cut a
    hyperplane of the span of Ω.
    """
    F = field_from_order(system.q)
    D = system.ambient_dim
    needed = F.q ** D
    if needed > budget:
        raise BudgetExceeded("hyperplanes of PG({}, {})".format(D - 1, F.q), needed, budget)
    pts_T = system.points.T
    N = system.size
    best = -1
    witness = None
    for funcs in linalg.iter_projective_points(F, D, HYPERPLANE_CHUNK):
        zeros = (F.matmul(funcs, pts_T) == 0).sum(axis=1)
        zeros = np.where(zeros == N, -1, zeros)
        i = int(np.argmax(zeros))
        if zeros[i] > best:
            best = int(zeros[i])
            witness = [int(c) for c in funcs[i]]
    return best, witness


def min_distance_by_hyperplanes(system: ProjSystem, budget: int = HYPERPLANE_BUDGET) -> int:
    """d = N - max |Ω ∩ Σ|."""
    best, _ = hyperplane_scan(system, budget)
    return system.size - best


def max_hyperplane_section(system: ProjSystem, budget: int = HYPERPLANE_BUDGET) -> int:
    return hyperplane_scan(system, budget)[0]


def mr1_lower_bound(n: int, k: int, q: int, psi: int) -> int:
    """ψ (q^{k(n-k)} - 1) + 1, valid for k < n."""
    if not 1 <= k < n:
        raise UsageError("the partial-spread bound needs 1 <= k < n, got k={} n={}".format(k, n))
    if psi < 1:
        raise UsageError("psi must be positive, got {}".format(psi))
    return psi * (q ** (k * (n - k)) - 1) + 1


def singleton_ok(code: LinearCode) -> bool:
    d = code.d_exact if code.d_exact is not None else code.d_lower
    return d is None or d <= code.N - code.K + 1


def expected_dimension(n: int, k: int, q: int) -> int:
    m = 2 * n + 1
    if q % 2:
        return comb(m, k)
    return comb(m, k) - (comb(m, k - 2) if k >= 2 else 0)


def c1n_max_section(n: int, q: int) -> int:
    """Largest hyperplane section of Q(2n, q), attained by hyperbolic sections."""
    return (q ** (2 * n - 1) - 1) // (q - 1) + q ** (n - 1)


def expected_parameters(n: int, k: int, q: int) -> Dict[str, Any]:
    """Known closed forms for C_{k,n}: N, K, and d / weight support where established."""
    out = {"N": delta_size(n, k, q), "K": expected_dimension(n, k, q), "d": None,
           "weight_support": None}  # type: Dict[str, Any]
    if k == 1:
        out["d"] = q ** (2 * n - 1) - q ** (n - 1)
    elif (n, k) == (2, 2):
        out["d"] = q ** 2 * (q - 1)
        if q % 2:
            out["weight_support"] = sorted({q ** 3 - q, q ** 3 + q, q ** 3, q ** 3 - q ** 2, q ** 3 + q ** 2})
    elif (n, k) == (3, 3):
        out["d"] = q ** 2 * (q - 1) * (q ** 3 - 1) if q % 2 else q ** 5 * (q - 1)
    return out


def random_probe_best(code: LinearCode, probes: int = RANDOM_PROBES,
                      seed: int = DEFAULT_SEED) -> Tuple[int, Optional[List[int]]]:
    """Lightest codeword among seeded random nonzero messages."""
    rng = np.random.default_rng(seed)
    F = code.field
    msgs = rng.integers(0, F.q, size=(probes, code.K), dtype=np.int64)
    msgs = msgs[np.any(msgs, axis=1)]
    if msgs.shape[0] == 0:
        return code.N, None
    weights = (F.matmul(msgs, code.G) != 0).sum(axis=1)
    i = int(np.argmin(weights))
    return int(weights[i]), [int(x) for x in msgs[i]]


def distance_bounds(code: LinearCode, n: int, k: int, psi: Optional[int] = None,
                    prefix_blocks: int = PREFIX_BLOCKS, probes: int = RANDOM_PROBES,
                    seed: int = DEFAULT_SEED) -> Tuple[int, int]:
    """(d_lower, d_upper) for a code whose exact distance is out of budget.

    Lower: the partial-spread bound when k < n and ψ is known, else 1.
    Upper: the Singleton bound, a Gray prefix scan and random probes.
    """
    lower = mr1_lower_bound(n, k, code.q, psi) if (k < n and psi) else 1
    upper = code.N - code.K + 1
    prefix = gray.enumerate_codewords(code.field, code.G, high_limit=prefix_blocks)
    if prefix.d is not None and prefix.d < upper:
        upper = prefix.d
        code.witness = prefix.witness
    probe, msg = random_probe_best(code, probes, seed)
    if probe < upper:
        upper = probe
        code.witness = msg
    code.d_lower = lower
    code.d_upper = upper
    logger.info("%s: distance out of budget, %d <= d <= %d", code.label or "code", lower, upper)
    return lower, upper


def orthogonal_code(n: int, k: int, q: int, use_cache: bool = True) -> Tuple[LinearCode, ProjSystem, bool]:
    """C_{k,n}: the code of the Plücker image of Δ_k.  Returns (code, system, cache_hit)."""
    ctx = GrassCtx.from_params(n, k, q)
    points, hit = load_or_enumerate(ctx, use_cache)
    system = embed(ctx, points)
    code = code_from_system(system)
    code.label = "C_{{{},{}}}(q={})".format(k, n, q)
    return code, system, hit
