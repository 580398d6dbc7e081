"""Intersections of quadrics with the hyperbolic quadric Q+(2n+1, q).

Brute-force lab: every quadric of PG(2n+1, q), deduplicated up to scalars, is
evaluated on the points of Q+ and the largest intersection is recorded.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import FORMULA_INSTANCES, QUADRIC_BUDGET, QUADRIC_CHUNK
from errors import BudgetExceeded, EvenCharacteristic, UsageError
from geometry import linalg
from geometry.field import FieldSpec
from geometry.quadform import (
    coefficient_vector,
    hyperbolic_form,
    monomials,
    polar_ctx,
    singular_points,
    totally_singular_subspaces,
)

logger = logging.getLogger("ogc.intersections")

MODES = ("all", "no_shared_generator")


@dataclass
class IntersectionResult:
    n: int
    q: int
    mode: str
    max_size: int
    witness: List[int]
    quadrics_scanned: int
    attaining: int
    formula_value: Optional[int] = None
    match: Optional[bool] = None
    split: Optional[Dict[str, object]] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "q": self.q,
            "mode": self.mode,
            "max": self.max_size,
            "witness_coeffs": self.witness,
            "quadrics_scanned": self.quadrics_scanned,
            "attaining": self.attaining,
            "formula_value": self.formula_value,
            "match": self.match,
            "split": self.split,
        }


# ------------------------------------------------------------------
# Closed forms
# ------------------------------------------------------------------

def odd_intersection_max(n: int, q: int) -> int:
    """Largest |Q ∩ Q+(2n+1, q)| over quadrics Q != Q+, q odd."""
    num = (2 * q ** (2 * n) - q ** (2 * n - 1) + 2 * q ** (n + 1)
           - 3 * q ** n + q ** (n - 1) - 1)
    return num // (q - 1)


def no_shared_generator_bound(n: int, q: int) -> int:
    """Upper bound on |Q ∩ Q+| when Q contains no generator of Q+."""
    return (2 * q ** n - q ** (n - 1) - 1) * (q ** n + 1) // (q - 1)


def hyperbolic_size(n: int, q: int) -> int:
    """Points of Q+(2n+1, q)."""
    return (q ** n + 1) * (q ** (n + 1) - 1) // (q - 1)


# ------------------------------------------------------------------
# Evaluation helpers
# ------------------------------------------------------------------

def monomial_matrix(F: FieldSpec, points: np.ndarray) -> np.ndarray:
    """Values x_i x_j of every monomial (columns) at every point (rows)."""
    mons = monomials(points.shape[1])
    cols = [F.mul(points[:, i], points[:, j]) for i, j in mons]
    return np.stack(cols, axis=1)


def _zero_mask(F: FieldSpec, coeffs: np.ndarray, mon: np.ndarray) -> np.ndarray:
    return F.matmul(coeffs, mon.T) == 0


def intersection_max(F: FieldSpec, n: int, mode: str = "all",
                     budget: int = QUADRIC_BUDGET, chunk: int = QUADRIC_CHUNK) -> IntersectionResult:
    """Exact max of |Q ∩ Q+| over quadrics Q != Q+ of PG(2n+1, q)."""
    if mode not in MODES:
        raise UsageError("unknown mode {!r}; expected one of {}".format(mode, ", ".join(MODES)))
    dim = 2 * n + 2
    nmon = len(monomials(dim))
    total = linalg.count_projective(F.q, nmon)
    if total > budget:
        raise BudgetExceeded("quadric coefficient vectors", total, budget)

    ctx = polar_ctx(hyperbolic_form(F, n + 1))
    pts = singular_points(ctx)
    mon = monomial_matrix(F, pts)
    own = linalg.canonicalize_rows(F, coefficient_vector(ctx.form)[None, :])[0]

    gen_index = []  # type: List[np.ndarray]
    if mode == "no_shared_generator":
        lookup = {key: i for i, key in enumerate(linalg.row_keys(pts))}
        for gen in totally_singular_subspaces(ctx, n + 1, points=pts):
            members = linalg.unique_stack(linalg.canonicalize_rows(F, linalg.span_vectors(F, gen)[1:]))
            gen_index.append(np.array([lookup[k] for k in linalg.row_keys(members)], dtype=np.int64))
        logger.debug("%d generators excluded from the search", len(gen_index))

    best = -1
    witness = None
    attaining = 0
    scanned = 0
    for coeffs in linalg.iter_projective_points(F, nmon, chunk):
        keep = ~np.all(coeffs == own, axis=1)
        coeffs = coeffs[keep]
        zeros = _zero_mask(F, coeffs, mon)
        if gen_index:
            shares = np.zeros(coeffs.shape[0], dtype=bool)
            for idx in gen_index:
                shares |= zeros[:, idx].all(axis=1)
            coeffs = coeffs[~shares]
            zeros = zeros[~shares]
        scanned += coeffs.shape[0]
        if coeffs.shape[0] == 0:
            continue
        counts = zeros.sum(axis=1)
        top = int(counts.max())
        if top > best:
            best = top
            witness = coeffs[int(np.argmax(counts))]
            attaining = int((counts == top).sum())
        elif top == best:
            attaining += int((counts == top).sum())

    result = IntersectionResult(
        n=n, q=F.q, mode=mode, max_size=best,
        witness=[int(c) for c in witness] if witness is not None else [],
        quadrics_scanned=scanned, attaining=attaining,
    )
    if F.p != 2:
        if mode == "all":
            result.formula_value = odd_intersection_max(n, F.q)
            result.match = best == result.formula_value
        else:
            result.formula_value = no_shared_generator_bound(n, F.q)
            result.match = best <= result.formula_value
    if mode == "all" and witness is not None:
        result.split = split_witness(F, n, witness)
    logger.debug("intersection_max n=%d q=%d mode=%s -> %d", n, F.q, mode, best)
    return result


def product_coefficients(F: FieldSpec, l1: np.ndarray, l2: np.ndarray) -> np.ndarray:
    """Coefficient vectors of the quadrics l1 * l2 (row-wise over two stacks of linear forms)."""
    dim = l1.shape[1]
    cols = []
    for i, j in monomials(dim):
        if i == j:
            cols.append(F.mul(l1[:, i], l2[:, i]))
        else:
            cols.append(F.add(F.mul(l1[:, i], l2[:, j]), F.mul(l1[:, j], l2[:, i])))
    return np.stack(cols, axis=1)


def split_witness(F: FieldSpec, n: int, witness) -> Optional[Dict[str, object]]:
    """Find λ and distinct hyperplanes l1, l2 with W - λ·Q+ = l1·l2 (projectively)."""
    dim = 2 * n + 2
    forms = linalg.projective_points(F, dim)
    a, b = np.triu_indices(forms.shape[0], k=1)
    prods = linalg.canonicalize_rows(F, product_coefficients(F, forms[a], forms[b]))
    table = {}
    for t, key in enumerate(linalg.row_keys(prods)):
        table.setdefault(key, t)

    hyp = coefficient_vector(hyperbolic_form(F, n + 1))
    w = np.asarray(witness, dtype=np.int64)
    for lam in range(F.q):
        v = F.sub(w, F.mul(lam, hyp))
        if not v.any():
            continue
        key = linalg.row_keys(linalg.canonicalize_rows(F, v[None, :]))[0]
        if key in table:
            t = table[key]
            return {
                "lambda": lam,
                "l1": [int(c) for c in forms[a[t]]],
                "l2": [int(c) for c in forms[b[t]]],
            }
    return None


# ------------------------------------------------------------------
# Counting formula
# ------------------------------------------------------------------

@dataclass
class FormulaCheck:
    lhs: int
    rhs: Optional[int]
    equal: bool
    N: int
    N0: int
    M: List[List[int]] = field(default_factory=list)
    B: List[List[int]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, object]:
        return {"lhs": self.lhs, "rhs": self.rhs, "equal": self.equal, "N": self.N, "N0": self.N0,
                "M": self.M, "B": self.B}


def intersection_formula_check(F: FieldSpec, M, B, n: int) -> FormulaCheck:
    """Brute-force |Q ∩ Q+| for Q given by [[0, M], [M^T, B]] against the eigenvector count."""
    if F.p == 2:
        raise EvenCharacteristic("the counting formula needs odd q")
    q = F.q
    M = np.asarray(M, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    m = n + 1

    pts = linalg.projective_points(F, 2 * m)
    X, Y = pts[:, :m], pts[:, m:]
    dot = F.sum(F.mul(X, Y), axis=1)
    MY = F.matmul(Y, M.T)
    bil = F.sum(F.mul(X, MY), axis=1)
    yby = F.sum(F.mul(F.matmul(Y, B), Y), axis=1)
    second = F.add(F.add(bil, bil), yby)
    lhs = int(np.sum((dot == 0) & (second == 0)))

    vecs = linalg.all_vectors(F, m)[1:]
    images = F.matmul(vecs, M.T)
    stacked = np.stack([vecs, images], axis=1)
    eig = np.array([linalg.rank(F, pair) == 1 for pair in stacked], dtype=bool)
    vb = F.sum(F.mul(F.matmul(vecs, B), vecs), axis=1)
    N = int(eig.sum())
    N0 = int((eig & (vb == 0)).sum())

    num = q ** (n - 1) * (q ** (n + 1) - N - 1) + q ** n * N0 + q ** (n + 1) - 1
    rhs = num // (q - 1) if num % (q - 1) == 0 else None
    return FormulaCheck(lhs=lhs, rhs=rhs, equal=rhs == lhs, N=N, N0=N0,
                        M=M.tolist(), B=B.tolist())


def random_formula_instances(F: FieldSpec, n: int, count: int = FORMULA_INSTANCES,
                             seed: int = 0) -> List[Tuple[np.ndarray, np.ndarray]]:
    """Seeded random (M, B) pairs with B symmetric."""
    rng = np.random.default_rng(seed)
    m = n + 1
    out = []
    for _ in range(count):
        M = rng.integers(0, F.q, size=(m, m), dtype=np.int64)
        U = np.triu(rng.integers(0, F.q, size=(m, m), dtype=np.int64))
        B = F.add(U, np.triu(U, 1).T)
        out.append((M, B))
    return out
