"""Polar caps of Δ_k built from hyperbolic index pairs, and cap verifiers.

Indices are 1-based as in the coordinate names e_1..e_{2n+1}; i' denotes the
hyperbolic partner i ± n.  A member X_S is indexed by the bitmask of S ⊆ M_r
(bit i-1 for m_i); its generators are kept in table row order:

    first vectors of the r pairs, second vectors of the r pairs,
    [e_l + e_{2n+1} - e_l'], then e_j for the unpaired j.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from config import TRIPLE_BUDGET
from errors import BudgetExceeded, EvenCharacteristic, InvalidJ, TableMismatch
from geometry import linalg
from geometry.field import FieldSpec, field_from_order
from geometry.grassmann import GrassCtx, Subspace, collinear
from geometry.quadform import is_totally_singular, parabolic_form, polar_ctx
from schema import ProjSystem

logger = logging.getLogger("ogc.caps")


@dataclass
class CapSpec:
    n: int
    q: int
    J: Tuple[int, ...]
    pairs: List[Tuple[int, int]]
    Jbar: Tuple[int, ...]
    M: Tuple[int, ...]
    ell: Optional[int]
    table: int

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def k(self) -> int:
        return len(self.J)

    @property
    def tau(self) -> Dict[int, int]:
        """j_i -> m_i."""
        return {j: m for (j, _), m in zip(self.pairs, self.M)}

    def subset(self, mask: int) -> FrozenSet[int]:
        return frozenset(m for i, m in enumerate(self.M) if mask >> i & 1)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n, "q": self.q, "J": list(self.J), "pairs": [list(p) for p in self.pairs],
            "Jbar": list(self.Jbar), "M": list(self.M), "ell": self.ell, "table": self.table,
            "r": self.r, "k": self.k,
        }


@dataclass
class CapFamily:
    spec: CapSpec
    field: FieldSpec
    members: Dict[int, np.ndarray]
    truncated: Optional[Dict[int, np.ndarray]] = None

    @property
    def size(self) -> int:
        return len(self.members)

    def subspaces(self, truncated: bool = False) -> List[Subspace]:
        source = self.truncated if truncated else self.members
        return [Subspace(linalg.row_space(self.field, source[mask]), mask) for mask in sorted(source)]

    def to_dict(self) -> Dict[str, Any]:
        out = {"spec": self.spec.to_dict(),
               "members": {str(mask): self.members[mask].tolist() for mask in sorted(self.members)}}
        if self.truncated is not None:
            out["truncated"] = {str(mask): self.truncated[mask].tolist() for mask in sorted(self.truncated)}
        return out


def parse_J(text: str) -> Tuple[int, ...]:
    """'1,3' -> (1, 3)."""
    try:
        values = [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise InvalidJ("J must be a comma-separated list of integers, got {!r}".format(text))
    if not values:
        raise InvalidJ("J is empty")
    return tuple(sorted(values))


def _partner(i: int, n: int) -> int:
    if i <= n:
        return i + n
    if i <= 2 * n:
        return i - n
    return i


def choose_M(n: int, J: Sequence[int], tau: Optional[Sequence[int]] = None) -> Tuple[Tuple[int, ...], Optional[int]]:
    """Smallest admissible M_r (and l when 2n+1 is in J).

    ``tau`` optionally permutes which element of M_r is matched to each pair.
    """
    J = tuple(sorted(J))
    if len(set(J)) != len(J):
        raise InvalidJ("J has repeated indices: {}".format(list(J)))
    if any(not 1 <= j <= 2 * n + 1 for j in J):
        raise InvalidJ("indices of J must lie in 1..{}".format(2 * n + 1))
    if len(J) > n:
        raise InvalidJ("|J| = {} exceeds n = {}".format(len(J), n))
    pairs = [j for j in J if j <= n and j + n in J]
    touched = {j if j <= n else _partner(j, n) for j in J if j != 2 * n + 1}
    U = [i for i in range(1, n + 1) if i not in touched]
    need = len(pairs) + (1 if 2 * n + 1 in J else 0)
    if len(U) < need:
        raise InvalidJ("J = {} leaves {} free indices in 1..{}, {} needed".format(list(J), len(U), n, need))
    M = U[:len(pairs)]
    if tau is not None:
        if sorted(tau) != list(range(len(M))):
            raise InvalidJ("tau must be a permutation of 0..{}".format(len(M) - 1))
        M = [M[t] for t in tau]
    ell = U[len(pairs)] if 2 * n + 1 in J else None
    return tuple(M), ell


def cap_spec(n: int, q: int, J: Sequence[int], table: str = "auto",
             tau: Optional[Sequence[int]] = None) -> CapSpec:
    J = tuple(sorted(J))
    M, ell = choose_M(n, J, tau)
    has_last = 2 * n + 1 in J
    natural = 2 if has_last else 1
    if str(table) != "auto" and int(table) != natural:
        raise TableMismatch("table {} requested but 2n+1 {} in J".format(table, "is" if has_last else "is not"))
    pairs = [(j, j + n) for j in J if j <= n and j + n in J]
    paired = {i for p in pairs for i in p}
    Jbar = tuple(j for j in J if j not in paired and j != 2 * n + 1)
    return CapSpec(n=n, q=q, J=J, pairs=pairs, Jbar=Jbar, M=M, ell=ell, table=natural)


def integer_rows(spec: CapSpec, mask: int) -> np.ndarray:
    """Generators of X_S over the integers (entries -1, 0, 1), table row order."""
    n = spec.n
    dim = 2 * n + 1
    first = []
    second = []
    for i, ((j, jp), m) in enumerate(zip(spec.pairs, spec.M)):
        mp = m + n
        if mask >> i & 1:
            first.append({j: 1, mp: -1})
            second.append({jp: 1, m: 1})
        else:
            first.append({j: 1, m: 1})
            second.append({jp: 1, mp: -1})
    rows = first + second
    if spec.table == 2:
        rows.append({spec.ell: 1, dim: 1, spec.ell + n: -1})
    rows.extend({j: 1} for j in spec.Jbar)
    out = np.zeros((len(rows), dim), dtype=np.int64)
    for t, row in enumerate(rows):
        for index, sign in row.items():
            out[t, index - 1] = sign
    return out


def build_cap(spec: CapSpec) -> CapFamily:
    """All 2^r members X_S, each checked totally singular."""
    F = field_from_order(spec.q)
    if F.p == 2:
        raise EvenCharacteristic("the cap construction needs odd q, got {}".format(spec.q))
    ctx = polar_ctx(parabolic_form(F, spec.n))
    members = {}
    for mask in range(2 ** spec.r):
        rows = _to_field(F, integer_rows(spec, mask))
        if not is_totally_singular(ctx, rows) or linalg.rank(F, rows) != spec.k:
            raise InvalidJ("member {} of J={} is not a totally singular {}-space".format(
                sorted(spec.subset(mask)), list(spec.J), spec.k))
        members[mask] = rows
    logger.debug("cap n=%d q=%d J=%s: %d members", spec.n, spec.q, list(spec.J), len(members))
    return CapFamily(spec=spec, field=F, members=members)


def _to_field(F: FieldSpec, rows: np.ndarray) -> np.ndarray:
    return np.where(rows < 0, F.neg(1), rows).astype(np.int64)


def truncate(fam: CapFamily) -> CapFamily:
    """Keep the first 2r (table 1) or 2r+1 (table 2) generators of every member."""
    keep = truncated_dim(fam.spec)
    fam.truncated = {mask: rows[:keep].copy() for mask, rows in fam.members.items()}
    return fam


def truncated_dim(spec: CapSpec) -> int:
    return 2 * spec.r + (1 if spec.table == 2 else 0)


def cap_embedding(fam: CapFamily, truncated: bool = False) -> ProjSystem:
    """Plücker images of the members (or of the truncated members)."""
    source = fam.truncated if truncated else fam.members
    bases = np.stack([source[mask] for mask in sorted(source)])
    coords = linalg.embed_stack(fam.field, bases)
    return ProjSystem(q=fam.spec.q, ambient_dim=coords.shape[1], points=coords,
                      label="cap(n={}, J={})".format(fam.spec.n, list(fam.spec.J)))


def min_pair_distance(F: FieldSpec, points: List[Subspace]) -> int:
    """min over pairs of k - dim(X ∩ Y)."""
    k = points[0].dim
    return min(k - linalg.intersection_dim(F, a.basis, b.basis)
               for a, b in itertools.combinations(points, 2))


# ------------------------------------------------------------------
# Verifiers
# ------------------------------------------------------------------

def _members_on_line(F: FieldSpec, points: List[Subspace], X: np.ndarray, Y: Optional[np.ndarray]) -> List[int]:
    k = points[0].dim
    on = []
    for t, z in enumerate(points):
        if linalg.rank(F, np.vstack([X, z.basis])) != k:
            continue
        if Y is not None and linalg.rank(F, np.vstack([Y, z.basis])) != k + 1:
            continue
        on.append(t)
    return on


def verify_polar_cap(ctx: GrassCtx, points: List[Subspace]) -> Tuple[int, Optional[List[int]]]:
    """Max number of the given points on one line of Δ_k, with a line attaining it if > 1."""
    if not points:
        return 0, None
    F = ctx.field
    best = 1
    worst = None
    seen = set()
    for a, b in itertools.combinations(points, 2):
        X = linalg.intersection(F, a.basis, b.basis)
        if X.shape[0] != ctx.k - 1:
            continue
        if ctx.k < ctx.n:
            Y = linalg.row_space(F, np.vstack([a.basis, b.basis]))
            if not is_totally_singular(ctx.polar, Y):
                continue
        else:
            Y = None
        key = X.tobytes() + (b"" if Y is None else Y.tobytes())
        if key in seen:
            continue
        seen.add(key)
        on = _members_on_line(F, points, X, Y)
        if len(on) > best:
            best = len(on)
            worst = [points[t].id for t in on]
    return best, worst


def collinear_pairs(ctx: GrassCtx, points: List[Subspace]) -> List[List[int]]:
    """Id pairs of members that lie on a common line of Δ_k."""
    return [[a.id, b.id] for a, b in itertools.combinations(points, 2) if collinear(ctx, a, b)]


def verify_grassmann_cap(F: FieldSpec, points: List[Subspace]) -> Tuple[bool, int, Optional[List[int]]]:
    """No three of the points on a line {Z : X ⊂ Z ⊂ Y} of the full Grassmannian."""
    if len(points) < 2:
        return True, len(points), None
    k = points[0].dim
    best = 1
    worst = None
    for a, b in itertools.combinations(points, 2):
        X = linalg.intersection(F, a.basis, b.basis)
        if X.shape[0] != k - 1:
            continue
        Y = linalg.row_space(F, np.vstack([a.basis, b.basis]))
        on = _members_on_line(F, points, X, Y)
        if len(on) > best:
            best = len(on)
            worst = [points[t].id for t in on]
    return best <= 2, best, worst


def verify_projective_cap(F: FieldSpec, vectors: np.ndarray,
                          budget: int = TRIPLE_BUDGET) -> Tuple[bool, Optional[List[int]]]:
    """True iff no three of the canonical points are collinear; else a collinear triple."""
    if len(vectors) and hasattr(vectors[0], "as_array"):
        vectors = np.stack([v.as_array() for v in vectors])
    vectors = np.asarray(vectors, dtype=np.int64)
    N = vectors.shape[0]
    needed = N * (N - 1) // 2 * (F.q - 1)
    if needed > budget:
        raise BudgetExceeded("point pairs for the projective cap check", needed, budget)
    index = {key: i for i, key in enumerate(linalg.row_keys(vectors))}
    scalars = np.arange(1, F.q, dtype=np.int64)
    for i in range(N - 1):
        rest = vectors[i + 1:]
        combos = F.add(vectors[i][None, None, :], F.mul(scalars[:, None, None], rest[None, :, :]))
        combos = linalg.canonicalize_rows(F, combos.reshape(-1, vectors.shape[1]))
        for t, key in enumerate(linalg.row_keys(combos)):
            third = index.get(key)
            if third is not None:
                j = i + 1 + t % rest.shape[0]
                return False, sorted([i, j, third])
    return True, None


def check_family(fam: CapFamily, truncated: bool = False) -> Dict[str, Any]:
    """Run the three cap checks on a family; polar cap ⇒ Grassmann cap ⇒ projective cap.

    Members whose index sets differ in one pair meet in a (k-1)-space.  For
    k = n that makes them collinear on a conic line, so the polar cap
    property is only expected when k < n; ``collinear_pairs`` lists the
    offending pairs.
    """
    spec = fam.spec
    points = fam.subspaces(truncated)
    k = points[0].dim
    ctx = GrassCtx.from_params(spec.n, k, spec.q)
    polar_max, polar_line = verify_polar_cap(ctx, points)
    grass_ok, grass_max, _ = verify_grassmann_cap(fam.field, points)
    system = cap_embedding(fam, truncated)
    proj_ok, triple = verify_projective_cap(fam.field, system.points)
    totally_singular = all(is_totally_singular(ctx.polar, p.basis) for p in points)
    return {
        "k": k,
        "members": len(points),
        "totally_singular": totally_singular,
        "polar_max_incidence": polar_max,
        "polar_cap_ok": polar_max <= 1,
        "polar_cap_expected": k < spec.n,
        "collinear_pairs": collinear_pairs(ctx, points),
        "polar_violation": polar_line,
        "grassmann_cap_ok": grass_ok,
        "grassmann_max_incidence": grass_max,
        "projective_cap_ok": proj_ok,
        "projective_violation": triple,
        "min_distance": min_pair_distance(fam.field, points) if len(points) > 1 else None,
    }
