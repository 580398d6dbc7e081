"""Sign matrices of truncated caps: Hadamard property, Sylvester recursion,
symmetric designs and first-order Reed-Muller codes.

Subsets of M_r = {m_1..m_r} are indexed by bitmask with m_i as bit i-1; this
is exactly the recursive order in which every subset not containing m_r
precedes every subset that does.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Sequence, Set

import numpy as np

from analyzers.caps import CapFamily
from analyzers.codes import LinearCode
from config import MAX_HADAMARD_R
from errors import BudgetExceeded, NotHadamard, NotTruncated, UsageError
from geometry import linalg
from geometry.field import field_new

logger = logging.getLogger("ogc.hadamard")

BASE = np.array([[1, 1], [1, -1]], dtype=np.int64)


@dataclass
class SignMatrix:
    r: int
    entries: np.ndarray
    source: str = ""

    @property
    def order(self) -> int:
        return int(self.entries.shape[0])

    @property
    def index_order(self) -> List[FrozenSet[int]]:
        """Row/column labels: subsets of {1..r} (i stands for m_i)."""
        return [frozenset(i + 1 for i in range(self.r) if mask >> i & 1) for mask in range(2 ** self.r)]

    def to_dict(self) -> Dict[str, Any]:
        return {"r": self.r, "order": self.order, "source": self.source, "entries": self.entries.tolist()}


@dataclass
class XiVector:
    S: FrozenSet[int]
    components: Dict[FrozenSet[int], int]   # keyed by T ∩ M_r


@dataclass
class DesignResult:
    v: int
    k: int
    lam: int
    is_2design: bool
    symmetric: bool
    degenerate: bool
    label: str

    def to_dict(self) -> Dict[str, Any]:
        return {"v": self.v, "k": self.k, "lambda": self.lam, "is_2design": self.is_2design,
                "symmetric": self.symmetric, "degenerate": self.degenerate, "label": self.label}


def _check_r(r: int, max_r: int = MAX_HADAMARD_R) -> None:
    if r < 1:
        raise UsageError("r must be at least 1, got {}".format(r))
    if r > max_r:
        raise BudgetExceeded("sign matrix rank r", r, max_r)


# ------------------------------------------------------------------
# Subset order
# ------------------------------------------------------------------

def subset_index(S: Iterable[int], M: Sequence[int]) -> int:
    """Position of S ⊆ M in the recursive order."""
    pos = {m: i for i, m in enumerate(M)}
    return sum(1 << pos[m] for m in S)


def subset_order_recursive(r: int) -> List[FrozenSet[int]]:
    """∅ < {1}, then each level lists the previous order followed by it with r added."""
    order = [frozenset()]  # type: List[FrozenSet[int]]
    for i in range(1, r + 1):
        order = order + [s | {i} for s in order]
    return order


# ------------------------------------------------------------------
# Signs from cap members
# ------------------------------------------------------------------

def _transversals(fam: CapFamily) -> List[Sequence[int]]:
    """𝒯_r: one of j_i or m_i for each pair, in pair order."""
    spec = fam.spec
    choices = [(j, m) for (j, _), m in zip(spec.pairs, spec.M)]
    return list(itertools.product(*choices))


def _partner(i: int, n: int) -> int:
    return i + n if i <= n else i - n


def _columns(fam: CapFamily, T: Sequence[int]) -> List[int]:
    """0-based columns of e_{T,T'} (and 2n+1 for table 2) in wedge order."""
    n = fam.spec.n
    cols = [t - 1 for t in T] + [_partner(t, n) - 1 for t in T]
    if fam.spec.table == 2:
        cols.append(2 * n)
    return cols


def _integer_member(fam: CapFamily, mask: int) -> np.ndarray:
    rows = fam.truncated[mask]
    return np.where(rows == fam.field.neg(1), -1, rows)


def xi_from_cap(fam: CapFamily, mask: int) -> XiVector:
    """σ_S(T) for every T in 𝒯_r: integer minors of B_S on the columns of e_{T,T'}."""
    if fam.truncated is None:
        raise NotTruncated("truncate the family before extracting signs")
    spec = fam.spec
    B = _integer_member(fam, mask)
    M = set(spec.M)
    transversals = _transversals(fam)
    minors = linalg.integer_minors(B, [_columns(fam, T) for T in transversals])
    components = {}
    for T, minor in zip(transversals, minors.tolist()):
        if minor not in (1, -1):
            raise NotHadamard("minor {} of member {} on T={} is not a sign".format(minor, mask, list(T)))
        components[frozenset(t for t in T if t in M)] = minor
    return XiVector(S=spec.subset(mask), components=components)


def xi_matches_field(fam: CapFamily, mask: int) -> bool:
    """The integer signs reduce to the GF(q) wedge coordinates of the same member."""
    F = fam.field
    B = fam.truncated[mask]
    xi = xi_from_cap(fam, mask)
    for T in _transversals(fam):
        cols = _columns(fam, T)
        raw = int(linalg.wedge_coordinates(F, B[:, cols])[0])
        sign = xi.components[frozenset(t for t in T if t in fam.spec.M)]
        if raw != (1 if sign > 0 else F.neg(1)):
            return False
    return True


def a_matrix_from_cap(fam: CapFamily) -> SignMatrix:
    """Rows R_S: entry at T is σ_S(T) σ_∅(T)."""
    spec = fam.spec
    size = 2 ** spec.r
    base = xi_from_cap(fam, 0).components
    A = np.zeros((size, size), dtype=np.int64)
    for mask in range(size):
        xi = xi_from_cap(fam, mask)
        for TM, sign in xi.components.items():
            A[mask, subset_index(TM, spec.M)] = sign * base[TM]
    return SignMatrix(r=spec.r, entries=A, source="cap(n={}, q={}, J={})".format(spec.n, spec.q, list(spec.J)))


def sigma_empty_ok(fam: CapFamily) -> bool:
    """σ_∅(T) = (-1)^{|T ∩ M_r|}."""
    return all(sign == (-1) ** len(TM) for TM, sign in xi_from_cap(fam, 0).components.items())


# ------------------------------------------------------------------
# Closed forms
# ------------------------------------------------------------------

def a_matrix_formula(r: int, max_r: int = MAX_HADAMARD_R) -> SignMatrix:
    """Entry (S, T) = (-1)^{|S ∩ T|}."""
    _check_r(r, max_r)
    idx = np.arange(2 ** r, dtype=np.int64)
    common = idx[:, None] & idx[None, :]
    parity = np.zeros_like(common)
    for b in range(r):
        parity ^= (common >> b) & 1
    return SignMatrix(r=r, entries=1 - 2 * parity, source="formula")


def sylvester(r: int, max_r: int = MAX_HADAMARD_R) -> SignMatrix:
    _check_r(r, max_r)
    H = np.ones((1, 1), dtype=np.int64)
    for _ in range(r):
        H = np.kron(H, BASE)
    return SignMatrix(r=r, entries=H, source="sylvester")


def is_hadamard(M: SignMatrix) -> bool:
    H = np.asarray(M.entries, dtype=np.int64)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        return False
    if not np.all(np.abs(H) == 1):
        return False
    return bool(np.array_equal(H @ H.T, H.shape[0] * np.eye(H.shape[0], dtype=np.int64)))


def kronecker_blocks_ok(r: int) -> bool:
    """Three blocks of A_r equal A_{r-1}; the bottom-right one equals -A_{r-1}."""
    if r < 2:
        return True
    A = a_matrix_formula(r).entries
    P = a_matrix_formula(r - 1).entries
    h = P.shape[0]
    return (np.array_equal(A[:h, :h], P) and np.array_equal(A[:h, h:], P)
            and np.array_equal(A[h:, :h], P) and np.array_equal(A[h:, h:], -P))


# ------------------------------------------------------------------
# Designs and codes
# ------------------------------------------------------------------

def hadamard_design(M: SignMatrix) -> DesignResult:
    """Drop the all-ones row and column, map -1 to 0 and check the symmetric 2-design."""
    if not is_hadamard(M):
        raise NotHadamard("matrix of order {} is not Hadamard".format(M.order))
    H = M.entries
    if not (np.all(H[0] == 1) and np.all(H[:, 0] == 1)):
        raise NotHadamard("first row and column must be all +1")
    D = (H[1:, 1:] == 1).astype(np.int64)
    v = D.shape[1]
    k = 2 ** (M.r - 1) - 1
    lam = 2 ** (M.r - 2) - 1 if M.r >= 2 else 0
    label = "point-hyperplane design of PG({},2)".format(M.r - 1)
    if v == 0:
        return DesignResult(v=0, k=0, lam=0, is_2design=False, symmetric=False, degenerate=True, label=label)

    blocks_ok = bool(np.all(D.sum(axis=1) == k))
    pairs = D.T @ D
    off = ~np.eye(v, dtype=bool)
    pairs_ok = bool(np.all(pairs[off] == lam)) and bool(np.all(np.diag(pairs) == k))
    symmetric = D.shape[0] == v and bool(np.all((D @ D.T)[off] == lam))
    logger.debug("r=%d: 2-(%d,%d,%d) blocks_ok=%s pairs_ok=%s", M.r, v, k, lam, blocks_ok, pairs_ok)
    return DesignResult(v=v, k=k, lam=lam, is_2design=blocks_ok and pairs_ok,
                        symmetric=symmetric, degenerate=lam <= 0, label=label)


def rm_code(r: int) -> LinearCode:
    """Binary code spanned by the rows of A_r (+1 -> 0, -1 -> 1) and the all-ones word."""
    F = field_new(2)
    A = a_matrix_formula(r).entries
    rows = np.vstack([(A == -1).astype(np.int64), np.ones((1, A.shape[1]), dtype=np.int64)])
    G = linalg.row_space(F, rows)
    return LinearCode(field=F, G=G, label="RM(1,{}) from A_{}".format(r, r))


def rm_oracle(r: int) -> LinearCode:
    """Evaluations of the affine Boolean functions on GF(2)^r, point p at position p."""
    F = field_new(2)
    pts = np.arange(2 ** r, dtype=np.int64)
    coords = np.stack([(pts >> i) & 1 for i in range(r)])
    G = np.vstack([np.ones((1, 2 ** r), dtype=np.int64), coords])
    return LinearCode(field=F, G=G, label="RM(1,{})".format(r))


def codeword_set(code: LinearCode) -> Set[bytes]:
    return set(linalg.row_keys(linalg.span_vectors(code.field, code.G)))


def rm_matches_oracle(r: int) -> bool:
    return codeword_set(rm_code(r)) == codeword_set(rm_oracle(r))


def sign_grid(M: SignMatrix) -> str:
    """One row per line, entries 1 / -1 separated by spaces."""
    return "\n".join(" ".join(str(int(x)) for x in row) for row in M.entries) + "\n"
