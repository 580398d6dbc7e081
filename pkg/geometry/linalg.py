"""Dense linear algebra over GF(q).

Matrices are numpy int64 arrays of element indices; every function takes the
owning :class:`~geometry.field.FieldSpec` as its first argument.  Wedge
coordinates are indexed by k-subsets of the columns in lexicographic order.
"""

import itertools
import logging
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from errors import DimMismatch, RankDeficient, ZeroVector
from geometry.field import FieldSpec
from schema import ProjVec

logger = logging.getLogger("ogc.linalg")


def as_matrix(m) -> np.ndarray:
    arr = np.array(m, dtype=np.int64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise DimMismatch("expected a matrix, got shape {}".format(arr.shape))
    return arr


def rref(F: FieldSpec, m) -> Tuple[np.ndarray, int, List[int]]:
    """Reduced row echelon form, rank and pivot columns.

    The returned matrix keeps the input shape; zero rows sit at the bottom.
    """
    R = as_matrix(m).copy()
    rows, cols = R.shape
    pivots = []  # type: List[int]
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        lead = int(R[r, c])
        if lead != 1:
            R[r] = F.mul(R[r], F.inv(lead))
        factors = R[:, c].copy()
        factors[r] = 0
        if factors.any():
            R = F.sub(R, F.mul(factors[:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(F: FieldSpec, m) -> int:
    return rref(F, m)[1]


def is_rref(F: FieldSpec, m) -> bool:
    m = as_matrix(m)
    return bool(np.array_equal(rref(F, m)[0], m))


def row_space(F: FieldSpec, m) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the row space of m."""
    R, r, _ = rref(F, m)
    return R[:r]


def kernel(F: FieldSpec, m) -> np.ndarray:
    """Basis of the right null space, one vector per row."""
    R, r, pivots = rref(F, m)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, pc in enumerate(pivots):
            K[t, pc] = F.neg(int(R[i, f]))
    return K


def intersection(F: FieldSpec, a, b) -> np.ndarray:
    """RREF basis of <a> ∩ <b> (rows of a and b must be independent)."""
    a = as_matrix(a)
    b = as_matrix(b)
    coef = kernel(F, np.vstack([a, F.neg(b)]).T)
    if coef.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64)
    return row_space(F, F.matmul(coef[:, :a.shape[0]], a))


def intersection_dim(F: FieldSpec, a, b) -> int:
    """dim(<a> ∩ <b>) by the dimension formula."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[1]:
        raise DimMismatch("ambient dimensions {} and {} differ".format(a.shape[1], b.shape[1]))
    return rank(F, a) + rank(F, b) - rank(F, np.vstack([a, b]))


# ------------------------------------------------------------------
# Projective normalization
# ------------------------------------------------------------------

def canonicalize_rows(F: FieldSpec, V) -> np.ndarray:
    """Scale every row so its first nonzero entry is 1.  Zero rows stay zero."""
    V = np.asarray(V, dtype=np.int64)
    flat = V.reshape(-1, V.shape[-1])
    nz = flat != 0
    lead = flat[np.arange(flat.shape[0]), nz.argmax(axis=1)]
    lead = np.where(nz.any(axis=1), lead, 1)
    return F.mul(flat, F.inv(lead)[:, None]).reshape(V.shape)


def canonical_projective(F: FieldSpec, v) -> ProjVec:
    v = np.asarray(v, dtype=np.int64)
    if not v.any():
        raise ZeroVector("the zero vector is not a projective point")
    return ProjVec(tuple(int(c) for c in canonicalize_rows(F, v[None, :])[0]))


def row_keys(arr: np.ndarray) -> List[bytes]:
    """Hashable keys for the leading-axis entries of an integer array."""
    flat = np.ascontiguousarray(arr, dtype=np.uint16).reshape(arr.shape[0], -1)
    return [row.tobytes() for row in flat]


def unique_stack(arr: np.ndarray) -> np.ndarray:
    """Sorted, deduplicated stack of matrices (or rows)."""
    if arr.shape[0] == 0:
        return arr
    flat = arr.reshape(arr.shape[0], -1)
    return np.unique(flat, axis=0).reshape((-1,) + arr.shape[1:])


# ------------------------------------------------------------------
# Enumeration helpers
# ------------------------------------------------------------------

def all_vectors(F: FieldSpec, d: int, start: int = 0, stop: int = None) -> np.ndarray:
    """Vectors of GF(q)^d in lexicographic order (last coordinate fastest)."""
    total = F.q ** d
    stop = total if stop is None else min(stop, total)
    if d == 0:
        return np.zeros((stop - start, 0), dtype=np.int64)
    idx = np.arange(start, stop, dtype=np.int64)
    return np.stack(np.unravel_index(idx, (F.q,) * d), axis=1).astype(np.int64)


def count_projective(q: int, m: int) -> int:
    return (q ** m - 1) // (q - 1)


def iter_projective_points(F: FieldSpec, m: int, chunk: int) -> Iterator[np.ndarray]:
    """Canonical points of PG(m-1, q) in lexicographic order, ``chunk`` rows at a time."""
    for lead in range(m - 1, -1, -1):
        t = m - 1 - lead
        total = F.q ** t
        for start in range(0, total, chunk):
            tail = all_vectors(F, t, start, start + chunk)
            block = np.zeros((tail.shape[0], m), dtype=np.int64)
            block[:, lead] = 1
            block[:, lead + 1:] = tail
            yield block


def projective_points(F: FieldSpec, m: int) -> np.ndarray:
    """All canonical points of PG(m-1, q), sorted lexicographically."""
    return np.concatenate(list(iter_projective_points(F, m, F.q ** max(m - 1, 0))))


def span_vectors(F: FieldSpec, b) -> np.ndarray:
    """Every vector of the row span of b (q^rows of them, with repeats if b is singular)."""
    b = as_matrix(b)
    return F.matmul(all_vectors(F, b.shape[0]), b)


def subspaces(F: FieldSpec, m: int, d: int) -> np.ndarray:
    """All d-subspaces of GF(q)^m as a (count, d, m) stack of RREF bases."""
    blocks = []
    for piv in itertools.combinations(range(m), d):
        free = [(i, j) for i in range(d) for j in range(piv[i] + 1, m) if j not in piv]
        fills = all_vectors(F, len(free))
        block = np.zeros((fills.shape[0], d, m), dtype=np.int64)
        for i, c in enumerate(piv):
            block[:, i, c] = 1
        for t, (i, j) in enumerate(free):
            block[:, i, j] = fills[:, t]
        blocks.append(block)
    if not blocks:
        return np.zeros((0, d, m), dtype=np.int64)
    return np.concatenate(blocks)


def reduce_against(F: FieldSpec, U: np.ndarray, pivots: Sequence[int], W: np.ndarray) -> np.ndarray:
    """Clear the pivot columns of the RREF basis U from every row of W."""
    if len(pivots) == 0:
        return np.asarray(W, dtype=np.int64)
    return F.sub(W, F.matmul(W[:, list(pivots)], U))


def extend_rref(F: FieldSpec, U: np.ndarray, pivots: Sequence[int], W: np.ndarray) -> np.ndarray:
    """RREF bases of <U, w> for each canonical row w of W reduced against U.

    Returns a (len(W), k+1, m) stack.  Rows of W must be nonzero, canonical and
    zero on the pivot columns of U.
    """
    k, m = U.shape
    P = W.shape[0]
    lead = (W != 0).argmax(axis=1)
    coef = U[:, lead].T                                   # (P, k)
    rows = F.sub(U[None, :, :], F.mul(coef[:, :, None], W[:, None, :]))
    stack = np.concatenate([rows, W[:, None, :]], axis=1)
    keys = np.concatenate([np.broadcast_to(np.asarray(pivots, dtype=np.int64), (P, k)),
                           lead[:, None]], axis=1)
    order = np.argsort(keys, axis=1)
    return np.take_along_axis(stack, order[:, :, None], axis=1)


# ------------------------------------------------------------------
# Wedge (Plücker) coordinates
# ------------------------------------------------------------------

def k_subsets(m: int, k: int) -> np.ndarray:
    """k-subsets of range(m) in lexicographic order, one per row."""
    return np.array(list(itertools.combinations(range(m), k)), dtype=np.int64).reshape(-1, k)


def permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def integer_minors(b, cols) -> np.ndarray:
    """Exact k x k minors of an integer matrix b over the integers.

    ``cols`` holds one k-tuple of column indices per row; the Leibniz
    expansion is vectorized across those column sets.
    """
    b = np.asarray(b, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64).reshape(-1, b.shape[0])
    k = b.shape[0]
    out = np.zeros(cols.shape[0], dtype=np.int64)
    for perm in itertools.permutations(range(k)):
        term = np.ones(cols.shape[0], dtype=np.int64)
        for i in range(k):
            term = term * b[i, cols[:, perm[i]]]
        out += permutation_sign(perm) * term
    return out


def wedge_coordinates(F: FieldSpec, b) -> np.ndarray:
    """Raw k x k minors of b (or of each matrix of a (P, k, m) stack).

    No projective normalization; the minors are computed by the Leibniz
    expansion, vectorized across column subsets and matrices.
    """
    b = np.asarray(b, dtype=np.int64)
    single = b.ndim == 2
    if single:
        b = b[None]
    P, k, m = b.shape
    cols = k_subsets(m, k)
    out = np.zeros((P, cols.shape[0]), dtype=np.int64)
    for perm in itertools.permutations(range(k)):
        term = np.ones((P, cols.shape[0]), dtype=np.int64)
        for i in range(k):
            term = F.mul(term, b[:, i, cols[:, perm[i]]])
        out = F.add(out, term) if permutation_sign(perm) > 0 else F.sub(out, term)
    return out[0] if single else out


def wedge_minors(F: FieldSpec, b) -> ProjVec:
    """Canonical Plücker point of the row space of b."""
    b = as_matrix(b)
    if rank(F, b) != b.shape[0]:
        raise RankDeficient("basis of {} rows has rank {}".format(b.shape[0], rank(F, b)))
    return canonical_projective(F, wedge_coordinates(F, b))


def embed_stack(F: FieldSpec, bases: np.ndarray) -> np.ndarray:
    """Canonical Plücker coordinate rows for a (P, k, m) stack of full-rank bases."""
    return canonicalize_rows(F, wedge_coordinates(F, bases))
