"""Maximum partial spreads of parabolic quadrics Q(2m, q).

Generators (totally singular m-spaces) are vertices of a disjointness graph;
a partial spread is a clique.  The exact size comes from branch and bound with
a greedy-coloring bound; vertex sets are Python int bitsets.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from config import CLIQUE_VERTEX_CAP
from errors import BudgetExceeded, UsageError
from geometry import linalg
from geometry.field import FieldSpec, field_from_order
from geometry.quadform import parabolic_form, polar_ctx, singular_points, totally_singular_subspaces

logger = logging.getLogger("ogc.spreads")

METHODS = ("exact", "greedy")


@dataclass
class SpreadResult:
    m: int
    q: int
    size: int
    witness: List[np.ndarray]
    exact: bool
    is_spread: bool
    generators: int
    candidates: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "q": self.q,
            "size": self.size,
            "exact": self.exact,
            "is_spread": self.is_spread,
            "generators": self.generators,
            "candidates": self.candidates,
            "witness": [w.tolist() for w in self.witness],
        }


def closed_form_candidates(m: int, q: int) -> Dict[str, int]:
    """Closed forms reported next to a measured ψ_m(q)."""
    return {
        "q^m+1": q ** m + 1,
        "q^(m+1)+1": q ** (m + 1) + 1,
        "q+1": q + 1,
    }


def generators(F: FieldSpec, m: int) -> Tuple[np.ndarray, np.ndarray]:
    """Generators of Q(2m, q) and the quadric's points (both sorted)."""
    ctx = polar_ctx(parabolic_form(F, m))
    pts = singular_points(ctx)
    return totally_singular_subspaces(ctx, m, points=pts), pts


def point_masks(F: FieldSpec, gens: np.ndarray, pts: np.ndarray) -> List[int]:
    """Bitset of quadric points on each generator."""
    lookup = {key: i for i, key in enumerate(linalg.row_keys(pts))}
    masks = []
    for g in gens:
        members = linalg.canonicalize_rows(F, linalg.span_vectors(F, g)[1:])
        mask = 0
        for key in linalg.row_keys(members):
            mask |= 1 << lookup[key]
        masks.append(mask)
    return masks


def disjointness_graph(masks: List[int]) -> List[int]:
    adj = [0] * len(masks)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if masks[i] & masks[j] == 0:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def greedy_clique(adj: List[int]) -> List[int]:
    """Maximal clique taking vertices in index order."""
    clique = []  # type: List[int]
    cand = (1 << len(adj)) - 1
    while cand:
        v = (cand & -cand).bit_length() - 1
        clique.append(v)
        cand &= adj[v]
    return clique


def _color_classes(adj: List[int], P: int) -> Tuple[List[int], List[int]]:
    """Greedy coloring of P; vertices in color order with their color numbers."""
    order = []  # type: List[int]
    colors = []  # type: List[int]
    uncolored = P
    color = 0
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~(1 << v) & ~adj[v]
            uncolored &= ~(1 << v)
            order.append(v)
            colors.append(color)
    return order, colors


def max_clique(adj: List[int], initial: List[int] = None) -> List[int]:
    """Exact maximum clique (branch and bound, coloring bound)."""
    best = list(initial or [])

    def expand(R: List[int], P: int) -> None:
        nonlocal best
        order, colors = _color_classes(adj, P)
        for v, c in zip(reversed(order), reversed(colors)):
            if len(R) + c <= len(best):
                return
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << len(adj)) - 1)
    return sorted(best)


def is_partial_spread(F: FieldSpec, witness: List[np.ndarray]) -> bool:
    for i in range(len(witness)):
        for j in range(i + 1, len(witness)):
            if linalg.intersection_dim(F, witness[i], witness[j]) != 0:
                return False
    return True


def max_partial_spread(m: int, q: int, method: str = "exact",
                       cap: int = CLIQUE_VERTEX_CAP) -> SpreadResult:
    """Largest set of pairwise disjoint generators of Q(2m, q) found by ``method``."""
    if method not in METHODS:
        raise UsageError("unknown method {!r}; expected exact or greedy".format(method))
    if m < 1:
        raise UsageError("m must be positive, got {}".format(m))
    F = field_from_order(q)
    gens, pts = generators(F, m)
    if method == "exact" and gens.shape[0] > cap:
        raise BudgetExceeded("generators of Q({}, {})".format(2 * m, q), gens.shape[0], cap)

    adj = disjointness_graph(point_masks(F, gens, pts))
    clique = greedy_clique(adj)
    if method == "exact":
        clique = max_clique(adj, clique)
    logger.debug("Q(%d,%d): %d generators, %s partial spread of size %d",
                 2 * m, q, gens.shape[0], method, len(clique))

    per_generator = (q ** m - 1) // (q - 1)
    return SpreadResult(
        m=m, q=q, size=len(clique),
        witness=[gens[i] for i in clique],
        exact=method == "exact",
        is_spread=len(clique) * per_generator == pts.shape[0],
        generators=int(gens.shape[0]),
        candidates=closed_form_candidates(m, q),
    )


def psi(m: int, q: int, cap: int = CLIQUE_VERTEX_CAP) -> int:
    """ψ_m(q) by exact search."""
    return max_partial_spread(m, q, "exact", cap).size
