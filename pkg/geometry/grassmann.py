"""Orthogonal Grassmannians Δ_k of the parabolic quadric Q(2n, q).

Points are totally singular k-subspaces of GF(q)^{2n+1}, each held as its RREF
basis; ids follow the sorted order of those bases.  Lines are the interior
lines ℓ_{X,Y} (k < n) or the conic lines ℓ_X (k = n).
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

import db
from config import DELTA_POINT_CAP
from errors import BudgetExceeded, UsageError, VerificationFailed
from geometry import linalg
from geometry.field import FieldSpec, field_from_order
from geometry.quadform import (
    PolarCtx,
    QuadForm,
    is_totally_singular,
    parabolic_form,
    polar_ctx,
    totally_singular_subspaces,
)
from schema import ProjSystem

logger = logging.getLogger("ogc.grassmann")


@dataclass(frozen=True, eq=False)
class GrassCtx:
    n: int
    k: int
    field: FieldSpec
    form: QuadForm
    polar: PolarCtx

    @classmethod
    def from_params(cls, n: int, k: int, q: int) -> "GrassCtx":
        if n < 1 or not 1 <= k <= n:
            raise UsageError("need 1 <= k <= n, got n={} k={}".format(n, k))
        F = field_from_order(q)
        form = parabolic_form(F, n)
        return cls(n=n, k=k, field=F, form=form, polar=polar_ctx(form))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    def with_k(self, k: int) -> "GrassCtx":
        return GrassCtx(n=self.n, k=k, field=self.field, form=self.form, polar=self.polar)

    def __repr__(self) -> str:
        return "Delta_{}(n={}, q={})".format(self.k, self.n, self.q)


class Subspace:
    """A k-subspace given by its RREF basis; equality is equality of bases."""

    __slots__ = ("basis", "id", "_key")

    def __init__(self, basis: np.ndarray, id: int = -1) -> None:
        self.basis = np.asarray(basis, dtype=np.int64)
        self.id = id
        self._key = np.ascontiguousarray(self.basis, dtype=np.uint16).tobytes()

    @classmethod
    def from_rows(cls, F: FieldSpec, rows) -> "Subspace":
        return cls(linalg.row_space(F, rows))

    @property
    def key(self) -> bytes:
        return self._key

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return "Subspace(id={}, basis={})".format(self.id, self.basis.tolist())


@dataclass
class DeltaLine:
    kind: str           # "interior" or "conic"
    points: Tuple[int, ...]


def delta_size(n: int, k: int, q: int) -> int:
    """Π_{i=0}^{k-1} (q^{2(n-i)} - 1) / (q^{i+1} - 1)."""
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (2 * (n - i)) - 1
        den *= q ** (i + 1) - 1
    return num // den


def stack(points: List[Subspace]) -> np.ndarray:
    if not points:
        return np.zeros((0, 0, 0), dtype=np.int64)
    return np.stack([p.basis for p in points])


def enumerate_delta_stack(ctx: GrassCtx, cap: int = DELTA_POINT_CAP) -> np.ndarray:
    expected = delta_size(ctx.n, ctx.k, ctx.q)
    if expected > cap:
        raise BudgetExceeded("points of {}".format(ctx), expected, cap)
    return totally_singular_subspaces(ctx.polar, ctx.k, cap=cap)


def enumerate_delta(ctx: GrassCtx, cap: int = DELTA_POINT_CAP) -> List[Subspace]:
    """All totally singular k-subspaces, sorted by basis, with ids 0..N-1."""
    bases = enumerate_delta_stack(ctx, cap)
    logger.debug("%r: %d points", ctx, bases.shape[0])
    return [Subspace(b, i) for i, b in enumerate(bases)]


def index_points(points: List[Subspace]) -> Dict[bytes, int]:
    return {p.key: p.id for p in points}


def _local_incidence(F: FieldSpec, k: int) -> Tuple[np.ndarray, List[List[int]]]:
    """k-subspaces of GF(q)^{k+1} and, per (k-1)-subspace, the k-subspaces containing it."""
    tops = linalg.subspaces(F, k + 1, k)
    groups = []
    for low in linalg.subspaces(F, k + 1, k - 1):
        groups.append([t for t, top in enumerate(tops)
                       if linalg.rank(F, np.vstack([low, top])) == k])
    return tops, groups


def enumerate_lines(ctx: GrassCtx, points: List[Subspace],
                    cap: int = DELTA_POINT_CAP) -> List[DeltaLine]:
    """All lines of Δ_k, each as the sorted ids of its q+1 points."""
    F = ctx.field
    lookup = index_points(points)
    lines = []  # type: List[DeltaLine]

    if ctx.k < ctx.n:
        tops, groups = _local_incidence(F, ctx.k)
        for Y in enumerate_delta_stack(ctx.with_k(ctx.k + 1), cap):
            ids = [lookup[Subspace.from_rows(F, F.matmul(c, Y)).key] for c in tops]
            for group in groups:
                lines.append(DeltaLine("interior", tuple(sorted(ids[t] for t in group))))
    else:
        lows = linalg.subspaces(F, ctx.k, ctx.k - 1)
        pencils = {}  # type: Dict[bytes, List[int]]
        for p in points:
            for c in lows:
                key = Subspace.from_rows(F, F.matmul(c, p.basis)).key
                pencils.setdefault(key, []).append(p.id)
        for key in sorted(pencils):
            lines.append(DeltaLine("conic", tuple(sorted(pencils[key]))))

    bad = [ln for ln in lines if len(ln.points) != ctx.q + 1]
    if bad:
        raise VerificationFailed("{} lines of {} do not have q+1 points".format(len(bad), ctx),
                                 {"example": list(bad[0].points)})
    logger.debug("%r: %d lines", ctx, len(lines))
    return lines


def collinear(ctx: GrassCtx, a: Subspace, b: Subspace) -> bool:
    """True iff a and b are distinct points on a common line of Δ_k."""
    if a == b:
        raise UsageError("collinearity is defined for distinct points")
    F = ctx.field
    if linalg.intersection_dim(F, a.basis, b.basis) != ctx.k - 1:
        return False
    if ctx.k == ctx.n:
        return True
    return is_totally_singular(ctx.polar, linalg.row_space(F, np.vstack([a.basis, b.basis])))


def embed(ctx: GrassCtx, points: List[Subspace]) -> ProjSystem:
    """Grassmann embedding: canonical Plücker coordinates of every point."""
    F = ctx.field
    coords = linalg.embed_stack(F, stack(points))
    if linalg.unique_stack(coords).shape[0] != coords.shape[0]:
        raise VerificationFailed("Plücker coordinates of {} are not injective".format(ctx))
    return ProjSystem(q=ctx.q, ambient_dim=coords.shape[1], points=coords,
                      label="eps_gr({!r})".format(ctx))


def line_embedding_ok(ctx: GrassCtx, line: DeltaLine, system: ProjSystem) -> bool:
    """Interior lines span a projective line; conic lines have no three collinear images."""
    rows = system.points[list(line.points)]
    if line.kind == "interior":
        return linalg.rank(ctx.field, rows) == 2
    for trip in itertools.combinations(range(rows.shape[0]), 3):
        if linalg.rank(ctx.field, rows[list(trip)]) < 3:
            return False
    return True


def load_or_enumerate(ctx: GrassCtx, use_cache: bool = True,
                      cap: int = DELTA_POINT_CAP) -> Tuple[List[Subspace], bool]:
    """Enumerate Δ_k through the SQLite cache.  Returns (points, cache_hit).

    With ``use_cache`` off the points are recomputed and, when a cached copy
    exists, its checksum must agree with the fresh one.
    """
    cached = db.load_enumeration(ctx.n, ctx.k, ctx.q)
    if use_cache and cached is not None:
        return [Subspace(b, i) for i, b in enumerate(cached)], True

    bases = enumerate_delta_stack(ctx, cap)
    if cached is not None:
        if db.stack_checksum(cached) != db.stack_checksum(bases):
            raise VerificationFailed("cached enumeration of {} differs from a fresh one".format(ctx))
    else:
        db.store_enumeration(ctx.n, ctx.k, ctx.q, bases)
    return [Subspace(b, i) for i, b in enumerate(bases)], False
