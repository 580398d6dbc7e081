"""Quadratic forms over GF(q), their polar forms, and totally singular subspaces."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from config import DELTA_POINT_CAP
from errors import BudgetExceeded, DimMismatch
from geometry import linalg
from geometry.field import FieldSpec

logger = logging.getLogger("ogc.quadform")


@dataclass(frozen=True, eq=False)
class QuadForm:
    """η(x) = Σ_{i<=j} a_ij x_i x_j, stored as an upper-triangular dim x dim array."""
    field: FieldSpec
    dim: int
    coeffs: np.ndarray
    name: str = ""

    def __repr__(self) -> str:
        return "QuadForm({}, dim={}, {})".format(self.name or "custom", self.dim, self.field)


def monomials(dim: int) -> List[Tuple[int, int]]:
    """Monomial order of coefficient vectors: (i, j), i <= j, lexicographic."""
    return [(i, j) for i in range(dim) for j in range(i, dim)]


def from_coefficients(F: FieldSpec, dim: int, vec, name: str = "") -> QuadForm:
    vec = np.asarray(vec, dtype=np.int64)
    mons = monomials(dim)
    if vec.shape != (len(mons),):
        raise DimMismatch("{} coefficients needed for dim {}, got {}".format(len(mons), dim, vec.shape))
    A = np.zeros((dim, dim), dtype=np.int64)
    for t, (i, j) in enumerate(mons):
        A[i, j] = vec[t]
    return QuadForm(field=F, dim=dim, coeffs=A, name=name)


def coefficient_vector(form: QuadForm) -> np.ndarray:
    return np.array([form.coeffs[i, j] for i, j in monomials(form.dim)], dtype=np.int64)


def parabolic_form(F: FieldSpec, n: int) -> QuadForm:
    """Σ_{i=1..n} x_i x_{n+i} + x_{2n+1}^2 on GF(q)^{2n+1}."""
    A = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.int64)
    for i in range(n):
        A[i, n + i] = 1
    A[2 * n, 2 * n] = 1
    return QuadForm(field=F, dim=2 * n + 1, coeffs=A, name="parabolic")


def hyperbolic_form(F: FieldSpec, m: int) -> QuadForm:
    """Σ_{i=1..m} x_i x_{m+i} on GF(q)^{2m}."""
    A = np.zeros((2 * m, 2 * m), dtype=np.int64)
    for i in range(m):
        A[i, m + i] = 1
    return QuadForm(field=F, dim=2 * m, coeffs=A, name="hyperbolic")


def evaluate(form: QuadForm, x) -> np.ndarray:
    """η at x, or at every row of a (..., dim) array."""
    F = form.field
    x = np.asarray(x, dtype=np.int64)
    if x.shape[-1] != form.dim:
        raise DimMismatch("vector length {} != form dimension {}".format(x.shape[-1], form.dim))
    scalar = x.ndim == 1
    if F.e == 1:
        out = (np.einsum("...i,ij,...j->...", x, form.coeffs, x)) % F.p
    else:
        out = np.zeros(x.shape[:-1], dtype=np.int64)
        for i, j in zip(*np.nonzero(form.coeffs)):
            out = F.add(out, F.mul(form.coeffs[i, j], F.mul(x[..., i], x[..., j])))
    return int(out) if scalar else out


@dataclass(frozen=True, eq=False)
class PolarCtx:
    """A form with its polar bilinear form f(x,y) = η(x+y) - η(x) - η(y).

    ``gram`` is the symmetric matrix of f: A + A^T, with 2a_ii on the diagonal.
    """
    form: QuadForm
    gram: np.ndarray

    @property
    def field(self) -> FieldSpec:
        return self.form.field

    @property
    def dim(self) -> int:
        return self.form.dim


def polar_ctx(form: QuadForm) -> PolarCtx:
    return PolarCtx(form=form, gram=form.field.add(form.coeffs, form.coeffs.T))


def polar(ctx: PolarCtx, x, y):
    """f(x, y); x and y may be stacks of row vectors (result is then a matrix)."""
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape[-1] != ctx.dim or y.shape[-1] != ctx.dim:
        raise DimMismatch("vectors must have length {}".format(ctx.dim))
    F = ctx.field
    out = F.matmul(F.matmul(np.atleast_2d(x), ctx.gram), np.atleast_2d(y).T)
    if x.ndim == 1 and y.ndim == 1:
        return int(out[0, 0])
    return out


def perp(ctx: PolarCtx, s) -> np.ndarray:
    """RREF basis of {v : f(v, u) = 0 for all u in s}."""
    F = ctx.field
    s = linalg.as_matrix(s)
    return linalg.row_space(F, linalg.kernel(F, F.matmul(s, ctx.gram)))


def radical(ctx: PolarCtx) -> np.ndarray:
    """Radical of the polar form (perp of the whole space)."""
    return linalg.row_space(ctx.field, linalg.kernel(ctx.field, ctx.gram))


def is_totally_singular(ctx: PolarCtx, s) -> bool:
    """η vanishes on every basis vector and f on every basis pair."""
    s = linalg.as_matrix(s)
    if np.any(evaluate(ctx.form, s) != 0):
        return False
    return not np.any(polar(ctx, s, s))


def singular_points(ctx: PolarCtx) -> np.ndarray:
    """Canonical points of PG(dim-1, q) on the quadric, sorted."""
    pts = linalg.projective_points(ctx.field, ctx.dim)
    return pts[evaluate(ctx.form, pts) == 0]


def totally_singular_subspaces(ctx: PolarCtx, k: int, cap: int = DELTA_POINT_CAP,
                               points: Optional[np.ndarray] = None) -> np.ndarray:
    """All totally singular k-subspaces as a sorted (count, k, dim) stack of RREF bases.

    Level j+1 is reached from level j by adjoining, to each U, the singular
    points orthogonal to U that lie outside it.
    """
    F = ctx.field
    if points is None:
        points = singular_points(ctx)
    level = points[:, None, :].copy()
    logger.debug("level 1: %d singular points", level.shape[0])
    for j in range(1, k):
        grams = F.matmul(points, ctx.gram)              # f(p, .) rows
        found = []
        for U in level:
            pivots = [int(np.nonzero(row)[0][0]) for row in U]
            orth = ~np.any(F.matmul(grams, U.T), axis=1)
            cand = linalg.reduce_against(F, U, pivots, points[orth])
            cand = cand[np.any(cand, axis=1)]
            if cand.shape[0] == 0:
                continue
            cand = linalg.unique_stack(linalg.canonicalize_rows(F, cand))
            ext = linalg.extend_rref(F, U, pivots, cand)
            found.append(ext)
        if not found:
            return np.zeros((0, j + 1, ctx.dim), dtype=np.int64)
        level = linalg.unique_stack(np.concatenate(found))
        if level.shape[0] > cap:
            raise BudgetExceeded("totally singular {}-subspaces".format(j + 1), level.shape[0], cap)
        logger.debug("level %d: %d subspaces", j + 1, level.shape[0])
    return level


def kappa(n: int, q: int) -> int:
    """Number of generators of the hyperbolic quadric Q+(2n+1, q): 2(q+1)(q^2+1)...(q^n+1)."""
    out = 2
    for i in range(1, n + 1):
        out *= q ** i + 1
    return out


def generator_count_hyperbolic(F: FieldSpec, n: int) -> int:
    """Enumerated number of (n+1)-dim totally singular subspaces of Q+(2n+1, q)."""
    ctx = polar_ctx(hyperbolic_form(F, n + 1))
    return int(totally_singular_subspaces(ctx, n + 1).shape[0])
