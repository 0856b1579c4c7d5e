"""Dominance geometry in objective space.

All tests work in the minimization convention: a point y is dominated by an
anchor set when it can be written as (anchor region) minus a nonzero
nonnegative vector.  "plain" mode takes the anchors themselves as the
dominating region, "hull" mode their convex hull.  Two tolerances control
every comparison: eq_tol for componentwise slack, strict_tol for the total
improvement that makes dominance strict.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import ObjectiveImage
from .linprog import LpProblem, lp_solve

EQ_TOL = 1e-9
STRICT_TOL = 1e-9

MODES = ("plain", "hull")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


@dataclass(eq=False)
class DominanceWitness:
    """Certificate that y is dominated.

    kind "point": anchor_id names the dominating anchor, point is its vector.
    kind "hull": weights are convex coefficients over anchor ids and point is
    the resulting hull point c with y <= c and a positive total gap.
    """

    kind: str
    point: np.ndarray
    gap: float
    anchor_id: Optional[str] = None
    weights: Optional[dict] = None

    def verify(self, y, eq_tol: float = EQ_TOL, strict_tol: float = STRICT_TOL) -> bool:
        y = np.asarray(y, dtype=float)
        c = np.asarray(self.point, dtype=float)
        if np.any(y > c + eq_tol):
            return False
        return float(np.maximum(c - y, 0.0).sum()) > strict_tol


def _anchor_array(anchors) -> tuple:
    if isinstance(anchors, ObjectiveImage):
        return anchors.values, list(anchors.scenario_ids)
    arr = np.atleast_2d(np.asarray(anchors, dtype=float))
    if arr.shape[0] == 0:
        raise ValueError("anchor set is empty")
    return arr, [str(i) for i in range(arr.shape[0])]


def dominated_by_point_set(
    y,
    anchors,
    anchor_ids: Optional[Sequence[str]] = None,
    eq_tol: float = EQ_TOL,
    strict_tol: float = STRICT_TOL,
) -> Optional[DominanceWitness]:
    """First anchor (in the given order) with y <= z within eq_tol and a gap > strict_tol."""
    y = np.asarray(y, dtype=float)
    z, ids = _anchor_array(anchors)
    if anchor_ids is not None:
        ids = list(anchor_ids)
    ok = np.all(y <= z + eq_tol, axis=1) & ((z - y).max(axis=1) > strict_tol)
    hits = np.flatnonzero(ok)
    if hits.size == 0:
        return None
    j = int(hits[0])
    return DominanceWitness(
        kind="point",
        point=z[j],
        gap=float(np.maximum(z[j] - y, 0.0).sum()),
        anchor_id=ids[j],
    )


def dominated_by_hull(
    y,
    anchors,
    anchor_ids: Optional[Sequence[str]] = None,
    eq_tol: float = EQ_TOL,
    strict_tol: float = STRICT_TOL,
) -> Optional[DominanceWitness]:
    """Hull membership test: maximize sum(c - y) over c in conv(anchors), c >= y.

    Returns a witness iff the restricted region is nonempty and the optimum
    exceeds strict_tol.  The feasibility constraint is exact: any positive
    slack lets a sliver of weight on a far anchor fabricate a gain of order
    slack times the anchor spread, which can cross strict_tol.  eq_tol is
    still honored by the quick rejection bound and by witness re-checks.
    """
    y = np.asarray(y, dtype=float)
    z, ids = _anchor_array(anchors)
    if anchor_ids is not None:
        ids = list(anchor_ids)

    # exact prechecks: the box bound and the total-sum bound are necessary
    if np.any(y > z.max(axis=0) + eq_tol):
        return None
    colsum = z.sum(axis=1)
    if colsum.max() - y.sum() <= strict_tol:
        return None
    # a single dominating anchor settles it without the LP
    point = dominated_by_point_set(y, z, ids, eq_tol=0.0, strict_tol=strict_tol)
    if point is not None:
        point.weights = {point.anchor_id: 1.0}
        return point

    # solver roundoff on c is ~1e-15, so the certificate re-verifies at eq_tol
    lam = _hull_improvement(y, z, 0.0)
    if lam is None:
        return None
    c = z.T @ lam
    gap = float(np.maximum(c - y, 0.0).sum())
    if float(c.sum() - y.sum()) <= strict_tol:
        return None
    weights = {ids[j]: float(lam[j]) for j in range(len(ids)) if lam[j] > 1e-12}
    return DominanceWitness(kind="hull", point=c, gap=gap, weights=weights)


def _hull_improvement(y, z, slack) -> Optional[np.ndarray]:
    """Argmax of sum(c) over conv(z) with c >= y - slack, or None if infeasible."""
    m = z.shape[0]
    problem = LpProblem(
        c=-z.sum(axis=1),
        a_ub=-z.T,
        b_ub=-(y - slack),
        a_eq=np.ones((1, m)),
        b_eq=np.array([1.0]),
    )
    res = lp_solve(problem)
    if res.status != "optimal":
        return None
    return res.x


def image_dominates(a: ObjectiveImage, b: ObjectiveImage, mode: str = "plain",
                    eq_tol: float = EQ_TOL, strict_tol: float = STRICT_TOL) -> Optional[dict]:
    """Does candidate image a dominate candidate image b?

    True when every point of a is dominated (in the chosen mode) by b's
    anchor set; returns the per-scenario witness map then, None otherwise.
    The relation is irreflexive: an image never dominates itself.
    """
    _check_mode(mode)
    test = dominated_by_point_set if mode == "plain" else dominated_by_hull
    witnesses = {}
    for sid, y in a.points():
        w = test(y, b.values, list(b.scenario_ids), eq_tol=eq_tol, strict_tol=strict_tol)
        if w is None:
            return None
        witnesses[sid] = w
    return witnesses


def signed_distance(y, anchors, mode: str = "plain") -> float:
    """Signed max-coordinate distance from y to (anchor region) - R^n_+.

    Negative inside, zero on the boundary.  Plain mode has the closed form
    min over anchors z of max_i (y_i - z_i); hull mode solves the epigraph LP
    over convex weights.
    """
    _check_mode(mode)
    y = np.asarray(y, dtype=float)
    z, _ = _anchor_array(anchors)
    if mode == "plain":
        return float((y - z).max(axis=1).min())
    m = z.shape[0]
    # variables (lambda, t): minimize t with z^T lambda + t >= y, lambda on the simplex
    c = np.zeros(m + 1)
    c[-1] = 1.0
    a_ub = np.hstack([-z.T, -np.ones((z.shape[1], 1))])
    problem = LpProblem(
        c=c,
        a_ub=a_ub,
        b_ub=-y,
        a_eq=np.hstack([np.ones((1, m)), np.zeros((1, 1))]),
        b_eq=np.array([1.0]),
        free=np.array([False] * m + [True]),
    )
    res = lp_solve(problem)
    if res.status != "optimal":  # pragma: no cover - always feasible and bounded
        raise RuntimeError("hull distance LP ended " + res.status)
    return float(res.value)


def is_hyperrectangle(img: ObjectiveImage, eq_tol: float = EQ_TOL) -> Optional[np.ndarray]:
    """Max corner if the image equals the product of its per-coordinate value sets."""
    vals = img.values
    clusters = []
    index_cols = []
    for j in range(vals.shape[1]):
        col = vals[:, j]
        order = np.argsort(col)
        reps = []
        idx = np.empty(col.shape[0], dtype=int)
        for i in order:
            if reps and col[i] - reps[-1] <= eq_tol:
                idx[i] = len(reps) - 1
            else:
                reps.append(col[i])
                idx[i] = len(reps) - 1
        clusters.append(reps)
        index_cols.append(idx)
    combos = {tuple(index_cols[j][i] for j in range(vals.shape[1])) for i in range(vals.shape[0])}
    expected = 1
    for reps in clusters:
        expected *= len(reps)
    if len(combos) != expected:
        return None
    return vals.max(axis=0)
