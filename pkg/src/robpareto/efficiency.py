"""Efficiency certificates for candidates of a robust multiobjective instance.

classify() labels every candidate under four notions, each defined by the set
that is allowed to dominate:

- robust_efficient: the image points themselves,
- convex_hull_efficient: their convex hull,
- objectivewise_efficient: the single componentwise-max corner,
- set_valued_minimizer: minimality of the max-sense Pareto filter of the
  image under the set order "A below B iff A sits inside B minus the
  punctured nonnegative cone, or A equals B".

Every false label carries a dominator plus per-point witnesses that re-verify
under the geometry operations.  Convex-hull efficiency implies robust
efficiency; classify asserts that nesting on every run.

On instances marked scenario_hull the listed scenarios generate a convex
uncertainty set, the attainable image is the hull of the points, and the
plain notions coincide with their hull counterparts by construction.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Candidate, Instance, ObjectiveImage, SimplexCandidates, candidate_label
from .geometry import EQ_TOL, STRICT_TOL, DominanceWitness, dominated_by_point_set, image_dominates

LABELS = ("robust", "convex_hull", "objectivewise", "set_valued")


@dataclass(eq=False)
class Dominator:
    candidate: Candidate
    witnesses: dict  # scenario id of the dominating image -> DominanceWitness

    @property
    def label(self) -> str:
        return candidate_label(self.candidate)


@dataclass(eq=False)
class CandidateResult:
    candidate: Candidate
    robust_efficient: bool
    convex_hull_efficient: bool
    objectivewise_efficient: bool
    set_valued_minimizer: bool
    dominators: dict  # label name -> Dominator, only for false labels

    @property
    def label(self) -> str:
        return candidate_label(self.candidate)

    def flag(self, kind: str) -> bool:
        return {
            "robust": self.robust_efficient,
            "convex_hull": self.convex_hull_efficient,
            "objectivewise": self.objectivewise_efficient,
            "set_valued": self.set_valued_minimizer,
        }[kind]


@dataclass(eq=False)
class EfficiencyReport:
    instance: Instance
    results: list

    def result_for(self, candidate) -> CandidateResult:
        cand = self.instance.resolve_candidate(candidate)
        for r in self.results:
            if r.candidate == cand:
                return r
        raise KeyError(f"candidate {candidate!r} not in report")

    def efficient(self, kind: str) -> list:
        return [r.candidate for r in self.results if r.flag(kind)]


def pareto_filter_max(img: ObjectiveImage, eq_tol: float = EQ_TOL, strict_tol: float = STRICT_TOL) -> ObjectiveImage:
    """Drop points dominated in the maximization sense (another point >= with a gap)."""
    vals = img.values
    keep = []
    for i in range(vals.shape[0]):
        above = np.all(vals >= vals[i] - eq_tol, axis=1) & ((vals - vals[i]).max(axis=1) > strict_tol)
        if not above.any():
            keep.append(i)
    ids = tuple(img.scenario_ids[i] for i in keep)
    return ObjectiveImage(img.candidate, ids, vals[keep])


def _search_order(candidates) -> list:
    """Dominator scan order: simplex vertices first, then enumeration order.

    Vertex images generate an affine family, which makes them the canonical
    certificates to report when several candidates dominate.
    """
    vertices = []
    rest = []
    for i, c in enumerate(candidates):
        if not isinstance(c, str) and max(c) == 1.0:
            vertices.append((np.argmax(np.asarray(c)), i))
        else:
            rest.append(i)
    vertices.sort()
    return [i for _, i in vertices] + rest


def _plain_pair(vals_a: np.ndarray, vals_b: np.ndarray, eq_tol: float, strict_tol: float) -> bool:
    diff = vals_b[None, :, :] - vals_a[:, None, :]
    ok = np.all(diff >= -eq_tol, axis=2) & (diff.max(axis=2) > strict_tol)
    return bool(ok.any(axis=1).all())


class _Scan:
    """Shared dominance scan over a list of images with cheap necessary prechecks."""

    def __init__(self, images, mode: str, eq_tol: float, strict_tol: float, order):
        self.images = images
        self.mode = mode
        self.eq_tol = eq_tol
        self.strict_tol = strict_tol
        self.order = order
        self.vals = [img.values for img in images]
        self.sup = np.array([v.max(axis=0) for v in self.vals])
        self.maxsum = np.array([v.sum(axis=1).max() for v in self.vals])
        n = self.sup.shape[1]
        # loosest total-sum margin a dominating image must clear in either mode
        self.margin = strict_tol - (n - 1) * eq_tol

    def alive(self, j: int) -> np.ndarray:
        return np.all(self.sup <= self.sup[j] + self.eq_tol, axis=1) & (
            self.maxsum < self.maxsum[j] - self.margin
        )

    def find_dominator(self, j: int) -> Optional[tuple]:
        alive = self.alive(j)
        for i in self.order:
            if i == j or not alive[i]:
                continue
            if self.mode == "plain":
                if not _plain_pair(self.vals[i], self.vals[j], self.eq_tol, self.strict_tol):
                    continue
            w = image_dominates(self.images[i], self.images[j], self.mode,
                                eq_tol=self.eq_tol, strict_tol=self.strict_tol)
            if w is not None:
                return i, w
        return None


def _objectivewise_dominator(j, vals, sup, order, eq_tol, strict_tol) -> Optional[int]:
    corner = sup[j]
    inside = np.all(vals <= corner + eq_tol, axis=(1, 2))
    gapped = np.all((corner - vals).max(axis=2) > strict_tol, axis=1)
    mask = inside & gapped
    for i in order:
        if i != j and mask[i]:
            return i
    return None


def _worker_count(threads: Optional[int]) -> int:
    if threads is not None:
        return max(1, int(threads))
    raw = os.environ.get("ROBPARETO_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def classify(instance: Instance, eq_tol: float = EQ_TOL, strict_tol: float = STRICT_TOL,
             threads: Optional[int] = None) -> EfficiencyReport:
    """Label every candidate, with re-verifiable dominator certificates."""
    cands = instance.candidate_list()
    images = [instance.image(c) for c in cands]
    order = _search_order(cands)
    base_mode = "hull" if instance.scenario_hull else "plain"

    plain_scan = _Scan(images, base_mode, eq_tol, strict_tol, order)
    hull_scan = _Scan(images, "hull", eq_tol, strict_tol, order)
    filtered = [pareto_filter_max(img, eq_tol, strict_tol) for img in images]
    set_scan = _Scan(filtered, base_mode, eq_tol, strict_tol, order)
    vals_stack = np.stack([img.values for img in images])
    sup = plain_scan.sup

    def labels_for(j: int) -> CandidateResult:
        dominators = {}

        hit = plain_scan.find_dominator(j)
        robust = hit is None
        if hit is not None:
            dominators["robust"] = Dominator(cands[hit[0]], hit[1])

        hit = hull_scan.find_dominator(j)
        hull = hit is None
        if hit is not None:
            dominators["convex_hull"] = Dominator(cands[hit[0]], hit[1])

        i = _objectivewise_dominator(j, vals_stack, sup, order, eq_tol, strict_tol)
        objectivewise = i is None
        if i is not None:
            corner = sup[j]
            witnesses = {}
            for sid, y in images[i].points():
                w = dominated_by_point_set(y, corner[None, :], ["sup-corner"],
                                           eq_tol=eq_tol, strict_tol=strict_tol)
                witnesses[sid] = w
            dominators["objectivewise"] = Dominator(cands[i], witnesses)

        hit = set_scan.find_dominator(j)
        set_min = hit is None
        if hit is not None:
            dominators["set_valued"] = Dominator(cands[hit[0]], hit[1])

        if hull and not robust:
            raise RuntimeError(
                f"invariant violated: candidate {candidate_label(cands[j])} is "
                "convex-hull efficient but not robust efficient"
            )
        return CandidateResult(
            candidate=cands[j],
            robust_efficient=robust,
            convex_hull_efficient=hull,
            objectivewise_efficient=objectivewise,
            set_valued_minimizer=set_min,
            dominators=dominators,
        )

    workers = min(_worker_count(threads), len(cands))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(labels_for, range(len(cands))))
    else:
        results = [labels_for(j) for j in range(len(cands))]
    return EfficiencyReport(instance=instance, results=results)


def set_valued_minimizers(instance: Instance, eq_tol: float = EQ_TOL,
                          strict_tol: float = STRICT_TOL) -> list:
    """Candidates whose filtered image is minimal under the set order."""
    cands = instance.candidate_list()
    order = _search_order(cands)
    mode = "hull" if instance.scenario_hull else "plain"
    filtered = [pareto_filter_max(instance.image(c), eq_tol, strict_tol) for c in cands]
    scan = _Scan(filtered, mode, eq_tol, strict_tol, order)
    return [cands[j] for j in range(len(cands)) if scan.find_dominator(j) is None]
