"""Witness configurations showing the completion metric is not doubling.

For a domain whose closure misses some exterior point, one can place many
points just inside the domain, each at distance eps/2 from the complement and
pairwise Euclidean distance at least eps.  Under the shortcut metric every
pair is then exactly eps apart (the route through the complement wins), so a
ball of radius slightly above eps contains all of them while no ball of
radius eps/4 contains two.  The number of points is unbounded, which rules
out any doubling constant and hence any bi-Lipschitz embedding into a
finite-dimensional Euclidean space.

``nondoubling_witness`` constructs such a configuration by shooting rays from
an exterior anchor and bisecting along each ray: first for the domain entry
point, then for the level set dist-to-complement = eps/2.  Every output is
re-verified against the metric before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domains import (
    ComplementOfClosedBox,
    DomainDescriptor,
    DomainError,
    OpenBox,
    PuncturedSpace,
    ShortcutPoint,
    UpperDiagonalHalfPlane,
)

__all__ = ["NonDoublingWitness", "nondoubling_witness"]

_BISECTION_STEPS = 200


@dataclass
class NonDoublingWitness:
    """Points of the completion at pairwise shortcut distance ``epsilon``."""

    domain: DomainDescriptor
    epsilon: float
    anchor: np.ndarray
    points: np.ndarray

    @property
    def count(self) -> int:
        return len(self.points)

    def max_pairwise_deviation(self) -> float:
        worst = 0.0
        pts = [ShortcutPoint.interior(row) for row in self.points]
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = self.domain.shortcut_distance(pts[i], pts[j])
                worst = max(worst, abs(d - self.epsilon))
        return worst

    def max_level_deviation(self) -> float:
        half = 0.5 * self.epsilon
        worst = 0.0
        for row in self.points:
            worst = max(worst, abs(self.domain.dist_to_complement(row) - half))
        return worst

    def summary(self) -> str:
        return (
            f"{self.count} points at pairwise shortcut distance "
            f"{self.epsilon:g}; covering the {self.epsilon:g}-ball around any "
            f"of them by balls of radius {self.epsilon / 4:g} needs "
            f"{self.count} balls"
        )


def _witness_frame(domain: DomainDescriptor, count: int):
    """Exterior anchor and ray targets, chosen per descriptor family."""
    n = domain.dimension
    if isinstance(domain, PuncturedSpace):
        raise DomainError(
            "a punctured space is dense in R^n; no exterior anchor exists"
        )
    if n < 2:
        raise DomainError("the non-doubling witness needs dimension >= 2")
    if isinstance(domain, OpenBox):
        low = np.array(domain.low)
        high = np.array(domain.high)
        extent = high - low
        center = 0.5 * (low + high)
        anchor = center.copy()
        anchor[-1] = low[-1] - extent[-1]
        targets = []
        for j in range(count):
            t = center.copy()
            t[0] = center[0] + 0.8 * extent[0] * ((j + 0.5) / count - 0.5)
            targets.append(t)
        return anchor, targets
    if isinstance(domain, UpperDiagonalHalfPlane):
        anchor = np.array([2.0, -2.0])
        targets = []
        for j in range(count):
            s = 4.0 * ((j + 0.5) / count - 0.5)
            targets.append(np.array([s - 2.0, s + 2.0]))
        return anchor, targets
    if isinstance(domain, ComplementOfClosedBox):
        low = np.array(domain.low)
        high = np.array(domain.high)
        extent = high - low
        center = 0.5 * (low + high)
        reach = float(np.linalg.norm(extent))
        targets = []
        for j in range(count):
            theta = 0.5 * math.pi * (j + 0.5) / count
            t = center.copy()
            t[0] += (extent[0] + reach) * math.cos(theta)
            t[-1] += (extent[-1] + reach) * math.sin(theta)
            targets.append(t)
        return center.copy(), targets
    raise DomainError(
        f"no witness construction for {type(domain).__name__}"
    )


def _entry_parameter(domain: DomainDescriptor, anchor, target) -> float:
    """Bisect for the domain-entry parameter along anchor -> target.

    All supported frames cross the boundary exactly once on this segment, so
    membership is monotone in the parameter.
    """
    lo, hi = 0.0, 1.0
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if domain.contains(anchor + mid * (target - anchor)):
            hi = mid
        else:
            lo = mid
    return hi


def _level_parameter(domain: DomainDescriptor, anchor, target,
                     t_in: float, half: float) -> float:
    """Bisect for dist_to_complement = half on the interior part of the ray."""

    def level(t):
        return domain.dist_to_complement(anchor + t * (target - anchor)) - half

    if not level(1.0) > 0.0:
        raise DomainError(
            f"epsilon too large: dist_to_complement stays below "
            f"{2 * half:g}/2 along a witness ray"
        )
    lo, hi = t_in, 1.0
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if level(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def nondoubling_witness(domain: DomainDescriptor, count: int = 20,
                        epsilon: float = 0.01) -> NonDoublingWitness:
    """Construct ``count`` interior points with pairwise shortcut distance
    ``epsilon``, each at exactly ``epsilon/2`` from the complement.

    Raises :class:`DomainError` if the geometry does not admit the
    construction (dimension 1, punctured spaces, or ``epsilon`` too large)
    or if the built points fail verification.
    """
    if count < 1:
        raise DomainError("witness needs at least one point")
    if not epsilon > 0.0:
        raise DomainError("epsilon must be positive")
    anchor, targets = _witness_frame(domain, count)
    half = 0.5 * epsilon
    rows = []
    for target in targets:
        if not domain.contains(target):
            raise DomainError(
                f"witness ray target {target.tolist()} is not interior"
            )  # pragma: no cover
        t_in = _entry_parameter(domain, anchor, target)
        t_star = _level_parameter(domain, anchor, target, t_in, half)
        rows.append(anchor + t_star * (target - anchor))
    points = np.array(rows).reshape(count, domain.dimension)

    witness = NonDoublingWitness(domain, float(epsilon), anchor, points)
    level_dev = witness.max_level_deviation()
    if level_dev > 1e-12:
        raise DomainError(
            f"witness bisection missed the level set by {level_dev:.3e}"
        )
    pair_dev = witness.max_pairwise_deviation()
    if pair_dev > 1e-9:
        raise DomainError(
            f"witness pairwise shortcut distances deviate from epsilon "
            f"by {pair_dev:.3e}; points too close for this epsilon/count"
        )
    return witness
