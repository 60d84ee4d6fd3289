"""Open domains in R^n with exact complement-distance oracles.

Every domain used by this package is an open, non-empty, proper subset of
R^n drawn from four closed-form families: open boxes, the open half-plane
above the diagonal, R^n minus finitely many points, and the complement of a
closed box.  Restricting to these families keeps ``dist_to_complement`` and
its cube-level variant exact (no generic root finding), which the Whitney
construction and the shortcut metric both rely on.

The shortcut metric glues the whole complement to a single extra point: two
interior points are either connected directly or through the boundary,
whichever is cheaper, and the glued point is at distance zero from itself.
``ShortcutPoint`` represents elements of that one-point completion.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "DomainError",
    "ShortcutPoint",
    "BOUNDARY",
    "DomainDescriptor",
    "OpenBox",
    "UpperDiagonalHalfPlane",
    "PuncturedSpace",
    "ComplementOfClosedBox",
    "parse_domain",
    "domain_from_json",
]


class DomainError(ValueError):
    """Invalid descriptor construction or out-of-domain argument."""


@dataclass(frozen=True)
class ShortcutPoint:
    """A point of the one-point completion: interior coordinates or the glued point.

    ``coords`` is a tuple of floats for interior points and ``None`` for the
    glued boundary point.
    """

    coords: tuple[float, ...] | None

    @classmethod
    def interior(cls, coords) -> "ShortcutPoint":
        return cls(tuple(float(c) for c in coords))

    @classmethod
    def boundary(cls) -> "ShortcutPoint":
        return cls(None)

    @property
    def is_boundary(self) -> bool:
        return self.coords is None

    def as_array(self) -> np.ndarray:
        if self.coords is None:
            raise DomainError("the glued boundary point has no coordinates")
        return np.asarray(self.coords, dtype=float)

    def __repr__(self) -> str:
        if self.coords is None:
            return "ShortcutPoint(boundary)"
        return f"ShortcutPoint({list(self.coords)})"


BOUNDARY = ShortcutPoint.boundary()


class DomainDescriptor:
    """Base class; concrete families implement the closed-form oracles."""

    dimension: int

    # -- membership / distance oracles ------------------------------------

    def contains(self, x) -> bool:
        raise NotImplementedError

    def dist_to_complement(self, x) -> float:
        """Euclidean distance from ``x`` to the complement of the domain.

        Returns 0 for points outside the domain (they sit in the complement).
        """
        raise NotImplementedError

    def dist_many(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized ``dist_to_complement`` over rows of ``pts``."""
        raise NotImplementedError

    def nearest_complement_point(self, x) -> np.ndarray:
        """A complement point realizing ``dist_to_complement(x)``.

        Deterministic: among all realizers the lexicographically smallest one
        produced by the closed-form candidate list is returned.
        """
        raise NotImplementedError

    def dist_cube_to_complement(self, low, high) -> float:
        """inf of ``dist_to_complement`` over the closed axis box [low, high]."""
        raise NotImplementedError

    def cube_intersects(self, low, high) -> bool:
        """Whether the closed axis box [low, high] meets the domain."""
        raise NotImplementedError

    def sampling_box(self) -> tuple[np.ndarray, np.ndarray]:
        """A box from which rejection sampling draws interior points."""
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    # -- shared helpers ----------------------------------------------------

    def check_vector(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        if arr.shape != (self.dimension,):
            raise DomainError(
                f"expected a vector of dimension {self.dimension}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise DomainError("point has non-finite coordinates")
        return arr

    def check_interior(self, x) -> np.ndarray:
        arr = self.check_vector(x)
        if not self.contains(arr):
            raise DomainError(f"point {arr.tolist()} is not in the domain")
        return arr

    def shortcut_distance(self, a: ShortcutPoint, b: ShortcutPoint) -> float:
        """Distance on the one-point completion.

        Interior-interior pairs take the cheaper of the straight segment and
        the route through the complement; the glued point is at distance
        ``dist_to_complement`` from interior points and 0 from itself.
        """
        if a.is_boundary and b.is_boundary:
            return 0.0
        if a.is_boundary:
            return self.dist_to_complement(self.check_interior(b.as_array()))
        if b.is_boundary:
            return self.dist_to_complement(self.check_interior(a.as_array()))
        xa = self.check_interior(a.as_array())
        xb = self.check_interior(b.as_array())
        direct = float(np.linalg.norm(xa - xb))
        through = self.dist_to_complement(xa) + self.dist_to_complement(xb)
        return min(direct, through)

    def shortcut_distance_coords(self, xa: np.ndarray, xb: np.ndarray) -> float:
        """Unvalidated interior-interior shortcut distance (hot path)."""
        direct = float(np.linalg.norm(xa - xb))
        through = self.dist_to_complement(xa) + self.dist_to_complement(xb)
        return min(direct, through)


def _as_float_tuple(values, what: str) -> tuple[float, ...]:
    try:
        out = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{what} must be a sequence of reals") from exc
    if not out:
        raise DomainError(f"{what} must be non-empty")
    if not all(math.isfinite(v) for v in out):
        raise DomainError(f"{what} must be finite")
    return out


@dataclass(frozen=True)
class OpenBox(DomainDescriptor):
    """Open axis-aligned box: all coordinates strictly between low and high."""

    low: tuple[float, ...]
    high: tuple[float, ...]

    def __post_init__(self):
        low = _as_float_tuple(self.low, "low corner")
        high = _as_float_tuple(self.high, "high corner")
        if len(low) != len(high):
            raise DomainError("low and high corners differ in dimension")
        if not all(a < b for a, b in zip(low, high)):
            raise DomainError("open box requires low < high in every coordinate")
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "high", high)
        object.__setattr__(self, "_low", np.array(low))
        object.__setattr__(self, "_high", np.array(high))

    @property
    def dimension(self) -> int:
        return len(self.low)

    def contains(self, x) -> bool:
        arr = np.asarray(x, dtype=float)
        return bool(np.all(self._low < arr) and np.all(arr < self._high))

    def dist_to_complement(self, x) -> float:
        arr = np.asarray(x, dtype=float)
        margin = float(np.minimum(arr - self._low, self._high - arr).min())
        return max(margin, 0.0)

    def dist_many(self, pts: np.ndarray) -> np.ndarray:
        margins = np.minimum(pts - self._low, self._high - pts).min(axis=1)
        return np.maximum(margins, 0.0)

    def nearest_complement_point(self, x) -> np.ndarray:
        arr = self.check_interior(x)
        best = None
        best_d = math.inf
        for i in range(self.dimension):
            for face in (self.low[i], self.high[i]):
                cand = arr.copy()
                cand[i] = face
                d = abs(arr[i] - face)
                if best is None or d < best_d or (d == best_d and tuple(cand) < tuple(best)):
                    best = cand
                    best_d = d
        return best

    def dist_cube_to_complement(self, low, high) -> float:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        margin = float(np.minimum(low - self._low, self._high - high).min())
        return max(margin, 0.0)

    def cube_intersects(self, low, high) -> bool:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        return bool(np.all(high > self._low) and np.all(low < self._high))

    def sampling_box(self):
        return self._low.copy(), self._high.copy()

    def to_json(self) -> dict:
        return {"type": "open_box", "low": list(self.low), "high": list(self.high)}


@dataclass(frozen=True)
class UpperDiagonalHalfPlane(DomainDescriptor):
    """Open half-plane above the diagonal in R^2: pairs (x, y) with y > x.

    This is the natural home of persistence barcodes; the diagonal plays the
    role of the boundary.
    """

    def __post_init__(self):
        object.__setattr__(self, "_sqrt2", math.sqrt(2.0))

    @property
    def dimension(self) -> int:
        return 2

    def contains(self, x) -> bool:
        arr = np.asarray(x, dtype=float)
        return bool(arr[1] > arr[0])

    def dist_to_complement(self, x) -> float:
        arr = np.asarray(x, dtype=float)
        return max(float(arr[1] - arr[0]), 0.0) / self._sqrt2

    def dist_many(self, pts: np.ndarray) -> np.ndarray:
        return np.maximum(pts[:, 1] - pts[:, 0], 0.0) / self._sqrt2

    def nearest_complement_point(self, x) -> np.ndarray:
        arr = self.check_interior(x)
        mid = 0.5 * (arr[0] + arr[1])
        return np.array([mid, mid])

    def dist_cube_to_complement(self, low, high) -> float:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        return max(float(low[1] - high[0]), 0.0) / self._sqrt2

    def cube_intersects(self, low, high) -> bool:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        return bool(high[1] > low[0])

    def sampling_box(self):
        return np.array([-1.0, -1.0]), np.array([1.0, 1.0])

    def to_json(self) -> dict:
        return {"type": "upper_diagonal"}


@dataclass(frozen=True)
class PuncturedSpace(DomainDescriptor):
    """R^n minus a finite set of points."""

    removed: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if not self.removed:
            raise DomainError("punctured space requires at least one removed point")
        pts = tuple(_as_float_tuple(p, "removed point") for p in self.removed)
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise DomainError("removed points differ in dimension")
        if len(set(pts)) != len(pts):
            raise DomainError("removed points must be distinct")
        object.__setattr__(self, "removed", pts)
        object.__setattr__(self, "_removed", np.array(pts))

    @property
    def dimension(self) -> int:
        return len(self.removed[0])

    def contains(self, x) -> bool:
        arr = np.asarray(x, dtype=float)
        return not bool(np.any(np.all(self._removed == arr, axis=1)))

    def dist_to_complement(self, x) -> float:
        arr = np.asarray(x, dtype=float)
        return float(np.linalg.norm(self._removed - arr, axis=1).min())

    def dist_many(self, pts: np.ndarray) -> np.ndarray:
        diff = pts[:, None, :] - self._removed[None, :, :]
        return np.sqrt((diff * diff).sum(axis=2)).min(axis=1)

    def nearest_complement_point(self, x) -> np.ndarray:
        arr = self.check_interior(x)
        dists = np.linalg.norm(self._removed - arr, axis=1)
        best = dists.min()
        realizers = [tuple(p) for p, d in zip(self.removed, dists) if d == best]
        return np.array(min(realizers))

    def dist_cube_to_complement(self, low, high) -> float:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        clipped = np.clip(self._removed, low, high)
        return float(np.linalg.norm(clipped - self._removed, axis=1).min())

    def cube_intersects(self, low, high) -> bool:
        # a box with positive volume is never covered by finitely many points
        return True

    def sampling_box(self):
        lo = self._removed.min(axis=0) - 1.0
        hi = self._removed.max(axis=0) + 1.0
        return lo, hi

    def to_json(self) -> dict:
        return {"type": "punctured", "points": [list(p) for p in self.removed]}


@dataclass(frozen=True)
class ComplementOfClosedBox(DomainDescriptor):
    """R^n minus a closed axis-aligned box."""

    low: tuple[float, ...]
    high: tuple[float, ...]

    def __post_init__(self):
        low = _as_float_tuple(self.low, "low corner")
        high = _as_float_tuple(self.high, "high corner")
        if len(low) != len(high):
            raise DomainError("low and high corners differ in dimension")
        if not all(a < b for a, b in zip(low, high)):
            raise DomainError("closed box requires low < high in every coordinate")
        object.__setattr__(self, "low", low)
        object.__setattr__(self, "high", high)
        object.__setattr__(self, "_low", np.array(low))
        object.__setattr__(self, "_high", np.array(high))

    @property
    def dimension(self) -> int:
        return len(self.low)

    def contains(self, x) -> bool:
        arr = np.asarray(x, dtype=float)
        return bool(np.any(arr < self._low) or np.any(arr > self._high))

    def dist_to_complement(self, x) -> float:
        arr = np.asarray(x, dtype=float)
        resid = np.maximum(self._low - arr, 0.0) + np.maximum(arr - self._high, 0.0)
        return float(np.linalg.norm(resid))

    def dist_many(self, pts: np.ndarray) -> np.ndarray:
        resid = np.maximum(self._low - pts, 0.0) + np.maximum(pts - self._high, 0.0)
        return np.sqrt((resid * resid).sum(axis=1))

    def nearest_complement_point(self, x) -> np.ndarray:
        arr = self.check_interior(x)
        return np.clip(arr, self._low, self._high)

    def dist_cube_to_complement(self, low, high) -> float:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        gap = np.maximum(self._low - high, 0.0) + np.maximum(low - self._high, 0.0)
        return float(np.linalg.norm(gap))

    def cube_intersects(self, low, high) -> bool:
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        inside = np.all(low >= self._low) and np.all(high <= self._high)
        return not bool(inside)

    def sampling_box(self):
        extent = self._high - self._low
        return self._low - extent - 1.0, self._high + extent + 1.0

    def to_json(self) -> dict:
        return {
            "type": "complement_box",
            "low": list(self.low),
            "high": list(self.high),
        }


_TYPES = {
    "open_box": lambda d: OpenBox(tuple(d["low"]), tuple(d["high"])),
    "upper_diagonal": lambda d: UpperDiagonalHalfPlane(),
    "punctured": lambda d: PuncturedSpace(tuple(tuple(p) for p in d["points"])),
    "complement_box": lambda d: ComplementOfClosedBox(tuple(d["low"]), tuple(d["high"])),
}


def parse_domain(data: dict) -> DomainDescriptor:
    """Build a descriptor from its JSON dictionary form."""
    if not isinstance(data, dict) or "type" not in data:
        raise DomainError("domain JSON must be an object with a 'type' field")
    kind = data["type"]
    if kind not in _TYPES:
        raise DomainError(f"unknown domain type {kind!r}")
    try:
        return _TYPES[kind](data)
    except KeyError as exc:
        raise DomainError(f"domain JSON for {kind!r} is missing field {exc}") from exc


def domain_from_json(source) -> DomainDescriptor:
    """Accept a dict, a JSON string, or a path to a JSON file."""
    if isinstance(source, DomainDescriptor):
        return source
    if isinstance(source, dict):
        return parse_domain(source)
    text = str(source)
    if text.lstrip().startswith("{"):
        return parse_domain(json.loads(text))
    path = Path(text)
    return parse_domain(json.loads(path.read_text()))
