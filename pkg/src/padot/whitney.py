"""Lazy Whitney decomposition of an open domain into dyadic cubes.

A dyadic cube of generation k has side 2^k and integer corner coordinates in
units of 2^k, anchored at the origin.  A cube is selected when it clears the
margin test ``dist(cube, complement) >= sqrt(n) * side`` while its parent
fails it; the selected cubes tile the domain with disjoint interiors, sides
comparable to the distance to the complement, and neighbours within a factor
of 4 in side length.

Cube identity is the integer pair (generation, corner), so face relations are
decided in exact integer arithmetic; floating point enters only through the
distance oracles.  Selection tests are memoized; the caches take a lock on
insert so concurrent readers are safe.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .domains import DomainDescriptor, DomainError

__all__ = ["DyadicCube", "EstimateReport", "WhitneyDecomposition"]

MAX_GENERATION_WALK = 128
_MIN_START_GENERATION = -960  # keeps ldexp(x, -k) finite for |x| up to ~1e13


@dataclass(frozen=True)
class DyadicCube:
    """The closed cube prod_i [corner_i * 2^k, (corner_i + 1) * 2^k]."""

    generation: int
    corner: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.corner)

    @property
    def side(self) -> float:
        return math.ldexp(1.0, self.generation)

    @property
    def low(self) -> np.ndarray:
        k = self.generation
        return np.array([math.ldexp(c, k) for c in self.corner])

    @property
    def high(self) -> np.ndarray:
        k = self.generation
        return np.array([math.ldexp(c + 1, k) for c in self.corner])

    @property
    def center(self) -> np.ndarray:
        k = self.generation
        return np.array([math.ldexp(2 * c + 1, k - 1) for c in self.corner])

    def parent(self) -> "DyadicCube":
        return DyadicCube(
            self.generation + 1, tuple(c >> 1 for c in self.corner)
        )

    def contains_point(self, x) -> bool:
        arr = np.asarray(x, dtype=float)
        return bool(np.all(self.low <= arr) and np.all(arr <= self.high))

    def dist_to_point(self, x) -> float:
        arr = np.asarray(x, dtype=float)
        resid = arr - np.clip(arr, self.low, self.high)
        return float(np.linalg.norm(resid))

    def key(self) -> tuple:
        return (self.generation, self.corner)

    def __repr__(self) -> str:
        return f"DyadicCube(k={self.generation}, corner={list(self.corner)})"


def _cube_at(x: np.ndarray, k: int) -> DyadicCube:
    corner = tuple(int(math.floor(math.ldexp(float(c), -k))) for c in x)
    return DyadicCube(k, corner)


@dataclass
class EstimateReport:
    """Outcome of the shortcut-metric estimates for one point pair."""

    x_cube: DyadicCube
    y_cube: DyadicCube
    neighbors: bool
    euclidean: float
    shortcut: float
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(ok for (_, _, ok) in self.checks.values())

    def failures(self) -> list[str]:
        return [
            f"{name}: lhs={lhs!r} rhs={rhs!r}"
            for name, (lhs, rhs, ok) in self.checks.items()
            if not ok
        ]


class WhitneyDecomposition:
    """Memoized selection, lookup and neighbour queries for one domain."""

    def __init__(self, domain: DomainDescriptor):
        self.domain = domain
        self._sqrt_n = math.sqrt(domain.dimension)
        self._margin: dict[tuple, bool] = {}
        self._neighbors: dict[tuple, tuple] = {}
        self._lock = threading.Lock()

    # -- selection ----------------------------------------------------------

    def margin_ok(self, cube: DyadicCube) -> bool:
        """Whether dist(cube, complement) >= sqrt(n) * side."""
        key = cube.key()
        hit = self._margin.get(key)
        if hit is not None:
            return hit
        value = (
            self.domain.dist_cube_to_complement(cube.low, cube.high)
            >= self._sqrt_n * cube.side
        )
        with self._lock:
            self._margin[key] = value
        return value

    def is_whitney_cube(self, cube: DyadicCube) -> bool:
        """Selected cubes clear the margin test while their parent fails it."""
        if cube.dimension != self.domain.dimension:
            raise DomainError("cube dimension does not match the domain")
        return self.margin_ok(cube) and not self.margin_ok(cube.parent())

    # -- point location -----------------------------------------------------

    def cube_containing(self, x) -> DyadicCube:
        """The selected cube whose closed cube contains ``x``.

        Points on shared faces belong to several selected cubes; the one with
        the largest generation wins, then the lexicographically smallest
        corner.
        """
        arr = self.domain.check_interior(x)
        d = self.domain.dist_to_complement(arr)
        k = int(math.floor(math.log2(d / (2.0 * self._sqrt_n))))
        k = max(min(k, 64), _MIN_START_GENERATION)
        steps = 0
        while not self.margin_ok(_cube_at(arr, k)):
            k -= 1
            steps += 1
            if steps > MAX_GENERATION_WALK:
                raise DomainError(
                    f"no margin-passing cube within {MAX_GENERATION_WALK} generations "
                    f"below start for point {arr.tolist()}"
                )
        steps = 0
        while self.margin_ok(_cube_at(arr, k + 1)):
            k += 1
            steps += 1
            if steps > MAX_GENERATION_WALK:
                raise DomainError(
                    f"margin test keeps passing for {MAX_GENERATION_WALK} generations "
                    f"above start for point {arr.tolist()}"
                )
        for kk in (k + 2, k + 1, k):
            hits = [
                cube
                for cube in self._cubes_at_containing(arr, kk)
                if self.is_whitney_cube(cube)
            ]
            if hits:
                return min(hits, key=lambda c: c.corner)
        raise DomainError(f"point location failed for {arr.tolist()}")  # pragma: no cover

    def _cubes_at_containing(self, arr: np.ndarray, k: int) -> list[DyadicCube]:
        options = []
        for c in arr:
            scaled = math.ldexp(float(c), -k)
            base = int(math.floor(scaled))
            if scaled == base:
                options.append((base - 1, base))
            else:
                options.append((base,))
        return [DyadicCube(k, corner) for corner in itertools.product(*options)]

    # -- neighbours ----------------------------------------------------------

    def neighbors(self, cube: DyadicCube) -> tuple[DyadicCube, ...]:
        """All selected cubes meeting ``cube`` (including itself).

        Side ratios of touching selected cubes lie in [1/4, 4], so probing
        generations k-2 .. k+2 is exhaustive.
        """
        key = cube.key()
        hit = self._neighbors.get(key)
        if hit is not None:
            return hit
        if not self.is_whitney_cube(cube):
            raise DomainError(f"{cube!r} is not a selected cube")
        found = set()
        k = cube.generation
        for j in range(k - 2, k + 3):
            for corner in self._corners_touching(cube, j):
                cand = DyadicCube(j, corner)
                if self.is_whitney_cube(cand):
                    found.add(cand)
        out = tuple(sorted(found, key=lambda c: (c.generation, c.corner)))
        with self._lock:
            self._neighbors[key] = out
        return out

    @staticmethod
    def _corners_touching(cube: DyadicCube, j: int):
        """Integer corner ranges of generation-j cubes meeting ``cube``."""
        k = cube.generation
        f = min(j, k)
        shift_q = k - f
        s = 1 << (j - f)
        ranges = []
        for c in cube.corner:
            lo_q = c << shift_q
            hi_q = (c + 1) << shift_q
            d_min = -((s - lo_q) // s)  # ceil((lo_q - s) / s)
            d_max = hi_q // s
            ranges.append(range(d_min, d_max + 1))
        return itertools.product(*ranges)

    # -- metric estimates -----------------------------------------------------

    def check_shortcut_estimates(self, x, y) -> EstimateReport:
        """Compare the shortcut metric against the cube-side predictions.

        For each point, sqrt(n) * side <= dist_to_complement <= 5 sqrt(n) * side.
        Points in meeting cubes are joined by the straight segment; points in
        non-meeting cubes satisfy the two-sided separation bound
        (l + l') / 8 <= shortcut <= 5 sqrt(n) (l + l').
        """
        arr_x = self.domain.check_interior(x)
        arr_y = self.domain.check_interior(y)
        qx = self.cube_containing(arr_x)
        qy = self.cube_containing(arr_y)
        near = qy in self.neighbors(qx)
        dx = self.domain.dist_to_complement(arr_x)
        dy = self.domain.dist_to_complement(arr_y)
        euclid = float(np.linalg.norm(arr_x - arr_y))
        short = min(euclid, dx + dy)
        rt = self._sqrt_n
        lx, ly = qx.side, qy.side
        checks = {}

        def record(name, lhs, rhs, slack=0.0):
            checks[name] = (lhs, rhs, lhs <= rhs + slack)

        tol = 1e-12 * (1.0 + abs(euclid) + lx + ly)
        record("x_side_lower", rt * lx, dx, tol)
        record("x_side_upper", dx, 5.0 * rt * lx, tol)
        record("y_side_lower", rt * ly, dy, tol)
        record("y_side_upper", dy, 5.0 * rt * ly, tol)
        if near:
            record("neighbor_direct", abs(short - euclid), 0.0, tol)
        else:
            record("separated_lower", (lx + ly) / 8.0, short, tol)
            record("separated_upper", short, 5.0 * rt * (lx + ly), tol)
        return EstimateReport(qx, qy, near, euclid, short, checks)

    # -- bounded enumeration ---------------------------------------------------

    def iter_selected_in_box(self, low, high, min_generation: int = -30):
        """Yield every selected cube meeting the closed box [low, high].

        Boxes reaching the complement would contain infinitely many selected
        cubes, so descent stops below ``min_generation``; cubes smaller than
        that are silently omitted.
        """
        low = np.asarray(low, dtype=float)
        high = np.asarray(high, dtype=float)
        if low.shape != (self.domain.dimension,) or high.shape != low.shape:
            raise DomainError("bounding box dimension mismatch")
        if not np.all(low <= high):
            raise DomainError("bounding box requires low <= high")
        center = 0.5 * (low + high)
        diam = float(np.linalg.norm(high - low))
        reach = self.domain.dist_to_complement(center) + 0.5 * diam + 1.0
        k_top = int(math.ceil(math.log2(max(reach / self._sqrt_n, 1e-9)))) + 1
        side = math.ldexp(1.0, k_top)
        roots = set()
        ranges = [
            range(int(math.floor(a / side)) - 1, int(math.floor(b / side)) + 2)
            for a, b in zip(low, high)
        ]
        for corner in itertools.product(*ranges):
            roots.add(DyadicCube(k_top, corner))
        stack = sorted(roots, key=lambda c: c.corner)
        while stack:
            cube = stack.pop()
            if np.any(cube.low > high) or np.any(cube.high < low):
                continue
            if not self.domain.cube_intersects(cube.low, cube.high):
                continue
            if self.margin_ok(cube):
                if self.is_whitney_cube(cube):
                    yield cube
                continue
            if cube.generation - 1 < min_generation:
                continue
            k = cube.generation - 1
            for offset in itertools.product((0, 1), repeat=cube.dimension):
                corner = tuple(2 * c + o for c, o in zip(cube.corner, offset))
                stack.append(DyadicCube(k, corner))
