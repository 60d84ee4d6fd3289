"""Sparse Hilbert-space embeddings of point tuples.

The pipeline has three stages.  A local map attached to each Whitney cube Q
multiplies a cutoff supported near Q by the recentred coordinates together
with the side length, sending the glued boundary point to zero.  Pushing a
padded tuple through every local map yields a sparse field of small vector
tuples indexed by cubes; the field-to-field distance (root of summed squared
per-cube Wasserstein distances) already sandwiches the transport distance
between explicit constants.  Finally a sorted-projection sketch flattens each
vector tuple into a fixed-length vector, 1-Lipschitz for the tuple
Wasserstein distance, giving a genuine Hilbert-space embedding.

``lower_bound_certificate`` re-derives the lower constant of the sandwich for
one concrete pair, exposing every intermediate object (per-cube matchings,
empty annuli, the glued bijection) so tests can audit the chain step by step.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .assignment import assignment_solve, min_assignment_cost
from .domains import DomainError
from .transport import UnorderedTuple, pad_with_boundary, wasserstein_tuples
from .whitney import DyadicCube, WhitneyDecomposition

__all__ = [
    "EmbeddingConstants",
    "LocalMap",
    "TupleField",
    "DirectionFamily",
    "tuple_sketch",
    "SparseEmbedding",
    "embed_tuple",
    "sketch_field",
    "CertificateError",
    "CubeReport",
    "LowerBoundCertificate",
    "lower_bound_certificate",
]


@dataclass(frozen=True)
class EmbeddingConstants:
    """The explicit constants of the two-sided comparison in dimension n.

    ``upper``       bounds sum_Q W2(...)^2 by upper * W2(shortcut)^2
    ``close_match`` threshold coefficient separating well-matched cubes
    ``boundary``    lower-bound coefficient: W2^2 <= boundary * M^3 * sum_Q
    ``combined``    max of the two outer constants
    """

    dimension: int
    upper: float
    close_match: float
    boundary: float
    combined: float

    @classmethod
    def for_dimension(cls, n: int) -> "EmbeddingConstants":
        if n < 1:
            raise ValueError("dimension must be >= 1")
        upper = 2.0 * 81.0 * (12.0 ** n) * (n + 1)
        close_match = 1.0 / (48.0 * math.sqrt(n))
        boundary = 4.0 * 25.0 * n / close_match ** 2
        return cls(n, upper, close_match, boundary, max(upper, boundary))


class LocalMap:
    """The map attached to one cube: cutoff times recentred coordinates.

    Values live in R^(n+1): the first n entries are the offset from the cube
    center scaled by the cutoff, the last is the cutoff times the side
    length.  The cutoff equals 1 within distance side/8 of the cube, falls
    linearly, and vanishes beyond side/4, so the map is supported in a small
    neighbourhood of its cube and is 9 sqrt(n+1)-Lipschitz for both the
    Euclidean and the shortcut metric.
    """

    def __init__(self, cube: DyadicCube):
        self.cube = cube
        self.center = cube.center
        self.side = cube.side

    def cutoff(self, x) -> float:
        l = self.side
        excess = self.cube.dist_to_point(x) - l / 8.0
        if excess <= 0.0:
            return 1.0
        return max(1.0 - excess * 8.0 / l, 0.0)

    def apply_coords(self, x: np.ndarray) -> np.ndarray:
        e = self.cutoff(x)
        out = np.empty(len(self.center) + 1)
        if e == 0.0:
            out[:] = 0.0
            return out
        out[:-1] = (x - self.center) * e
        out[-1] = self.side * e
        return out

    def apply(self, point) -> np.ndarray:
        """Evaluate at a completion point; the glued point maps to zero."""
        if point.is_boundary:
            return np.zeros(len(self.center) + 1)
        return self.apply_coords(point.as_array())

    def image_rows(self, t: UnorderedTuple) -> np.ndarray:
        """Images of all tuple slots in canonical point order (no sorting)."""
        M = t.size
        out = np.zeros((M, len(self.center) + 1))
        for i, row in enumerate(t.interior):
            out[i] = self.apply_coords(row)
        return out

    def push(self, t: UnorderedTuple) -> np.ndarray:
        """The image multiset as a canonically sorted (size, n+1) array."""
        rows = self.image_rows(t)
        if len(rows):
            rows = rows[np.lexsort(rows.T[::-1])]
        return rows


def _support_cubes(W: WhitneyDecomposition, t: UnorderedTuple) -> set[DyadicCube]:
    """Cubes whose local map can be nonzero on some point of ``t``.

    A point can only be within side/4 of cubes meeting its own containing
    cube, so the union of neighbour lists is exhaustive.
    """
    cubes: set[DyadicCube] = set()
    for row in t.interior:
        cubes.update(W.neighbors(W.cube_containing(row)))
    return cubes


def _w2_sq_vectors(a: np.ndarray, b: np.ndarray) -> float:
    diff = a[:, None, :] - b[None, :, :]
    cost = (diff * diff).sum(axis=2)
    return min_assignment_cost(cost)


def _sq_norms_total(a: np.ndarray) -> float:
    total = 0.0
    for row in a:
        total += float(row @ row)
    return total


class TupleField:
    """Sparse map from cubes to pushed vector tuples; absent cubes are zero."""

    def __init__(self, domain_dimension: int, size: int, entries: dict):
        self.domain_dimension = domain_dimension
        self.size = size
        self.entries = entries

    @classmethod
    def project(cls, W: WhitneyDecomposition, t: UnorderedTuple) -> "TupleField":
        entries = {}
        for cube in _support_cubes(W, t):
            rows = LocalMap(cube).push(t)
            if np.any(rows):
                entries[cube] = rows
        return cls(W.domain.dimension, t.size, entries)

    def cubes(self) -> list[DyadicCube]:
        return sorted(self.entries, key=lambda c: (c.generation, c.corner))

    def distance_sq(self, other: "TupleField") -> float:
        if self.size != other.size:
            raise DomainError(
                f"tuple fields have different sizes: {self.size} vs {other.size}"
            )
        keys = set(self.entries) | set(other.entries)
        total = 0.0
        for cube in sorted(keys, key=lambda c: (c.generation, c.corner)):
            a = self.entries.get(cube)
            b = other.entries.get(cube)
            if a is None:
                total += _sq_norms_total(b)
            elif b is None:
                total += _sq_norms_total(a)
            else:
                total += _w2_sq_vectors(a, b)
        return total

    def distance(self, other: "TupleField") -> float:
        return math.sqrt(self.distance_sq(other))


@dataclass(frozen=True)
class DirectionFamily:
    """A fixed family of unit directions in R^dim used by the sketch.

    ``density`` caps the number of nonzero (+-1) coordinates of the
    generating integer vectors: density 1 gives the standard basis, the
    default 2 adds the normalized pairwise sums and differences, higher
    values add denser sign patterns.  One representative is kept per +-
    pair (first nonzero positive).
    """

    dim: int
    density: int
    vectors: np.ndarray

    @classmethod
    def build(cls, dim: int, density: int = 2) -> "DirectionFamily":
        if dim < 1:
            raise ValueError("direction family needs dim >= 1")
        if density < 1:
            raise ValueError("direction density must be >= 1")
        patterns = []
        max_nnz = min(density, dim)
        for nnz in range(1, max_nnz + 1):
            for support in _combinations(dim, nnz):
                # first nonzero coordinate fixed to +1, the rest free signs
                for signs in _sign_patterns(nnz - 1):
                    vec = [0] * dim
                    vec[support[0]] = 1
                    for pos, s in zip(support[1:], signs):
                        vec[pos] = s
                    patterns.append(vec)
        arr = np.array(sorted(patterns), dtype=float)
        arr /= np.linalg.norm(arr, axis=1)[:, None]
        return cls(dim, density, arr)

    @property
    def count(self) -> int:
        return len(self.vectors)


def _combinations(n, k):
    import itertools

    return itertools.combinations(range(n), k)


def _sign_patterns(k):
    import itertools

    return itertools.product((1, -1), repeat=k)


def tuple_sketch(rows: np.ndarray, family: DirectionFamily) -> np.ndarray:
    """Sorted-projection sketch of a vector tuple.

    Projects the tuple onto every direction, sorts each projection list in
    descending order, concatenates per direction and rescales by the square
    root of the family size.  Exactly 1-Lipschitz for the tuple Wasserstein
    distance (one-dimensional optimal transport matches sorted lists), and
    the zero tuple maps to the zero vector.
    """
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[1] != family.dim:
        raise ValueError(
            f"expected an (M, {family.dim}) tuple, got shape {rows.shape}"
        )
    proj = rows @ family.vectors.T  # (M, h)
    proj = -np.sort(-proj, axis=0)  # descending per direction
    return proj.T.reshape(-1) / math.sqrt(family.count)


class SparseEmbedding:
    """Sparse Hilbert-space vector: one sketch block per supported cube."""

    def __init__(self, size: int, family: DirectionFamily, entries: dict):
        self.size = size
        self.family = family
        self.entries = entries

    def cubes(self) -> list[DyadicCube]:
        return sorted(self.entries, key=lambda c: (c.generation, c.corner))

    def distance_sq(self, other: "SparseEmbedding") -> float:
        if self.size != other.size or self.family.count != other.family.count:
            raise DomainError("embeddings have incompatible shapes")
        keys = set(self.entries) | set(other.entries)
        total = 0.0
        for cube in sorted(keys, key=lambda c: (c.generation, c.corner)):
            a = self.entries.get(cube)
            b = other.entries.get(cube)
            if a is None:
                total += float(b @ b)
            elif b is None:
                total += float(a @ a)
            else:
                diff = a - b
                total += float(diff @ diff)
        return total

    def distance(self, other: "SparseEmbedding") -> float:
        return math.sqrt(self.distance_sq(other))

    def to_json(self) -> dict:
        entries = {}
        for cube in self.cubes():
            key = ",".join([str(cube.generation)] + [str(c) for c in cube.corner])
            entries[key] = [float(v) for v in self.entries[cube]]
        return {"M": self.size, "h": self.family.count, "entries": entries}

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


def sketch_field(tfield: TupleField, family: DirectionFamily) -> SparseEmbedding:
    entries = {
        cube: tuple_sketch(rows, family) for cube, rows in tfield.entries.items()
    }
    return SparseEmbedding(tfield.size, family, entries)


def embed_tuple(W: WhitneyDecomposition, family: DirectionFamily,
                t: UnorderedTuple, m: int | None = None) -> SparseEmbedding:
    """Full pipeline: pad to size 2m, push through local maps, sketch."""
    if m is None:
        m = t.size
    padded = pad_with_boundary(t, m)
    if family.dim != W.domain.dimension + 1:
        raise DomainError(
            f"direction family of dim {family.dim} does not match domain "
            f"dimension {W.domain.dimension}"
        )
    return sketch_field(TupleField.project(W, padded), family)


# ---------------------------------------------------------------------------
# lower-bound certificate
# ---------------------------------------------------------------------------


class CertificateError(RuntimeError):
    """A step of the lower-bound construction failed its guarantee."""


@dataclass
class CubeReport:
    """Per-cube data of the certificate."""

    cube: DyadicCube
    permutation: tuple[int, ...]
    cost_sq: float
    close_match: bool
    annulus_index: int | None = None
    hat_radius: float | None = None
    p_hat: tuple[int, ...] | None = None
    q_hat: tuple[int, ...] | None = None


@dataclass
class LowerBoundCertificate:
    """Audit trail of the lower-bound chain for one tuple pair.

    ``matched_sq + boundary_sq`` dominates the squared shortcut cost of the
    glued bijection ``tau``, which in turn dominates the squared Wasserstein
    distance; the two pieces are controlled by the per-cube costs of the
    close-match cubes and the remaining cubes respectively.
    """

    size: int
    constants: EmbeddingConstants
    cubes: list[CubeReport]
    order: list[DyadicCube]
    blocks: list[tuple[DyadicCube, tuple[int, ...]]]
    tau: tuple[int, ...]
    matched_sq: float
    boundary_sq: float
    close_total_sq: float
    far_total_sq: float
    cubewise_total_sq: float
    tau_shortcut_sq: float
    w2_shortcut: float
    checks: dict = field(default_factory=dict)

    @property
    def lower_bound_sq(self) -> float:
        scale = self.constants.boundary * max(self.size, 1) ** 3
        return self.w2_shortcut ** 2 / scale

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def _annulus_data(cube: DyadicCube, M: int, clouds) -> tuple[int, float]:
    """Smallest annular shell around ``cube`` avoided by every given point.

    Shells have width side/(24 M); shell r covers distances in
    (r w, (r+1) w].  With at most 2M points and 2M+1 shells one is always
    free.  Returns (shell index, hat radius = index * width).
    """
    w = cube.side / (24.0 * M)
    blocked = [False] * (2 * M + 1)
    for pts in clouds:
        for row in pts:
            d = cube.dist_to_point(row)
            if d <= 0.0:
                continue
            r = math.ceil(d / w) - 1
            if 0 <= r <= 2 * M:
                blocked[r] = True
    for r in range(2 * M + 1):
        if not blocked[r]:
            return r, r * w
    raise CertificateError(
        f"no empty annulus around {cube!r}: pigeonhole violated"
    )  # pragma: no cover


def lower_bound_certificate(W: WhitneyDecomposition, p: UnorderedTuple,
                            q: UnorderedTuple) -> LowerBoundCertificate:
    """Construct and verify the lower-bound chain for equal-size tuples.

    Raises :class:`CertificateError` when any guaranteed step fails (annulus
    membership mismatch, local-map isometry violated on a hat set, the glued
    map failing to be a bijection, or a chain inequality breaking).
    """
    if p.domain != q.domain:
        raise DomainError("tuples live on different domains")
    if p.size != q.size:
        raise DomainError("certificate requires equal-size (padded) tuples")
    M = p.size
    n = W.domain.dimension
    constants = EmbeddingConstants.for_dimension(n)
    checks: dict[str, bool] = {}

    p_points = p.points
    q_points = q.points
    p_coords = [pt.as_array() if not pt.is_boundary else None for pt in p_points]
    q_coords = [pt.as_array() if not pt.is_boundary else None for pt in q_points]
    p_dist = [
        W.domain.dist_to_complement(c) if c is not None else 0.0 for c in p_coords
    ]
    q_dist = [
        W.domain.dist_to_complement(c) if c is not None else 0.0 for c in q_coords
    ]

    support = sorted(
        _support_cubes(W, p) | _support_cubes(W, q),
        key=lambda c: (c.generation, c.corner),
    )

    reports = []
    close = []
    close_total = 0.0
    far_total = 0.0
    for cube in support:
        local = LocalMap(cube)
        a = local.image_rows(p)
        b = local.image_rows(q)
        diff = a[:, None, :] - b[None, :, :]
        cost = (diff * diff).sum(axis=2)
        perm, cost_sq = assignment_solve(cost)
        is_close = (
            M > 0 and math.sqrt(cost_sq) < constants.close_match * cube.side / M
        )
        report = CubeReport(cube, tuple(int(j) for j in perm), cost_sq, is_close)
        if is_close:
            close.append(report)
            close_total += cost_sq
        else:
            far_total += cost_sq
        reports.append(report)

    # annuli and hat index sets for the close-match cubes; the annulus must
    # avoid both point clouds outright, so it does not depend on sigma
    p_cloud = [c for c in p_coords if c is not None]
    q_cloud = [c for c in q_coords if c is not None]
    for report in close:
        cube = report.cube
        sigma = report.permutation
        r, radius = _annulus_data(cube, M, (p_cloud, q_cloud))
        report.annulus_index = r
        report.hat_radius = radius
        p_hat = tuple(
            i
            for i in range(M)
            if p_coords[i] is not None
            and cube.dist_to_point(p_coords[i]) <= radius
        )
        q_hat = tuple(
            j
            for j in range(M)
            if q_coords[j] is not None
            and cube.dist_to_point(q_coords[j]) <= radius
        )
        report.p_hat = p_hat
        report.q_hat = q_hat
        checks.setdefault("hat_index_sets_match", True)
        if set(sigma[i] for i in p_hat) != set(q_hat):
            checks["hat_index_sets_match"] = False
            raise CertificateError(
                f"matching does not pair the hat sets of {cube!r}: "
                f"sigma({p_hat}) vs {q_hat}"
            )
        local = LocalMap(cube)
        for i in p_hat:
            xi = p_coords[i]
            yi = q_coords[sigma[i]]
            direct = float(np.linalg.norm(xi - yi))
            mapped = float(
                np.linalg.norm(local.apply_coords(xi) - local.apply_coords(yi))
            )
            tol = 1e-12 * (1.0 + direct + cube.side)
            checks.setdefault("hat_isometry", True)
            if abs(direct - mapped) > tol:
                checks["hat_isometry"] = False
                raise CertificateError(
                    f"local map not isometric on hat set of {cube!r}: "
                    f"|{direct} - {mapped}| > {tol}"
                )

    # glue per-cube matchings over the disjoint sets hat(Q_k) \ earlier hats,
    # enumerating non-increasing side lengths; the equal-index property of
    # overlapping hats forces sigma_k to map each block's p indices onto the
    # same block's q indices, which makes the glued map injective
    occupied = sorted(
        (r for r in close if r.p_hat or r.q_hat),
        key=lambda r: (-r.cube.generation, r.cube.corner),
    )
    order = [r.cube for r in occupied]
    tau = [-1] * M
    assigned: set[int] = set()
    blocks = []
    earlier: list[CubeReport] = []

    def in_earlier(x) -> bool:
        return any(
            rep.cube.dist_to_point(x) <= rep.hat_radius for rep in earlier
        )

    for report in occupied:
        sigma = report.permutation
        block = tuple(
            i for i in report.p_hat if not in_earlier(p_coords[i])
        )
        targets = set(
            j for j in report.q_hat if not in_earlier(q_coords[j])
        )
        checks.setdefault("block_targets_match", True)
        if set(sigma[i] for i in block) != targets:
            checks["block_targets_match"] = False
            raise CertificateError(
                f"glued block at {report.cube!r} does not map onto its own "
                f"targets: sigma({block}) vs {sorted(targets)}"
            )
        for i in block:
            tau[i] = sigma[i]
        assigned.update(block)
        blocks.append((report.cube, block))
        earlier.append(report)

    matched_targets = [tau[i] for i in sorted(assigned)]
    checks["glued_injective"] = len(set(matched_targets)) == len(matched_targets)
    if not checks["glued_injective"]:
        raise CertificateError("glued matching repeats a target index")
    # extend to a full bijection: smallest available target per remaining slot
    it = iter(sorted(set(range(M)) - set(matched_targets)))
    for i in range(M):
        if tau[i] < 0:
            tau[i] = next(it)
    checks["tau_bijection"] = sorted(tau) == list(range(M))
    if not checks["tau_bijection"]:
        raise CertificateError("extension failed to produce a bijection")

    matched_sq = 0.0
    for i in sorted(assigned):
        matched_sq += float(np.linalg.norm(p_coords[i] - q_coords[tau[i]])) ** 2
    boundary_sq = 0.0
    for i in range(M):
        if i in assigned:
            continue
        boundary_sq += (p_dist[i] + q_dist[tau[i]]) ** 2

    tau_shortcut_sq = 0.0
    for i in range(M):
        a = p_coords[i]
        b = q_coords[tau[i]]
        if a is None and b is None:
            continue
        if a is None:
            d = q_dist[tau[i]]
        elif b is None:
            d = p_dist[i]
        else:
            d = min(float(np.linalg.norm(a - b)), p_dist[i] + q_dist[tau[i]])
        tau_shortcut_sq += d * d

    w2 = wasserstein_tuples(p, q, 2.0, "shortcut") if M else 0.0
    total = close_total + far_total
    scale = constants.boundary * max(M, 1) ** 3

    def leq(name, lhs, rhs):
        checks[name] = lhs <= rhs + 1e-9 * (1.0 + abs(rhs))

    leq("matched_vs_close_cubes", matched_sq, close_total)
    leq("boundary_vs_far_cubes", boundary_sq, scale * far_total)
    leq("tau_vs_split", tau_shortcut_sq, matched_sq + boundary_sq)
    leq("w2_vs_tau", w2 ** 2, tau_shortcut_sq)
    leq("w2_vs_cubewise", w2 ** 2, scale * total)

    cert = LowerBoundCertificate(
        size=M,
        constants=constants,
        cubes=reports,
        order=order,
        blocks=blocks,
        tau=tuple(tau),
        matched_sq=matched_sq,
        boundary_sq=boundary_sq,
        close_total_sq=close_total,
        far_total_sq=far_total,
        cubewise_total_sq=total,
        tau_shortcut_sq=tau_shortcut_sq,
        w2_shortcut=w2,
        checks=checks,
    )
    if not cert.passed:
        bad = [k for k, v in checks.items() if not v]
        raise CertificateError(f"certificate inequalities failed: {bad}")
    return cert
