"""Transport distances between unordered point tuples on an open domain.

A tuple is a finite multiset of points of the one-point completion: interior
points of the domain plus any number of copies of the glued boundary point.
Two distances are provided.

``wasserstein_tuples``
    The p-Wasserstein distance between equal-size tuples, with ground metric
    either the shortcut metric of the completion or plain Euclidean distance.

``partial_wasserstein``
    The boundary-absorbing transport distance between tuples of arbitrary
    (possibly different) sizes: mass may be created or destroyed at the
    boundary, paying the distance to the complement.  Computed by one square
    assignment solve of size (k1+k2) after padding each side with boundary
    slots for the other side's points.

Padding with explicit boundary atoms never changes ``partial_wasserstein``,
and after padding both tuples to a common size the two distances agree; the
brute-force oracle ``partial_wasserstein_bruteforce`` checks this from the
other direction by enumerating partial matchings directly, without the
shortcut metric, the padding trick, or the assignment solver.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .assignment import min_assignment_cost
from .domains import (
    BOUNDARY,
    DomainDescriptor,
    DomainError,
    ShortcutPoint,
    domain_from_json,
)

__all__ = [
    "UnorderedTuple",
    "pad_with_boundary",
    "CostMatrix",
    "boundary_cost_matrix",
    "wasserstein_tuples",
    "wasserstein_vectors",
    "partial_wasserstein",
    "partial_wasserstein_bruteforce",
    "CouplingAtom",
    "DiscreteCoupling",
    "coupling_to_shortcut",
    "coupling_from_shortcut",
]

BRUTEFORCE_BUDGET = 12


class UnorderedTuple:
    """A multiset of completion points, stored canonically.

    Interior points are kept as a lexicographically sorted (k, n) array and
    boundary copies as a count, so structurally equal multisets compare equal.
    """

    __slots__ = ("domain", "interior", "boundary_count")

    def __init__(self, domain: DomainDescriptor, points=(), boundary_count: int = 0,
                 validate: bool = True):
        n = domain.dimension
        rows = [np.asarray(p, dtype=float) for p in points]
        for row in rows:
            if row.shape != (n,):
                raise DomainError(
                    f"tuple point dimension mismatch: expected {n}, "
                    f"got shape {row.shape}"
                )
        arr = np.array(rows, dtype=float) if rows else np.zeros((0, n))
        if validate:
            if not np.all(np.isfinite(arr)):
                raise DomainError("tuple points must be finite")
            for row in arr:
                if not domain.contains(row):
                    raise DomainError(
                        f"point {row.tolist()} is not an interior point of the domain"
                    )
        if boundary_count < 0 or int(boundary_count) != boundary_count:
            raise DomainError("boundary_count must be a non-negative integer")
        if len(arr):
            order = np.lexsort(arr.T[::-1])
            arr = arr[order]
        self.domain = domain
        self.interior = arr
        self.boundary_count = int(boundary_count)

    @classmethod
    def from_points(cls, domain: DomainDescriptor, pts) -> "UnorderedTuple":
        """Build from an iterable of :class:`ShortcutPoint`."""
        coords = [p.coords for p in pts if not p.is_boundary]
        b = sum(1 for p in pts if p.is_boundary)
        return cls(domain, coords, b)

    @property
    def size(self) -> int:
        return len(self.interior) + self.boundary_count

    @property
    def interior_count(self) -> int:
        return len(self.interior)

    @property
    def points(self) -> list[ShortcutPoint]:
        out = [ShortcutPoint.interior(row) for row in self.interior]
        out.extend([BOUNDARY] * self.boundary_count)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnorderedTuple):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.boundary_count == other.boundary_count
            and self.interior.shape == other.interior.shape
            and bool(np.all(self.interior == other.interior))
        )

    def __repr__(self) -> str:
        return (
            f"UnorderedTuple({len(self.interior)} interior, "
            f"{self.boundary_count} boundary)"
        )

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "points": [list(row) for row in self.interior.tolist()]
            if len(self.interior)
            else [],
            "boundary_count": self.boundary_count,
        }

    @classmethod
    def from_json(cls, data: dict) -> "UnorderedTuple":
        if not isinstance(data, dict) or "domain" not in data:
            raise DomainError("tuple JSON must be an object with a 'domain' field")
        domain = domain_from_json(data["domain"])
        return cls(domain, data.get("points", ()), data.get("boundary_count", 0))

    @classmethod
    def load(cls, path) -> "UnorderedTuple":
        return cls.from_json(json.loads(Path(path).read_text()))

    def save(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n")


def pad_with_boundary(t: UnorderedTuple, m: int) -> UnorderedTuple:
    """Append boundary copies until the tuple has size 2*m.

    Requires ``t.size <= m``.  This is the tuple-level counterpart of adding
    an infinite reservoir of boundary mass: padding both sides of a pair to a
    common size turns the partial distance into an ordinary Wasserstein
    distance over the shortcut metric.
    """
    if t.size > m:
        raise DomainError(f"tuple of size {t.size} does not fit budget m={m}")
    extra = 2 * m - t.size
    return UnorderedTuple(
        t.domain, t.interior, t.boundary_count + extra, validate=False
    )


def _check_pair(p: UnorderedTuple, q: UnorderedTuple) -> None:
    if p.domain != q.domain:
        raise DomainError("tuples live on different domains")


def _check_exponent(exponent: float) -> float:
    e = float(exponent)
    if not e >= 1.0:
        raise ValueError(f"exponent must be >= 1, got {exponent}")
    return e


def _euclidean_block(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) == 0 or len(b) == 0:
        return np.zeros((len(a), len(b)))
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def _delta_matrix(p: UnorderedTuple, q: UnorderedTuple) -> np.ndarray:
    """Pairwise shortcut distances in canonical point order (interiors, then
    boundary copies)."""
    domain = p.domain
    ka, ba = p.interior_count, p.boundary_count
    kb, bb = q.interior_count, q.boundary_count
    out = np.zeros((ka + ba, kb + bb))
    da = domain.dist_many(p.interior) if ka else np.zeros(0)
    db = domain.dist_many(q.interior) if kb else np.zeros(0)
    if ka and kb:
        eu = _euclidean_block(p.interior, q.interior)
        out[:ka, :kb] = np.minimum(eu, da[:, None] + db[None, :])
    if ka and bb:
        out[:ka, kb:] = da[:, None]
    if ba and kb:
        out[ka:, :kb] = db[None, :]
    return out


@dataclass
class CostMatrix:
    """Square boundary-padded cost matrix with row/column provenance labels.

    Labels are ``("point", i)`` for the i-th canonical point of the source or
    target tuple and ``("pad",)`` for a padding boundary slot.
    """

    values: np.ndarray
    row_labels: tuple
    col_labels: tuple


def boundary_cost_matrix(p: UnorderedTuple, q: UnorderedTuple,
                         exponent: float = 2.0) -> CostMatrix:
    """The (k1+k2)-square matrix solved by :func:`partial_wasserstein`.

    Rows are the points of ``p`` followed by k2 boundary pads, columns the
    points of ``q`` followed by k1 pads; entries are shortcut distances raised
    to ``exponent``, so pad-vs-pad entries are exactly 0.
    """
    _check_pair(p, q)
    e = _check_exponent(exponent)
    domain = p.domain
    sa, sb = p.size, q.size
    values = np.zeros((sa + sb, sa + sb))
    values[:sa, :sb] = _delta_matrix(p, q)
    dp = np.concatenate(
        [domain.dist_many(p.interior) if p.interior_count else np.zeros(0),
         np.zeros(p.boundary_count)]
    )
    dq = np.concatenate(
        [domain.dist_many(q.interior) if q.interior_count else np.zeros(0),
         np.zeros(q.boundary_count)]
    )
    if sa:
        values[:sa, sb:] = dp[:, None]
    if sb:
        values[sa:, :sb] = dq[None, :]
    if e != 1.0:
        values = values ** e
    row_labels = tuple(("point", i) for i in range(sa)) + (("pad",),) * sb
    col_labels = tuple(("point", j) for j in range(sb)) + (("pad",),) * sa
    return CostMatrix(values, row_labels, col_labels)


def wasserstein_tuples(p: UnorderedTuple, q: UnorderedTuple,
                       exponent: float = 2.0, ground: str = "shortcut") -> float:
    """p-Wasserstein distance between equal-size tuples.

    ``ground`` selects the metric: ``"shortcut"`` (default) uses the one-point
    completion, ``"euclidean"`` uses raw coordinate distance and rejects
    boundary atoms.
    """
    _check_pair(p, q)
    e = _check_exponent(exponent)
    if p.size != q.size:
        raise DomainError(
            f"wasserstein_tuples requires equal sizes, got {p.size} and {q.size}"
        )
    if ground == "shortcut":
        cost = _delta_matrix(p, q)
    elif ground == "euclidean":
        if p.boundary_count or q.boundary_count:
            raise DomainError("euclidean ground metric does not accept boundary atoms")
        cost = _euclidean_block(p.interior, q.interior)
    else:
        raise ValueError(f"unknown ground metric {ground!r}")
    if e != 1.0:
        cost = cost ** e
    return min_assignment_cost(cost) ** (1.0 / e)


def wasserstein_vectors(a: np.ndarray, b: np.ndarray, exponent: float = 2.0) -> float:
    """p-Wasserstein distance between two equal-size multisets of R^k vectors."""
    e = _check_exponent(exponent)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"vector tuples differ in shape: {a.shape} vs {b.shape}")
    cost = _euclidean_block(a, b)
    if e != 1.0:
        cost = cost ** e
    return min_assignment_cost(cost) ** (1.0 / e)


def partial_wasserstein(p: UnorderedTuple, q: UnorderedTuple,
                        exponent: float = 2.0) -> float:
    """Boundary-absorbing transport distance between tuples of any sizes."""
    e = _check_exponent(exponent)
    matrix = boundary_cost_matrix(p, q, e)
    return min_assignment_cost(matrix.values) ** (1.0 / e)


def partial_wasserstein_bruteforce(p: UnorderedTuple, q: UnorderedTuple,
                                   exponent: float = 2.0) -> float:
    """Exhaustive oracle for :func:`partial_wasserstein`.

    Enumerates every partial matching between interior points; unmatched
    points pay their distance to the complement, raised to ``exponent``.
    Boundary atoms carry no mass on the domain and are ignored.  No shortcut
    metric, padding, or assignment solver is involved.  Guarded by a budget of
    ``interior(p) + interior(q) <= 12``.
    """
    _check_pair(p, q)
    e = _check_exponent(exponent)
    A = p.interior
    B = q.interior
    ka, kb = len(A), len(B)
    if ka + kb > BRUTEFORCE_BUDGET:
        raise ValueError(
            f"brute-force budget exceeded: {ka}+{kb} interior points > {BRUTEFORCE_BUDGET}"
        )
    da = [p.domain.dist_to_complement(x) ** e for x in A]
    db = [q.domain.dist_to_complement(y) ** e for y in B]
    pair = [[float(np.linalg.norm(A[i] - B[j])) ** e for j in range(kb)]
            for i in range(ka)]
    base = sum(da) + sum(db)
    best = base
    for s in range(1, min(ka, kb) + 1):
        for rows in itertools.combinations(range(ka), s):
            for cols in itertools.permutations(range(kb), s):
                total = base
                for i, j in zip(rows, cols):
                    total += pair[i][j] - da[i] - db[j]
                if total < best:
                    best = total
    if best < 0.0:
        best = 0.0
    return best ** (1.0 / e)


# ---------------------------------------------------------------------------
# discrete couplings and the two cost-preserving transforms
# ---------------------------------------------------------------------------


@dataclass
class CouplingAtom:
    """One weighted source-target pair; ``None`` marks the glued boundary point."""

    src: tuple[float, ...] | None
    dst: tuple[float, ...] | None
    mass: float


class DiscreteCoupling:
    """A finite weighted list of source-target pairs over one domain.

    Endpoints are raw coordinate tuples (which may lie outside the domain,
    e.g. before applying :func:`coupling_to_shortcut`) or ``None`` for the
    glued boundary point.
    """

    def __init__(self, domain: DomainDescriptor, atoms):
        self.domain = domain
        checked = []
        n = domain.dimension
        for atom in atoms:
            src, dst, mass = atom.src, atom.dst, atom.mass
            if src is not None:
                src = tuple(float(c) for c in src)
                if len(src) != n:
                    raise DomainError("coupling source dimension mismatch")
            if dst is not None:
                dst = tuple(float(c) for c in dst)
                if len(dst) != n:
                    raise DomainError("coupling target dimension mismatch")
            mass = float(mass)
            if not (mass > 0.0 and math.isfinite(mass)):
                raise DomainError("coupling masses must be positive and finite")
            checked.append(CouplingAtom(src, dst, mass))
        self.atoms = checked

    def __len__(self) -> int:
        return len(self.atoms)

    def euclidean_cost(self, exponent: float = 2.0) -> float:
        """(sum of mass * |src-dst|^p)^(1/p); endpoints must have coordinates."""
        e = _check_exponent(exponent)
        total = 0.0
        for atom in self.atoms:
            if atom.src is None or atom.dst is None:
                raise DomainError("euclidean cost undefined for boundary endpoints")
            d = float(np.linalg.norm(np.array(atom.src) - np.array(atom.dst)))
            total += atom.mass * d ** e
        return total ** (1.0 / e)

    def shortcut_cost(self, exponent: float = 2.0) -> float:
        """Shortcut-metric cost; coordinate endpoints must be interior."""
        e = _check_exponent(exponent)
        total = 0.0
        for atom in self.atoms:
            a = BOUNDARY if atom.src is None else ShortcutPoint.interior(atom.src)
            b = BOUNDARY if atom.dst is None else ShortcutPoint.interior(atom.dst)
            total += atom.mass * self.domain.shortcut_distance(a, b) ** e
        return total ** (1.0 / e)

    def to_json(self) -> list:
        def enc(end):
            return "boundary" if end is None else list(end)

        return [
            {"src": enc(a.src), "dst": enc(a.dst), "mass": a.mass} for a in self.atoms
        ]

    @classmethod
    def from_json(cls, domain: DomainDescriptor, data) -> "DiscreteCoupling":
        def dec(end):
            if end == "boundary":
                return None
            return tuple(end)

        atoms = [CouplingAtom(dec(d["src"]), dec(d["dst"]), d["mass"]) for d in data]
        return cls(domain, atoms)


def coupling_to_shortcut(gamma: DiscreteCoupling) -> DiscreteCoupling:
    """Project endpoints outside the domain to the glued boundary point.

    The resulting shortcut cost never exceeds the Euclidean cost of the
    input: interior pairs can only get cheaper under the shortcut metric, and
    an endpoint in the complement is at least as far as the nearest
    complement point.
    """
    domain = gamma.domain
    out = []
    for atom in gamma.atoms:
        src = atom.src
        dst = atom.dst
        if src is not None and not domain.contains(np.array(src)):
            src = None
        if dst is not None and not domain.contains(np.array(dst)):
            dst = None
        out.append(CouplingAtom(src, dst, atom.mass))
    return DiscreteCoupling(domain, out)


def coupling_from_shortcut(gamma: DiscreteCoupling) -> DiscreteCoupling:
    """Replace boundary shortcuts by explicit complement-point legs.

    Pairs whose shortcut distance is realized by the straight segment are
    kept.  Every other pair (including pairs with a boundary endpoint) is
    split into its source moving to the nearest complement point and its
    target arriving from one, each leg carrying the full mass.  Boundary-to-
    boundary atoms vanish.  The Euclidean cost of the result is at most the
    shortcut cost of the input, and the restricted marginals are unchanged.
    """
    domain = gamma.domain
    out = []
    for atom in gamma.atoms:
        src, dst = atom.src, atom.dst
        if src is None and dst is None:
            continue
        if src is not None:
            xs = domain.check_interior(np.array(src))
        if dst is not None:
            xt = domain.check_interior(np.array(dst))
        if src is not None and dst is not None:
            direct = float(np.linalg.norm(xs - xt))
            through = domain.dist_to_complement(xs) + domain.dist_to_complement(xt)
            if direct <= through:
                out.append(CouplingAtom(src, dst, atom.mass))
                continue
        if src is not None:
            c = domain.nearest_complement_point(xs)
            out.append(CouplingAtom(src, tuple(c.tolist()), atom.mass))
        if dst is not None:
            c = domain.nearest_complement_point(xt)
            out.append(CouplingAtom(tuple(c.tolist()), dst, atom.mass))
    return DiscreteCoupling(domain, out)
