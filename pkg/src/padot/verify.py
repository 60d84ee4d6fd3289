"""Seeded verification suites for every advertised invariant.

Each suite draws its own deterministic sample, checks one family of claims,
and returns a :class:`SuiteResult` with a count of executed checks and the
first few failure descriptions.  ``run_all`` executes the full battery; the
``verify`` CLI subcommand and the acceptance tests are thin wrappers around
it.  Suites tagged with a criterion number correspond to the numbered
acceptance checks in the test suite; untagged suites cover module-level
invariants (metric axioms, assignment oracle agreement).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import assignment
from .assignment import (
    assignment_bruteforce,
    assignment_solve,
    min_assignment_cost,
)
from .barcodes import BarcodeDiagram, barcode_distance
from .domains import (
    BOUNDARY,
    ComplementOfClosedBox,
    DomainError,
    OpenBox,
    PuncturedSpace,
    ShortcutPoint,
    UpperDiagonalHalfPlane,
)
from .embedding import (
    CertificateError,
    DirectionFamily,
    EmbeddingConstants,
    LocalMap,
    TupleField,
    embed_tuple,
    lower_bound_certificate,
    sketch_field,
    tuple_sketch,
)
from .sampling import (
    default_descriptors,
    sample_interior,
    sample_raw_coupling,
    sample_shortcut_coupling,
    sample_tuple,
)
from .transport import (
    UnorderedTuple,
    coupling_from_shortcut,
    coupling_to_shortcut,
    pad_with_boundary,
    partial_wasserstein,
    partial_wasserstein_bruteforce,
    wasserstein_tuples,
    wasserstein_vectors,
)
from .whitney import WhitneyDecomposition
from .witness import nondoubling_witness

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_all", "DEFAULT_SEED"]

DEFAULT_SEED = 1729
_MAX_REPORTED = 5


@dataclass
class SuiteResult:
    name: str
    criterion: int | None
    checked: int
    failure_count: int
    failures: list[str]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        tag = (
            f"acceptance criterion {self.criterion}"
            if self.criterion is not None
            else "module invariants"
        )
        out = f"[{status}] {self.name}: {self.checked} checks ({tag})"
        if self.failure_count:
            out += f"; {self.failure_count} failures, e.g. {self.failures[0]}"
        return out


class _Recorder:
    """Counts checks; failure messages are built lazily and capped."""

    def __init__(self):
        self.checked = 0
        self.failure_count = 0
        self.failures: list[str] = []
        self.notes: list[str] = []

    def ok(self, cond: bool, msg) -> bool:
        self.checked += 1
        if not cond:
            self.failure_count += 1
            if len(self.failures) < _MAX_REPORTED:
                self.failures.append(msg() if callable(msg) else str(msg))
        return cond

    def note(self, text: str) -> None:
        self.notes.append(text)

    def result(self, name: str, criterion: int | None) -> SuiteResult:
        return SuiteResult(
            name, criterion, self.checked, self.failure_count,
            self.failures, self.notes,
        )


def _rng(seed: int, lane: int) -> np.random.Generator:
    return np.random.default_rng([seed, lane])


def _sample_completion_point(domain, rng, boundary_prob=0.15) -> ShortcutPoint:
    if rng.random() < boundary_prob:
        return BOUNDARY
    return ShortcutPoint.interior(sample_interior(domain, rng))


# ---------------------------------------------------------------------------
# module-invariant suites
# ---------------------------------------------------------------------------


def suite_domain_metric(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Metric axioms of the completion and the complement-distance oracles."""
    rec = _Recorder()
    rng = _rng(seed, 1)
    for descriptor in default_descriptors():
        name = type(descriptor).__name__
        for _ in range(200):
            a = _sample_completion_point(descriptor, rng)
            b = _sample_completion_point(descriptor, rng)
            c = _sample_completion_point(descriptor, rng)
            dab = descriptor.shortcut_distance(a, b)
            dba = descriptor.shortcut_distance(b, a)
            dbc = descriptor.shortcut_distance(b, c)
            dac = descriptor.shortcut_distance(a, c)
            rec.ok(dab >= 0.0, lambda: f"{name}: negative distance {dab}")
            rec.ok(dab == dba, lambda: f"{name}: asymmetric {dab} vs {dba}")
            rec.ok(
                descriptor.shortcut_distance(a, a) == 0.0,
                lambda: f"{name}: self-distance nonzero at {a}",
            )
            tol = 1e-12 * (1.0 + dab + dbc)
            rec.ok(
                dac <= dab + dbc + tol,
                lambda: f"{name}: triangle fails {dac} > {dab}+{dbc}",
            )
            if not a.is_boundary:
                x = a.as_array()
                d = descriptor.dist_to_complement(x)
                rec.ok(
                    descriptor.shortcut_distance(a, BOUNDARY) == d,
                    lambda: f"{name}: boundary distance mismatch at {a}",
                )
                nc = descriptor.nearest_complement_point(x)
                rec.ok(
                    not descriptor.contains(nc),
                    lambda: f"{name}: nearest complement point {nc} is interior",
                )
                gap = abs(float(np.linalg.norm(x - nc)) - d)
                rec.ok(
                    gap <= 1e-12 * (1.0 + d),
                    lambda: f"{name}: complement point off by {gap:.3e} at {a}",
                )
    return rec.result("domain-metric", None)


def suite_assignment(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Square assignment solver against exhaustive enumeration."""
    rec = _Recorder()
    rng = _rng(seed, 2)
    backends = assignment.available_backends()
    rec.note(f"backends available: {', '.join(backends)}; "
             f"active: {assignment.BACKEND_NAME}")
    for _ in range(300):
        n = int(rng.integers(1, 8))
        cost = rng.random((n, n))
        if rng.random() < 0.5:
            cost = np.round(cost * 4.0) / 4.0  # exact ties
        perm_b, total_b = assignment_bruteforce(cost)
        total = min_assignment_cost(cost)
        perm, total_s = assignment_solve(cost)
        tol = 1e-12 * (1.0 + abs(total_b))
        rec.ok(
            abs(total - total_b) <= tol,
            lambda: f"n={n}: cost {total} vs oracle {total_b}",
        )
        rec.ok(
            abs(total_s - total_b) <= tol,
            lambda: f"n={n}: refined cost {total_s} vs oracle {total_b}",
        )
        rec.ok(
            np.array_equal(perm, perm_b),
            lambda: f"n={n}: tie-broken permutation {perm.tolist()} "
                    f"vs oracle {perm_b.tolist()}",
        )
        direct = float(sum(cost[i, perm[i]] for i in range(n)))
        rec.ok(
            abs(direct - total_s) <= tol,
            lambda: f"n={n}: reported total {total_s} != recomputed {direct}",
        )
        for backend_name in backends:
            module = assignment._BACKENDS[backend_name]
            flat = np.ascontiguousarray(cost, dtype=float).ravel()
            arg = flat.tolist() if backend_name == "python" else flat
            bperm, btotal = module.solve_lexmin(arg, n)
            rec.ok(
                abs(btotal - total_b) <= tol
                and list(bperm) == perm_b.tolist(),
                lambda: f"n={n}: backend {backend_name} disagrees with oracle",
            )
    return rec.result("assignment", None)


# ---------------------------------------------------------------------------
# acceptance-criterion suites
# ---------------------------------------------------------------------------


def suite_partial_isometry(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 1: solver distance == brute-force partial matching."""
    rec = _Recorder()
    rng = _rng(seed, 3)
    for descriptor in default_descriptors():
        name = type(descriptor).__name__
        for _ in range(200):
            p = sample_tuple(descriptor, rng, 4)
            q = sample_tuple(descriptor, rng, 4)
            for exponent in (1.0, 2.0):
                wb = partial_wasserstein(p, q, exponent)
                oracle = partial_wasserstein_bruteforce(p, q, exponent)
                rec.ok(
                    abs(wb - oracle) <= 1e-9,
                    lambda: f"{name} e={exponent}: wb {wb!r} vs "
                            f"brute force {oracle!r}",
                )
                padded = wasserstein_tuples(
                    pad_with_boundary(p, 4), pad_with_boundary(q, 4),
                    exponent, "shortcut",
                )
                rec.ok(
                    abs(padded - wb) <= 1e-9,
                    lambda: f"{name} e={exponent}: padded distance {padded!r} "
                            f"vs wb {wb!r}",
                )
                extra = UnorderedTuple(
                    descriptor, p.interior, p.boundary_count + 2,
                    validate=False,
                )
                again = partial_wasserstein(extra, q, exponent)
                rec.ok(
                    abs(again - wb) <= 1e-9,
                    lambda: f"{name} e={exponent}: boundary padding moved wb "
                            f"{wb!r} -> {again!r}",
                )
    return rec.result("partial-isometry", 1)


def _restricted_marginal(domain, coupling, side: str):
    out = []
    for atom in coupling.atoms:
        end = getattr(atom, side)
        if end is not None and domain.contains(np.array(end)):
            out.append((end, atom.mass))
    return sorted(out)


def suite_coupling_transforms(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 2: the two cost-preserving coupling transforms."""
    rec = _Recorder()
    rng = _rng(seed, 4)
    descriptors = default_descriptors()
    for i in range(1000):
        descriptor = descriptors[i % len(descriptors)]
        name = type(descriptor).__name__

        raw = sample_raw_coupling(descriptor, rng)
        projected = coupling_to_shortcut(raw)
        for exponent in (1.0, 2.0):
            eu = raw.euclidean_cost(exponent)
            sc = projected.shortcut_cost(exponent)
            rec.ok(
                sc <= eu,
                lambda: f"{name} e={exponent}: shortcut cost {sc!r} exceeds "
                        f"euclidean {eu!r}",
            )
        for side in ("src", "dst"):
            rec.ok(
                _restricted_marginal(descriptor, raw, side)
                == _restricted_marginal(descriptor, projected, side),
                lambda: f"{name}: projection changed the restricted "
                        f"{side} marginal",
            )

        shortcut = sample_shortcut_coupling(descriptor, rng)
        expanded = coupling_from_shortcut(shortcut)
        for exponent in (1.0, 2.0):
            sc = shortcut.shortcut_cost(exponent)
            eu = expanded.euclidean_cost(exponent)
            rec.ok(
                eu <= sc + 1e-12,
                lambda: f"{name} e={exponent}: euclidean cost {eu!r} exceeds "
                        f"shortcut {sc!r}",
            )
        for side in ("src", "dst"):
            rec.ok(
                _restricted_marginal(descriptor, shortcut, side)
                == _restricted_marginal(descriptor, expanded, side),
                lambda: f"{name}: expansion changed the restricted "
                        f"{side} marginal",
            )
    return rec.result("coupling-transforms", 2)


_WHITNEY_DESCRIPTORS = (
    OpenBox((0.0,), (1.0,)),
    OpenBox((-1.0, 0.0), (2.0, 1.0)),
    UpperDiagonalHalfPlane(),
    PuncturedSpace(((0.25, -0.5), (1.0, 1.0))),
)


def _interiors_overlap(a, b) -> bool:
    return bool(
        np.all(np.maximum(a.low, b.low) < np.minimum(a.high, b.high))
    )


def _closed_cubes_touch(a, b) -> bool:
    return bool(
        np.all(np.maximum(a.low, b.low) <= np.minimum(a.high, b.high))
    )


def suite_whitney(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 3: decomposition properties and the metric estimates."""
    rec = _Recorder()
    rng = _rng(seed, 5)
    for descriptor in _WHITNEY_DESCRIPTORS:
        name = type(descriptor).__name__
        n = descriptor.dimension
        root_n = math.sqrt(n)
        W = WhitneyDecomposition(descriptor)
        seen: set[tuple] = set()

        def check_cube(Q):
            if Q.key() in seen:
                return
            seen.add(Q.key())
            side = Q.side
            dist = descriptor.dist_cube_to_complement(Q.low, Q.high)
            rec.ok(
                dist >= root_n * side,
                lambda: f"{name} {Q!r}: dist to complement {dist} below "
                        f"sqrt(n)*side",
            )
            rec.ok(
                dist <= 4.0 * root_n * side,
                lambda: f"{name} {Q!r}: dist to complement {dist} above "
                        f"4*sqrt(n)*side",
            )
            nbs = W.neighbors(Q)
            rec.ok(
                len(nbs) <= 12 ** n,
                lambda: f"{name} {Q!r}: {len(nbs)} neighbors exceeds 12^n",
            )
            rec.ok(Q in nbs, lambda: f"{name} {Q!r}: not its own neighbor")
            for R in nbs:
                rec.ok(
                    abs(R.generation - Q.generation) <= 2,
                    lambda: f"{name}: neighbor side ratio outside [1/4,4] "
                            f"for {Q!r} and {R!r}",
                )
                rec.ok(
                    _closed_cubes_touch(Q, R),
                    lambda: f"{name}: listed neighbor {R!r} does not touch {Q!r}",
                )
                rec.ok(
                    Q in W.neighbors(R),
                    lambda: f"{name}: neighbor relation asymmetric for "
                            f"{Q!r} and {R!r}",
                )
            for i in range(len(nbs)):
                for j in range(i + 1, len(nbs)):
                    rec.ok(
                        not _interiors_overlap(nbs[i], nbs[j]),
                        lambda: f"{name}: interiors of {nbs[i]!r} and "
                                f"{nbs[j]!r} overlap",
                    )

        for _ in range(2500):
            x = sample_interior(descriptor, rng)
            Q = W.cube_containing(x)
            rec.ok(
                W.is_whitney_cube(Q),
                lambda: f"{name}: containing cube {Q!r} not selected",
            )
            rec.ok(
                Q.dist_to_point(x) == 0.0,
                lambda: f"{name}: {x.tolist()} outside its cube {Q!r}",
            )
            check_cube(Q)
            for R in W.neighbors(Q):
                check_cube(R)

        for _ in range(2500):
            x = sample_interior(descriptor, rng)
            y = sample_interior(descriptor, rng)
            report = W.check_shortcut_estimates(x, y)
            rec.ok(
                report.passed,
                lambda: f"{name}: estimates failed {report.failures()} for "
                        f"{x.tolist()} vs {y.tolist()}",
            )
        rec.note(f"{name}: {len(seen)} distinct cubes checked")
    return rec.result("whitney", 3)


def suite_local_maps(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 4: the six properties of the per-cube local maps."""
    rec = _Recorder()
    rng = _rng(seed, 6)
    decompositions = [
        (d, WhitneyDecomposition(d)) for d in _WHITNEY_DESCRIPTORS
    ]
    for i in range(10_000):
        descriptor, W = decompositions[i % len(decompositions)]
        name = type(descriptor).__name__
        n = descriptor.dimension
        lip = 9.0 * math.sqrt(n + 1)
        norm_cap = math.sqrt(n + 1)
        x = sample_interior(descriptor, rng)
        Q = W.cube_containing(x)
        local = LocalMap(Q)
        side = Q.side
        fx = local.apply_coords(x)

        # (2) zero at the glued point and outside the support neighborhood
        rec.ok(
            not np.any(local.apply(BOUNDARY)),
            lambda: f"{name} {Q!r}: glued point has nonzero image",
        )
        z = x + rng.normal(size=n) * side
        if Q.dist_to_point(z) > side / 4.0:
            rec.ok(
                not np.any(local.apply_coords(z)),
                lambda: f"{name} {Q!r}: nonzero image outside B(Q, side/4)",
            )

        # (1) euclidean Lipschitz bound and (3) the norm cap
        y = None
        for _ in range(50):
            cand = x + rng.normal(size=n) * side * (0.05 + 2.0 * rng.random())
            if descriptor.contains(cand):
                y = cand
                break
        if y is not None:
            fy = local.apply_coords(y)
            gap = float(np.linalg.norm(fx - fy))
            rec.ok(
                gap <= lip * float(np.linalg.norm(x - y)),
                lambda: f"{name} {Q!r}: euclidean Lipschitz ratio exceeded",
            )
            rec.ok(
                float(np.linalg.norm(fy)) <= norm_cap * side,
                lambda: f"{name} {Q!r}: norm cap exceeded at {y.tolist()}",
            )
        rec.ok(
            float(np.linalg.norm(fx)) <= norm_cap * side,
            lambda: f"{name} {Q!r}: norm cap exceeded at {x.tolist()}",
        )

        # (4) isometry within the inner neighborhood B(Q, side/8)
        inner = None
        lo = Q.low - side / 8.0
        hi = Q.high + side / 8.0
        for _ in range(50):
            cand = lo + rng.random(n) * (hi - lo)
            if Q.dist_to_point(cand) <= side / 8.0 and descriptor.contains(cand):
                inner = cand
                break
        if inner is not None:
            mapped = float(np.linalg.norm(fx - local.apply_coords(inner)))
            direct = float(np.linalg.norm(x - inner))
            rec.ok(
                abs(mapped - direct) <= 1e-12,
                lambda: f"{name} {Q!r}: inner isometry off by "
                        f"{abs(mapped - direct):.3e}",
            )

        # (5) shortcut Lipschitz bound and (6) the lower bound, with the
        # glued point included
        if rng.random() < 0.3:
            w = BOUNDARY
            fw = local.apply(BOUNDARY)
            dx = descriptor.shortcut_distance(
                ShortcutPoint.interior(x), BOUNDARY
            )
            lower = side
        else:
            pt = sample_interior(descriptor, rng)
            w = ShortcutPoint.interior(pt)
            fw = local.apply_coords(pt)
            dx = descriptor.shortcut_distance_coords(x, pt)
            lower = min(
                float(np.linalg.norm(x - pt)) / (2.0 * math.sqrt(n)), side
            )
        gap = float(np.linalg.norm(fx - fw))
        rec.ok(
            gap <= lip * dx,
            lambda: f"{name} {Q!r}: shortcut Lipschitz ratio exceeded "
                    f"against {w!r}",
        )
        rec.ok(
            gap >= lower,
            lambda: f"{name} {Q!r}: lower bound {lower} not met "
                    f"against {w!r} (got {gap})",
        )
    return rec.result("local-maps", 4)


# ---------------------------------------------------------------------------
# shared data for the sandwich, certificate, and embedding suites
# ---------------------------------------------------------------------------


@dataclass
class _PairRecord:
    m: int
    padded_size: int
    w2: float
    field_sq: float
    wb: float
    zeta: float
    certificate: object
    error: str | None


@lru_cache(maxsize=4)
def _sandwich_data(seed: int):
    domain = OpenBox((0.0, 0.0), (1.0, 1.0))
    W = WhitneyDecomposition(domain)
    family = DirectionFamily.build(domain.dimension + 1, 2)
    constants = EmbeddingConstants.for_dimension(domain.dimension)
    rng = _rng(seed, 7)
    records = []
    for _ in range(500):
        m = int(rng.integers(1, 4))
        p = sample_tuple(domain, rng, m)
        q = sample_tuple(domain, rng, m)
        pp = pad_with_boundary(p, m)
        qq = pad_with_boundary(q, m)
        w2 = wasserstein_tuples(pp, qq, 2.0, "shortcut")
        fp = TupleField.project(W, pp)
        fq = TupleField.project(W, qq)
        field_sq = fp.distance_sq(fq)
        wb = partial_wasserstein(p, q, 2.0)
        zeta = sketch_field(fp, family).distance(sketch_field(fq, family))
        cert = None
        error = None
        try:
            cert = lower_bound_certificate(W, pp, qq)
        except CertificateError as exc:
            error = str(exc)
        records.append(
            _PairRecord(m, pp.size, w2, field_sq, wb, zeta, cert, error)
        )
    return domain, W, family, constants, records


def suite_sandwich(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 5: two-sided comparison of cube-wise and direct distances."""
    rec = _Recorder()
    _, _, _, constants, records = _sandwich_data(seed)
    worst_upper = 0.0
    worst_lower = 0.0
    for i, r in enumerate(records):
        upper = constants.upper * r.w2 ** 2
        rec.ok(
            r.field_sq <= upper,
            lambda: f"pair {i}: cube-wise total {r.field_sq!r} exceeds "
                    f"c0*W2^2 = {upper!r}",
        )
        scale = constants.boundary * r.padded_size ** 3
        rec.ok(
            r.w2 ** 2 <= scale * r.field_sq,
            lambda: f"pair {i}: W2^2 {r.w2 ** 2!r} exceeds c2*M^3 * "
                    f"cube-wise total {scale * r.field_sq!r}",
        )
        if r.w2 > 0.0:
            worst_upper = max(worst_upper, r.field_sq / r.w2 ** 2)
            if r.field_sq > 0.0:
                worst_lower = max(
                    worst_lower, r.w2 ** 2 / (scale * r.field_sq)
                )
    rec.note(
        f"sharpest upper ratio {worst_upper:.3f} of c0={constants.upper:.0f}; "
        f"sharpest lower ratio {worst_lower:.3e} of 1"
    )
    return rec.result("sandwich", 5)


def suite_certificate(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 6: the lower-bound audit trail on the sandwich pairs."""
    rec = _Recorder()
    _, _, _, constants, records = _sandwich_data(seed)
    close_counts = []
    for i, r in enumerate(records):
        if not rec.ok(
            r.error is None,
            lambda: f"pair {i}: certificate construction failed: {r.error}",
        ):
            continue
        cert = r.certificate
        rec.ok(cert.passed, lambda: f"pair {i}: checks failed {cert.checks}")
        gap = abs(cert.cubewise_total_sq - r.field_sq)
        rec.ok(
            gap <= 1e-9 * (1.0 + r.field_sq),
            lambda: f"pair {i}: certificate total {cert.cubewise_total_sq!r} "
                    f"!= field distance {r.field_sq!r}",
        )
        rec.ok(
            sorted(cert.tau) == list(range(cert.size)),
            lambda: f"pair {i}: tau is not a bijection",
        )
        close_counts.append(sum(1 for c in cert.cubes if c.close_match))
    if close_counts:
        rec.note(
            f"close-match cubes per pair: min {min(close_counts)}, "
            f"max {max(close_counts)}"
        )
    return rec.result("certificate", 6)


def suite_sketch_embedding(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 7: sketch Lipschitz property and embedded distances."""
    rec = _Recorder()
    rng = _rng(seed, 8)
    family3 = DirectionFamily.build(3, 2)
    for _ in range(1000):
        M = int(rng.integers(1, 7))
        a = rng.normal(size=(M, 3))
        b = rng.normal(size=(M, 3))
        da = float(
            np.linalg.norm(tuple_sketch(a, family3) - tuple_sketch(b, family3))
        )
        w = wasserstein_vectors(a, b, 2.0)
        rec.ok(
            da <= w + 1e-12,
            lambda: f"sketch not 1-Lipschitz: {da!r} vs W2 {w!r}",
        )
        perm = rng.permutation(M)
        rec.ok(
            np.array_equal(tuple_sketch(a[perm], family3),
                           tuple_sketch(a, family3)),
            lambda: "sketch changed under row permutation",
        )
    rec.ok(
        not np.any(tuple_sketch(np.zeros((4, 3)), family3)),
        lambda: "sketch of the zero tuple is nonzero",
    )

    domain, W, family, constants, records = _sandwich_data(seed)
    cap = math.sqrt(constants.upper)
    ratios = []
    for i, r in enumerate(records):
        rec.ok(
            r.zeta <= cap * r.wb,
            lambda: f"pair {i}: embedded distance {r.zeta!r} exceeds "
                    f"sqrt(c0)*Wb = {cap * r.wb!r}",
        )
        if r.wb > 1e-12:
            ratios.append(r.zeta / r.wb)
    if ratios:
        lo, hi = min(ratios), max(ratios)
        distortion = hi / lo if lo > 0 else math.inf
        rec.note(
            f"empirical embedded/true ratios in [{lo:.4f}, {hi:.4f}], "
            f"distortion {distortion:.1f} (reference shape c*m^(n+5/2) ~ "
            f"{3 ** (domain.dimension + 2.5):.0f} for m=3 up to an "
            f"unspecified constant c)"
        )
    rng2 = _rng(seed, 9)
    for _ in range(50):
        m = int(rng2.integers(1, 4))
        t = sample_tuple(domain, rng2, m)
        plus = UnorderedTuple(
            domain, t.interior, t.boundary_count + (m - t.size), validate=False
        )
        emb_a = embed_tuple(W, family, t, m)
        emb_b = embed_tuple(W, family, plus, m)
        rec.ok(
            emb_a.to_json() == emb_b.to_json(),
            lambda: "embedding changed under explicit boundary padding",
        )
    return rec.result("sketch-embedding", 7)


def suite_nondoubling(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 8: the pinned witness configuration on the unit square."""
    rec = _Recorder()
    epsilon = 0.01
    witness = nondoubling_witness(OpenBox((0.0, 0.0), (1.0, 1.0)), 20, epsilon)
    rec.ok(witness.count == 20, lambda: f"expected 20 points, got {witness.count}")
    pts = [ShortcutPoint.interior(row) for row in witness.points]
    for i in range(len(pts)):
        row = witness.points[i]
        rec.ok(
            abs(witness.domain.dist_to_complement(row) - epsilon / 2)
            <= 1e-12,
            lambda: f"point {i} off the eps/2 level set",
        )
        for j in range(i + 1, len(pts)):
            d = witness.domain.shortcut_distance(pts[i], pts[j])
            rec.ok(
                abs(d - epsilon) <= 1e-9,
                lambda: f"pair ({i},{j}): shortcut distance {d!r} != {epsilon}",
            )
    rec.note(witness.summary())

    for descriptor in (
        UpperDiagonalHalfPlane(),
        ComplementOfClosedBox((-1.0, -1.0), (1.0, 1.0)),
    ):
        w = nondoubling_witness(descriptor, 8, 0.05)
        rec.ok(
            w.count == 8,
            lambda: f"{type(descriptor).__name__}: witness construction failed",
        )
    for bad in (PuncturedSpace(((0.0, 0.0),)), OpenBox((0.0,), (1.0,))):
        try:
            nondoubling_witness(bad, 3, 0.01)
            rec.ok(False, lambda: f"{type(bad).__name__}: witness should fail")
        except DomainError:
            rec.ok(True, "")
    return rec.result("non-doubling", 8)


def suite_barcode(seed: int = DEFAULT_SEED) -> SuiteResult:
    """Criterion 9: barcode distances against the brute-force oracle."""
    rec = _Recorder()
    rng = _rng(seed, 10)

    def random_diagram(max_bars: int) -> BarcodeDiagram:
        bars = []
        for _ in range(int(rng.integers(0, max_bars + 1))):
            birth = float(rng.normal())
            bars.append((birth, birth + 0.05 + 2.0 * float(rng.random())))
        return BarcodeDiagram(tuple(bars))

    for _ in range(200):
        a = random_diagram(3)
        b = random_diagram(3)
        for exponent in (1.0, 2.0):
            d = barcode_distance(a, b, exponent)
            oracle = partial_wasserstein_bruteforce(
                a.to_tuple(), b.to_tuple(), exponent
            )
            rec.ok(
                abs(d - oracle) <= 1e-9,
                lambda: f"e={exponent}: barcode distance {d!r} vs "
                        f"brute force {oracle!r}",
            )
        rec.ok(
            barcode_distance(a, a) == 0.0,
            lambda: "nonzero self-distance for a diagram",
        )

    single = BarcodeDiagram(((0.0, 1.0),))
    empty = BarcodeDiagram(())
    pinned = barcode_distance(single, empty, 2.0)
    rec.ok(
        abs(pinned - 1.0 / math.sqrt(2.0)) <= 1e-12,
        lambda: f"pinned diagram distance {pinned!r} != 1/sqrt(2)",
    )

    parsed = BarcodeDiagram.parse("# header\n0.0, 1.0\n\n2,3 # tail\n")
    rec.ok(
        parsed.pairs == ((0.0, 1.0), (2.0, 3.0)),
        lambda: f"parse mismatch: {parsed.pairs}",
    )
    try:
        BarcodeDiagram.parse("0,1\n3,2\n5,5\n")
        rec.ok(False, "invalid rows accepted")
    except DomainError as exc:
        msg = str(exc)
        rec.ok(
            "line 2" in msg and "line 3" in msg,
            lambda: f"bad-row error lacks line numbers: {msg}",
        )
    return rec.result("barcode", 9)


SUITES = (
    ("domain-metric", None, suite_domain_metric),
    ("assignment", None, suite_assignment),
    ("partial-isometry", 1, suite_partial_isometry),
    ("coupling-transforms", 2, suite_coupling_transforms),
    ("whitney", 3, suite_whitney),
    ("local-maps", 4, suite_local_maps),
    ("sandwich", 5, suite_sandwich),
    ("certificate", 6, suite_certificate),
    ("sketch-embedding", 7, suite_sketch_embedding),
    ("non-doubling", 8, suite_nondoubling),
    ("barcode", 9, suite_barcode),
)


def run_suite(name: str, seed: int = DEFAULT_SEED) -> SuiteResult:
    for suite_name, _, fn in SUITES:
        if suite_name == name:
            return fn(seed)
    raise KeyError(f"unknown suite {name!r}")


def run_all(seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    return [fn(seed) for _, _, fn in SUITES]
