"""Random tuples, couplings, and the default descriptor set for test suites.

All draws go through a caller-supplied :class:`numpy.random.Generator`, so a
fixed seed pins down every sampled object exactly.  Interior points come from
rejection sampling against the descriptor's sampling box.
"""

from __future__ import annotations

import numpy as np

from .domains import (
    ComplementOfClosedBox,
    DomainDescriptor,
    OpenBox,
    PuncturedSpace,
    UpperDiagonalHalfPlane,
)
from .transport import CouplingAtom, DiscreteCoupling, UnorderedTuple

__all__ = [
    "default_descriptors",
    "sample_interior",
    "sample_tuple",
    "sample_pair",
    "sample_raw_coupling",
    "sample_shortcut_coupling",
]

MAX_REJECTION_DRAWS = 10_000


def default_descriptors() -> list[DomainDescriptor]:
    """The five domains exercised by the verification suites."""
    return [
        OpenBox((0.0,), (1.0,)),
        OpenBox((-1.0, 0.0), (2.0, 1.0)),
        UpperDiagonalHalfPlane(),
        PuncturedSpace(((0.25, -0.5), (1.0, 1.0))),
        ComplementOfClosedBox((-1.0, -1.0), (1.0, 1.0)),
    ]


def sample_interior(domain: DomainDescriptor, rng: np.random.Generator) -> np.ndarray:
    lo, hi = domain.sampling_box()
    for _ in range(MAX_REJECTION_DRAWS):
        x = lo + rng.random(len(lo)) * (hi - lo)
        if domain.contains(x):
            return x
    raise RuntimeError(
        f"rejection sampling failed for {domain!r}"
    )  # pragma: no cover


def sample_tuple(domain: DomainDescriptor, rng: np.random.Generator,
                 max_size: int, boundary_prob: float = 0.2) -> UnorderedTuple:
    """A tuple of uniform size 0..max_size; each slot is the glued boundary
    point with probability ``boundary_prob``."""
    size = int(rng.integers(0, max_size + 1))
    pts = []
    boundary = 0
    for _ in range(size):
        if rng.random() < boundary_prob:
            boundary += 1
        else:
            pts.append(sample_interior(domain, rng))
    return UnorderedTuple(domain, pts, boundary, validate=False)


def sample_pair(domain: DomainDescriptor, rng: np.random.Generator,
                max_size: int, boundary_prob: float = 0.2):
    return (
        sample_tuple(domain, rng, max_size, boundary_prob),
        sample_tuple(domain, rng, max_size, boundary_prob),
    )


def _raw_endpoint(domain: DomainDescriptor, rng: np.random.Generator,
                  lo: np.ndarray, hi: np.ndarray) -> tuple[float, ...]:
    # with some probability take an exact complement point, so that families
    # whose complement has measure zero (punctures) still exercise the
    # outside-the-domain branch of the transforms
    if rng.random() < 0.2:
        c = domain.nearest_complement_point(sample_interior(domain, rng))
        return tuple(float(v) for v in c)
    span = hi - lo
    x = lo - 0.5 * span + rng.random(len(lo)) * 2.0 * span
    return tuple(float(v) for v in x)


def sample_raw_coupling(domain: DomainDescriptor, rng: np.random.Generator,
                        max_atoms: int = 5) -> DiscreteCoupling:
    """A coupling with coordinate endpoints scattered inside and outside."""
    lo, hi = domain.sampling_box()
    atoms = []
    for _ in range(int(rng.integers(1, max_atoms + 1))):
        src = _raw_endpoint(domain, rng, lo, hi)
        dst = _raw_endpoint(domain, rng, lo, hi)
        atoms.append(CouplingAtom(src, dst, 0.1 + 0.9 * float(rng.random())))
    return DiscreteCoupling(domain, atoms)


def sample_shortcut_coupling(domain: DomainDescriptor, rng: np.random.Generator,
                             max_atoms: int = 5,
                             boundary_prob: float = 0.25) -> DiscreteCoupling:
    """A coupling over the completion: interior endpoints or the glued point."""

    def endpoint():
        if rng.random() < boundary_prob:
            return None
        return tuple(float(v) for v in sample_interior(domain, rng))

    atoms = []
    for _ in range(int(rng.integers(1, max_atoms + 1))):
        src = endpoint()
        dst = endpoint()
        if src is None and dst is None:
            dst = tuple(float(v) for v in sample_interior(domain, rng))
        atoms.append(CouplingAtom(src, dst, 0.1 + 0.9 * float(rng.random())))
    return DiscreteCoupling(domain, atoms)
