"""Seeded samplers used by the verification suites."""

import numpy as np
import pytest

from padot.domains import OpenBox
from padot.sampling import (
    default_descriptors,
    sample_interior,
    sample_pair,
    sample_raw_coupling,
    sample_shortcut_coupling,
    sample_tuple,
)

UNIT_SQUARE = OpenBox((0.0, 0.0), (1.0, 1.0))


def test_default_descriptors_cover_every_family():
    kinds = {type(d).__name__ for d in default_descriptors()}
    assert kinds == {
        "OpenBox",
        "UpperDiagonalHalfPlane",
        "PuncturedSpace",
        "ComplementOfClosedBox",
    }
    dims = sorted(d.dimension for d in default_descriptors())
    assert dims[0] == 1 and dims[-1] == 2


def test_sample_interior_stays_inside():
    rng = np.random.default_rng(0)
    for domain in default_descriptors():
        for _ in range(50):
            assert domain.contains(sample_interior(domain, rng))


def test_sample_tuple_respects_the_cap():
    rng = np.random.default_rng(1)
    for _ in range(50):
        t = sample_tuple(UNIT_SQUARE, rng, 4)
        assert t.size <= 4
        assert t.interior_count + t.boundary_count == t.size
    p, q = sample_pair(UNIT_SQUARE, rng, 3)
    assert p.domain == q.domain == UNIT_SQUARE


def test_samplers_are_deterministic():
    a = sample_tuple(UNIT_SQUARE, np.random.default_rng(7), 4)
    b = sample_tuple(UNIT_SQUARE, np.random.default_rng(7), 4)
    assert a.boundary_count == b.boundary_count
    assert np.array_equal(a.interior, b.interior)


def test_raw_coupling_masses_and_shapes():
    rng = np.random.default_rng(2)
    gamma = sample_raw_coupling(UNIT_SQUARE, rng)
    assert 1 <= len(gamma) <= 5
    for atom in gamma.atoms:
        assert atom.mass > 0.0
        assert len(atom.src) == 2 and len(atom.dst) == 2
    gamma.euclidean_cost(2.0)  # endpoints always have coordinates


def test_shortcut_coupling_is_evaluable():
    rng = np.random.default_rng(3)
    for _ in range(20):
        gamma = sample_shortcut_coupling(UNIT_SQUARE, rng)
        gamma.shortcut_cost(2.0)  # interior endpoints only, never both glued
        for atom in gamma.atoms:
            assert atom.src is not None or atom.dst is not None


def test_rejection_sampler_gives_up_eventually():
    class Unreachable(OpenBox):
        def contains(self, x) -> bool:
            return False

    with pytest.raises(RuntimeError):
        sample_interior(
            Unreachable((0.0,), (1.0,)), np.random.default_rng(0)
        )
