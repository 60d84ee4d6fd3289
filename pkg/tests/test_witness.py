"""Equidistant point families exposing the non-doubling boundary behavior."""

import numpy as np
import pytest

from padot.domains import (
    ComplementOfClosedBox,
    DomainError,
    OpenBox,
    PuncturedSpace,
    ShortcutPoint,
    UpperDiagonalHalfPlane,
)
from padot.witness import nondoubling_witness


@pytest.mark.parametrize(
    "domain",
    [
        OpenBox((0.0, 0.0), (1.0, 1.0)),
        OpenBox((-2.0, 1.0, 0.0), (2.0, 3.0, 1.0)),
        UpperDiagonalHalfPlane(),
        ComplementOfClosedBox((-1.0, -1.0), (1.0, 1.0)),
    ],
)
def test_witness_points_are_equidistant(domain):
    eps = 0.01
    w = nondoubling_witness(domain, 12, eps)
    assert w.count == 12
    assert w.points.shape == (12, domain.dimension)
    pts = [ShortcutPoint.interior(row) for row in w.points]
    for i in range(12):
        assert abs(domain.dist_to_complement(w.points[i]) - eps / 2) <= 1e-12
        for j in range(i + 1, 12):
            d = domain.shortcut_distance(pts[i], pts[j])
            assert abs(d - eps) <= 1e-9
    assert w.max_pairwise_deviation() <= 1e-9
    assert w.max_level_deviation() <= 1e-12
    assert "12 points" in w.summary()


def test_witness_grows_with_count():
    # arbitrarily many points fit in a single small ball: no doubling bound
    domain = OpenBox((0.0, 0.0), (1.0, 1.0))
    w = nondoubling_witness(domain, 40, 0.004)
    assert w.count == 40


def test_witness_rejects_unsupported_domains():
    with pytest.raises(DomainError):
        nondoubling_witness(PuncturedSpace(((0.0, 0.0),)), 5, 0.01)
    with pytest.raises(DomainError):
        nondoubling_witness(OpenBox((0.0,), (1.0,)), 5, 0.01)
    # an epsilon wider than the domain cannot sit on a level set
    with pytest.raises(DomainError):
        nondoubling_witness(OpenBox((0.0, 0.0), (1.0, 1.0)), 5, 3.0)


def test_witness_points_are_interior():
    domain = UpperDiagonalHalfPlane()
    w = nondoubling_witness(domain, 9, 0.05)
    for row in w.points:
        assert domain.contains(np.asarray(row))
