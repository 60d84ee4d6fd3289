"""Tuple distances, padding, couplings, and the brute-force oracle."""

import json
import math

import numpy as np
import pytest

from padot.domains import DomainError, OpenBox, UpperDiagonalHalfPlane
from padot.transport import (
    CouplingAtom,
    DiscreteCoupling,
    UnorderedTuple,
    coupling_from_shortcut,
    coupling_to_shortcut,
    pad_with_boundary,
    partial_wasserstein,
    partial_wasserstein_bruteforce,
    wasserstein_tuples,
    wasserstein_vectors,
)

UNIT_INTERVAL = OpenBox((0.0,), (1.0,))
UNIT_SQUARE = OpenBox((0.0, 0.0), (1.0, 1.0))


# -- frozen values -----------------------------------------------------------
# hand computation for {0.2, 0.8} vs {0.5} on (0, 1), squared cost:
# match 0.2 -> 0.5 and kill 0.8 at the right end: 0.09 + 0.04 = 0.13; every
# other pairing is worse, so the distance is sqrt(0.13)


def test_pinned_interval_distance():
    p = UnorderedTuple(UNIT_INTERVAL, [(0.2,), (0.8,)])
    q = UnorderedTuple(UNIT_INTERVAL, [(0.5,)])
    assert partial_wasserstein(p, q, 2.0) == pytest.approx(
        math.sqrt(0.13), abs=1e-12
    )
    assert partial_wasserstein(q, p, 2.0) == pytest.approx(
        math.sqrt(0.13), abs=1e-12
    )


def test_pinned_empty_vs_single():
    empty = UnorderedTuple(UNIT_INTERVAL, [])
    single = UnorderedTuple(UNIT_INTERVAL, [(0.5,)])
    assert partial_wasserstein(empty, single, 2.0) == pytest.approx(0.5, abs=1e-12)
    assert partial_wasserstein(empty, empty, 2.0) == 0.0


def test_pinned_diagonal_distance():
    diag = UpperDiagonalHalfPlane()
    one = UnorderedTuple(diag, [(0.0, 1.0)])
    none = UnorderedTuple(diag, [])
    assert partial_wasserstein(one, none, 2.0) == pytest.approx(
        1.0 / math.sqrt(2.0), abs=1e-12
    )


def test_matches_bruteforce_oracle():
    rng = np.random.default_rng(3)
    for _ in range(80):
        pts_p = [(v,) for v in rng.random(int(rng.integers(0, 5)))]
        pts_q = [(v,) for v in rng.random(int(rng.integers(0, 5)))]
        kp = int(rng.integers(0, 2))
        kq = int(rng.integers(0, 2))
        p = UnorderedTuple(UNIT_INTERVAL, pts_p, kp)
        q = UnorderedTuple(UNIT_INTERVAL, pts_q, kq)
        for e in (1.0, 2.0, 3.0):
            assert partial_wasserstein(p, q, e) == pytest.approx(
                partial_wasserstein_bruteforce(p, q, e), abs=1e-9
            )


def test_padding_turns_partial_into_balanced():
    p = UnorderedTuple(UNIT_SQUARE, [(0.2, 0.3), (0.7, 0.9)])
    q = UnorderedTuple(UNIT_SQUARE, [(0.25, 0.3)])
    wb = partial_wasserstein(p, q, 2.0)
    padded = wasserstein_tuples(
        pad_with_boundary(p, 3), pad_with_boundary(q, 3), 2.0, "shortcut"
    )
    assert padded == pytest.approx(wb, abs=1e-12)


def test_boundary_copies_do_not_change_the_distance():
    p = UnorderedTuple(UNIT_SQUARE, [(0.2, 0.3)])
    q = UnorderedTuple(UNIT_SQUARE, [(0.6, 0.6)], boundary_count=3)
    base = partial_wasserstein(p, q, 2.0)
    more = UnorderedTuple(UNIT_SQUARE, [(0.6, 0.6)], boundary_count=7)
    assert partial_wasserstein(p, more, 2.0) == pytest.approx(base, abs=1e-12)


def test_pad_with_boundary_shapes():
    p = UnorderedTuple(UNIT_INTERVAL, [(0.5,)], boundary_count=1)
    padded = pad_with_boundary(p, 3)
    assert padded.size == 6
    assert padded.interior_count == 1
    assert padded.boundary_count == 5
    with pytest.raises(DomainError):
        pad_with_boundary(padded, 2)


def test_tuple_validation_and_canonical_order():
    with pytest.raises(DomainError):
        UnorderedTuple(UNIT_INTERVAL, [(1.5,)])
    with pytest.raises(DomainError):
        UnorderedTuple(UNIT_INTERVAL, [(0.5, 0.5)])
    with pytest.raises(DomainError):
        UnorderedTuple(UNIT_INTERVAL, [(0.5,)], boundary_count=-1)
    t = UnorderedTuple(UNIT_SQUARE, [(0.9, 0.1), (0.2, 0.8), (0.2, 0.3)])
    assert t.interior.tolist() == [[0.2, 0.3], [0.2, 0.8], [0.9, 0.1]]


def test_tuple_json_round_trip(tmp_path):
    t = UnorderedTuple(UNIT_SQUARE, [(0.25, 0.75)], boundary_count=2)
    again = UnorderedTuple.from_json(t.to_json())
    assert again.domain == t.domain
    assert again.boundary_count == 2
    assert np.array_equal(again.interior, t.interior)
    path = tmp_path / "t.json"
    t.save(path)
    assert np.array_equal(UnorderedTuple.load(path).interior, t.interior)


def test_distance_rejects_mismatched_inputs():
    p = UnorderedTuple(UNIT_INTERVAL, [(0.5,)])
    q = UnorderedTuple(UNIT_SQUARE, [(0.5, 0.5)])
    with pytest.raises(DomainError):
        partial_wasserstein(p, q, 2.0)
    with pytest.raises(ValueError):
        partial_wasserstein(p, p, 0.5)  # exponent below 1
    r = UnorderedTuple(UNIT_INTERVAL, [(0.1,), (0.2,)])
    with pytest.raises(DomainError):
        wasserstein_tuples(p, r, 2.0, "shortcut")  # sizes differ


def test_wasserstein_vectors_plain():
    a = np.array([[0.0, 0.0], [1.0, 0.0]])
    b = np.array([[0.0, 1.0], [1.0, 1.0]])
    assert wasserstein_vectors(a, b, 2.0) == pytest.approx(math.sqrt(2.0))
    assert wasserstein_vectors(a, a, 2.0) == 0.0


# -- couplings ---------------------------------------------------------------


def test_projection_is_cheaper_pinned():
    # two unit-mass atoms crossing the left and right faces of the square
    gamma = DiscreteCoupling(
        UNIT_SQUARE,
        [
            CouplingAtom((0.1, 0.5), (0.0, 0.5), 1.0),
            CouplingAtom((1.0, 0.5), (0.9, 0.5), 1.0),
        ],
    )
    eu = gamma.euclidean_cost(2.0)
    assert eu == pytest.approx(math.sqrt(0.02), abs=1e-15)
    projected = coupling_to_shortcut(gamma)
    # both outside endpoints collapse to the glued point
    assert projected.atoms[0].dst is None
    assert projected.atoms[1].src is None
    assert projected.shortcut_cost(2.0) <= eu
    assert projected.shortcut_cost(2.0) == pytest.approx(
        math.sqrt(0.02), abs=1e-15
    )


def test_expansion_is_cheaper_pinned():
    gamma = DiscreteCoupling(
        UNIT_SQUARE,
        [
            CouplingAtom(None, (0.9, 0.5), 1.0),
            CouplingAtom((0.2, 0.5), (0.3, 0.5), 2.0),
            CouplingAtom(None, None, 1.0),
        ],
    )
    expanded = coupling_from_shortcut(gamma)
    # boundary leg becomes an explicit trip from the nearest face point,
    # the interior pair is kept, the boundary-to-boundary atom vanishes
    assert expanded.atoms[0].src == (1.0, 0.5)
    assert expanded.atoms[1].src == (0.2, 0.5)
    assert len(expanded) == 2
    for e in (1.0, 2.0):
        assert expanded.euclidean_cost(e) <= gamma.shortcut_cost(e) + 1e-12


def test_expansion_splits_the_shortcut_route():
    # direct distance 0.8 loses to 0.1 + 0.1 through the ends
    gamma = DiscreteCoupling(
        UNIT_INTERVAL, [CouplingAtom((0.1,), (0.9,), 1.0)]
    )
    expanded = coupling_from_shortcut(gamma)
    assert len(expanded) == 2
    assert expanded.atoms[0].src == (0.1,)
    assert expanded.atoms[0].dst == (0.0,)
    assert expanded.atoms[1].src == (1.0,)
    assert expanded.atoms[1].dst == (0.9,)
    assert expanded.euclidean_cost(2.0) <= gamma.shortcut_cost(2.0) + 1e-12


def test_coupling_costs_reject_bad_endpoints():
    gamma = DiscreteCoupling(UNIT_INTERVAL, [CouplingAtom(None, (0.5,), 1.0)])
    with pytest.raises(DomainError):
        gamma.euclidean_cost(2.0)
    outside = DiscreteCoupling(
        UNIT_INTERVAL, [CouplingAtom((2.0,), (0.5,), 1.0)]
    )
    with pytest.raises(DomainError):
        outside.shortcut_cost(2.0)
    with pytest.raises(DomainError):
        DiscreteCoupling(UNIT_INTERVAL, [CouplingAtom((0.5,), (0.5,), 0.0)])


def test_coupling_json_round_trip():
    gamma = DiscreteCoupling(
        UNIT_INTERVAL,
        [CouplingAtom((0.5,), None, 0.25), CouplingAtom((0.1,), (0.2,), 1.5)],
    )
    again = DiscreteCoupling.from_json(UNIT_INTERVAL, gamma.to_json())
    assert [(a.src, a.dst, a.mass) for a in again.atoms] == [
        ((0.5,), None, 0.25),
        ((0.1,), (0.2,), 1.5),
    ]
    json.dumps(gamma.to_json())  # serializable as-is
