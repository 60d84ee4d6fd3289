"""Local maps, cube-indexed fields, direction sketches, and the embedding."""

import json
import math

import numpy as np
import pytest

from padot.domains import BOUNDARY, DomainError, OpenBox
from padot.embedding import (
    DirectionFamily,
    EmbeddingConstants,
    LocalMap,
    TupleField,
    embed_tuple,
    sketch_field,
    tuple_sketch,
)
from padot.sampling import sample_tuple
from padot.transport import (
    UnorderedTuple,
    pad_with_boundary,
    partial_wasserstein,
    wasserstein_vectors,
)
from padot.whitney import DyadicCube, WhitneyDecomposition

UNIT_INTERVAL = OpenBox((0.0,), (1.0,))
UNIT_SQUARE = OpenBox((0.0, 0.0), (1.0, 1.0))
CUBE = DyadicCube(-2, (1,))  # [1/4, 1/2], center 3/8, side 1/4


def test_constants_pinned_for_the_plane():
    c = EmbeddingConstants.for_dimension(2)
    assert c.upper == 2 * 81 * 144 * 3 == 69984
    assert c.close_match == pytest.approx(1.0 / (48.0 * math.sqrt(2.0)))
    assert c.boundary == pytest.approx(100.0 * 48.0 ** 2 * 4.0)
    assert c.combined == max(c.upper, c.boundary)
    with pytest.raises(ValueError):
        EmbeddingConstants.for_dimension(0)


def test_local_map_values_pinned():
    local = LocalMap(CUBE)
    # center of the cube: offset zero, last coordinate records the side
    assert local.apply_coords(np.array([0.375])).tolist() == [0.0, 0.25]
    # inside the cube the cutoff is 1
    assert local.apply_coords(np.array([0.40625])).tolist() == [0.03125, 0.25]
    # at distance 3*side/16 the cutoff is exactly 1/2
    half = local.apply_coords(np.array([0.546875]))
    assert half.tolist() == [0.0859375, 0.125]
    # beyond side/4 the image is exactly zero
    assert not np.any(local.apply_coords(np.array([0.5625])))
    assert not np.any(local.apply_coords(np.array([0.99])))
    assert not np.any(local.apply(BOUNDARY))


def test_local_map_cutoff_profile():
    local = LocalMap(CUBE)
    side = CUBE.side
    assert local.cutoff(np.array([0.375])) == 1.0
    assert local.cutoff(np.array([0.5 + side / 8.0])) == 1.0
    assert local.cutoff(np.array([0.5 + side / 4.0])) == 0.0
    mid = local.cutoff(np.array([0.5 + 3.0 * side / 16.0]))
    assert mid == 0.5


def test_field_projection_pinned():
    W = WhitneyDecomposition(UNIT_INTERVAL)
    t = UnorderedTuple(UNIT_INTERVAL, [(0.375,)])
    field = TupleField.project(W, t)
    # the point sits at the center of CUBE; the two neighbor cubes see it
    # beyond their side/4 collar, so only CUBE carries a nonzero entry
    assert field.cubes() == [CUBE]
    assert field.entries[CUBE].tolist() == [[0.0, 0.25]]

    empty = TupleField.project(W, UnorderedTuple(UNIT_INTERVAL, [], 1))
    assert empty.cubes() == []
    # against an absent entry the cost is the plain squared norm
    assert field.distance_sq(empty) == pytest.approx(0.0625, abs=1e-15)
    assert field.distance(empty) == pytest.approx(0.25, abs=1e-15)
    assert field.distance_sq(field) == 0.0


def test_field_requires_matching_sizes():
    W = WhitneyDecomposition(UNIT_INTERVAL)
    a = TupleField.project(W, UnorderedTuple(UNIT_INTERVAL, [(0.375,)]))
    b = TupleField.project(
        W, UnorderedTuple(UNIT_INTERVAL, [(0.375,), (0.4,)])
    )
    with pytest.raises(DomainError):
        a.distance_sq(b)


def test_direction_family_structure():
    fam = DirectionFamily.build(3, 2)
    assert fam.count == 9
    vectors = np.asarray(fam.vectors)
    assert vectors.shape == (9, 3)
    norms = np.linalg.norm(vectors, axis=1)
    assert np.allclose(norms, 1.0, atol=1e-15)
    for v in vectors:
        nz = v[v != 0.0]
        assert 1 <= len(nz) <= 2
        assert nz[0] > 0.0  # canonical sign
    # duplicate directions would make the frame degenerate
    assert len({tuple(np.sign(v)) for v in vectors}) == 9

    tiny = DirectionFamily.build(2, 1)
    assert tiny.count == 2
    with pytest.raises(ValueError):
        DirectionFamily.build(0, 1)
    with pytest.raises(ValueError):
        DirectionFamily.build(3, 0)


def test_sketch_pinned_values():
    fam = DirectionFamily.build(2, 1)
    rows = np.array([[0.0, 0.0], [1.0, 1.0]])
    sk = tuple_sketch(rows, fam)
    # each direction sees projections {0, 1}, sorted descending, over sqrt(2)
    expected = np.array([1.0, 0.0, 1.0, 0.0]) / math.sqrt(2.0)
    assert np.array_equal(sk, expected)
    # row order cannot matter
    assert np.array_equal(tuple_sketch(rows[::-1], fam), sk)
    assert not np.any(tuple_sketch(np.zeros((3, 2)), fam))
    with pytest.raises(ValueError):
        tuple_sketch(np.zeros((2, 3)), fam)


def test_sketch_is_lipschitz():
    fam = DirectionFamily.build(3, 2)
    rng = np.random.default_rng(4)
    for _ in range(50):
        M = int(rng.integers(1, 6))
        a = rng.normal(size=(M, 3))
        b = rng.normal(size=(M, 3))
        gap = float(np.linalg.norm(tuple_sketch(a, fam) - tuple_sketch(b, fam)))
        assert gap <= wasserstein_vectors(a, b, 2.0) + 1e-12


def test_embed_tuple_shapes_and_bound():
    W = WhitneyDecomposition(UNIT_SQUARE)
    fam = DirectionFamily.build(3, 2)
    consts = EmbeddingConstants.for_dimension(2)
    rng = np.random.default_rng(6)
    for _ in range(30):
        p = sample_tuple(UNIT_SQUARE, rng, 2)
        q = sample_tuple(UNIT_SQUARE, rng, 2)
        ep = embed_tuple(W, fam, p, 2)
        eq = embed_tuple(W, fam, q, 2)
        assert ep.size == 4  # padded to 2m
        d = ep.distance(eq)
        assert d == pytest.approx(eq.distance(ep), abs=1e-15)
        assert d <= math.sqrt(consts.upper) * partial_wasserstein(p, q, 2.0)
        assert ep.distance(ep) == 0.0


def test_embed_tuple_composes_the_pipeline_stages():
    W = WhitneyDecomposition(UNIT_SQUARE)
    fam = DirectionFamily.build(3, 2)
    t = sample_tuple(UNIT_SQUARE, np.random.default_rng(11), 3)
    staged = sketch_field(TupleField.project(W, pad_with_boundary(t, 3)), fam)
    assert embed_tuple(W, fam, t, 3).to_json() == staged.to_json()


def test_embedding_serialization(tmp_path):
    W = WhitneyDecomposition(UNIT_SQUARE)
    fam = DirectionFamily.build(3, 2)
    t = UnorderedTuple(UNIT_SQUARE, [(0.375, 0.375)])
    emb = embed_tuple(W, fam, t, 1)
    data = emb.to_json()
    assert data["M"] == 2
    assert data["h"] == 9
    keys = list(data["entries"])
    assert all(len(k.split(",")) == 3 for k in keys)
    # deterministic order: by generation, then corner
    assert keys == sorted(
        keys, key=lambda k: tuple(int(v) for v in k.split(","))
    )
    path = tmp_path / "emb.json"
    emb.save(path)
    assert json.loads(path.read_text()) == data


def test_embed_tuple_rejects_mismatched_family():
    W = WhitneyDecomposition(UNIT_SQUARE)
    fam = DirectionFamily.build(2, 1)  # needs dim n+1 = 3
    t = UnorderedTuple(UNIT_SQUARE, [(0.5, 0.5)])
    with pytest.raises(DomainError):
        embed_tuple(W, fam, t, 1)
    with pytest.raises(DomainError):
        embed_tuple(
            WhitneyDecomposition(UNIT_SQUARE),
            DirectionFamily.build(3, 2),
            UnorderedTuple(UNIT_SQUARE, [(0.1, 0.1), (0.2, 0.2)]),
            1,  # m below the tuple size
        )
