"""Barcode parsing and diagram distances over the diagonal domain."""

import math

import pytest

from padot.barcodes import BARCODE_DOMAIN, BarcodeDiagram, barcode_distance
from padot.domains import DomainError, UpperDiagonalHalfPlane
from padot.transport import partial_wasserstein_bruteforce


def test_barcode_domain_is_the_half_plane():
    assert BARCODE_DOMAIN == UpperDiagonalHalfPlane()


def test_parse_with_comments_and_blanks():
    text = "# persistence pairs\n0.0, 1.0\n\n 2 , 3.5 # late feature\n"
    d = BarcodeDiagram.parse(text)
    assert d.pairs == ((0.0, 1.0), (2.0, 3.5))
    assert d.size == 2
    assert BarcodeDiagram.parse("# only comments\n").size == 0


def test_parse_collects_every_bad_row():
    with pytest.raises(DomainError) as err:
        BarcodeDiagram.parse("0,1\nnot numbers\n3,2\n1\n")
    msg = str(err.value)
    assert "line 2" in msg
    assert "line 3" in msg
    assert "line 4" in msg
    assert "line 1" not in msg


def test_constructor_validates_pairs():
    with pytest.raises(DomainError):
        BarcodeDiagram(((1.0, 1.0),))
    with pytest.raises(DomainError):
        BarcodeDiagram(((0.0, -1.0),))


def test_load(tmp_path):
    path = tmp_path / "bars.csv"
    path.write_text("0,2\n1,3\n")
    d = BarcodeDiagram.load(path)
    assert d.pairs == ((0.0, 2.0), (1.0, 3.0))


def test_pinned_distances():
    single = BarcodeDiagram(((0.0, 1.0),))
    empty = BarcodeDiagram(())
    # killing the lone bar costs its distance to the diagonal
    assert barcode_distance(single, empty, 2.0) == pytest.approx(
        1.0 / math.sqrt(2.0), abs=1e-12
    )
    two = BarcodeDiagram(((0.0, 2.0), (1.0, 3.0)))
    one = BarcodeDiagram(((0.0, 2.0),))
    # matching the shared bar is free; (1, 3) dies at distance 2/sqrt(2)
    assert barcode_distance(two, one, 2.0) == pytest.approx(
        math.sqrt(2.0), abs=1e-12
    )
    assert barcode_distance(two, two, 2.0) == 0.0


def test_matches_bruteforce():
    a = BarcodeDiagram(((0.0, 1.0), (0.5, 4.0)))
    b = BarcodeDiagram(((0.1, 1.2),))
    for e in (1.0, 2.0):
        assert barcode_distance(a, b, e) == pytest.approx(
            partial_wasserstein_bruteforce(a.to_tuple(), b.to_tuple(), e),
            abs=1e-12,
        )
