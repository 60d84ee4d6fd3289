"""Persistence barcodes as point tuples above the diagonal.

A barcode is a finite multiset of (birth, death) pairs with death > birth,
which is exactly an unordered tuple on the open half-plane above the
diagonal.  The diagonal acts as the boundary: the partial transport distance
between diagrams matches bars across diagrams or retires them to the
diagonal, whichever is cheaper.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .domains import DomainError, UpperDiagonalHalfPlane
from .transport import UnorderedTuple, partial_wasserstein

__all__ = ["BarcodeDiagram", "barcode_distance", "BARCODE_DOMAIN"]

BARCODE_DOMAIN = UpperDiagonalHalfPlane()


@dataclass(frozen=True)
class BarcodeDiagram:
    """A validated multiset of (birth, death) pairs with death > birth."""

    pairs: tuple[tuple[float, float], ...]

    def __post_init__(self):
        checked = []
        for pair in self.pairs:
            birth, death = (float(v) for v in pair)
            if not death > birth:
                raise DomainError(
                    f"barcode pair ({birth:g}, {death:g}) needs death > birth"
                )
            checked.append((birth, death))
        object.__setattr__(self, "pairs", tuple(checked))

    @property
    def size(self) -> int:
        return len(self.pairs)

    @classmethod
    def parse(cls, text: str, source: str = "<string>") -> "BarcodeDiagram":
        """Parse CSV lines ``birth,death``; ``#`` starts a comment.

        All invalid rows are reported together with their line numbers.
        """
        pairs = []
        bad = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = [f.strip() for f in line.split(",")]
            try:
                if len(fields) != 2:
                    raise ValueError("expected two fields")
                birth, death = float(fields[0]), float(fields[1])
                if not death > birth:
                    raise ValueError("death must exceed birth")
            except ValueError as exc:
                bad.append(f"line {lineno}: {raw.strip()!r} ({exc})")
                continue
            pairs.append((birth, death))
        if bad:
            raise DomainError(
                f"invalid barcode rows in {source}:\n  " + "\n  ".join(bad)
            )
        return cls(tuple(pairs))

    @classmethod
    def load(cls, path) -> "BarcodeDiagram":
        p = Path(path)
        return cls.parse(p.read_text(), source=str(p))

    def to_tuple(self) -> UnorderedTuple:
        return UnorderedTuple(BARCODE_DOMAIN, list(self.pairs))


def barcode_distance(a: BarcodeDiagram, b: BarcodeDiagram,
                     exponent: float = 2.0) -> float:
    """Partial transport distance between diagrams over the diagonal domain."""
    return partial_wasserstein(a.to_tuple(), b.to_tuple(), exponent)
