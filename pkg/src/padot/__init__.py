"""Partial transport distances between point tuples on open domains.

The library computes the boundary-absorbing transport distance between
unordered tuples exactly, reformulates it over the shortcut metric of the
glued completion, and embeds tuples into sparse finite-support vectors with
certified two-sided distance bounds.  See the README for the CLI and the
verification battery.
"""

from .assignment import (
    BACKEND_NAME,
    assignment_bruteforce,
    assignment_solve,
    available_backends,
    min_assignment_cost,
    use_backend,
)
from .barcodes import BARCODE_DOMAIN, BarcodeDiagram, barcode_distance
from .domains import (
    BOUNDARY,
    ComplementOfClosedBox,
    DomainDescriptor,
    DomainError,
    OpenBox,
    PuncturedSpace,
    ShortcutPoint,
    UpperDiagonalHalfPlane,
    domain_from_json,
    parse_domain,
)
from .embedding import (
    CertificateError,
    DirectionFamily,
    EmbeddingConstants,
    LocalMap,
    LowerBoundCertificate,
    SparseEmbedding,
    TupleField,
    embed_tuple,
    lower_bound_certificate,
    sketch_field,
    tuple_sketch,
)
from .transport import (
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
from .verify import run_all, run_suite
from .whitney import DyadicCube, WhitneyDecomposition
from .witness import NonDoublingWitness, nondoubling_witness

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BACKEND_NAME",
    "available_backends",
    "use_backend",
    "min_assignment_cost",
    "assignment_solve",
    "assignment_bruteforce",
    "DomainError",
    "DomainDescriptor",
    "OpenBox",
    "UpperDiagonalHalfPlane",
    "PuncturedSpace",
    "ComplementOfClosedBox",
    "ShortcutPoint",
    "BOUNDARY",
    "parse_domain",
    "domain_from_json",
    "UnorderedTuple",
    "pad_with_boundary",
    "partial_wasserstein",
    "partial_wasserstein_bruteforce",
    "wasserstein_tuples",
    "wasserstein_vectors",
    "CouplingAtom",
    "DiscreteCoupling",
    "coupling_to_shortcut",
    "coupling_from_shortcut",
    "DyadicCube",
    "WhitneyDecomposition",
    "EmbeddingConstants",
    "LocalMap",
    "TupleField",
    "DirectionFamily",
    "SparseEmbedding",
    "tuple_sketch",
    "sketch_field",
    "embed_tuple",
    "CertificateError",
    "LowerBoundCertificate",
    "lower_bound_certificate",
    "BarcodeDiagram",
    "BARCODE_DOMAIN",
    "barcode_distance",
    "NonDoublingWitness",
    "nondoubling_witness",
    "run_suite",
    "run_all",
]
