"""Assignment solves over a compiled kernel with a pure-Python fallback.

The compiled extension is preferred when the build produced it; set
``PADOT_ASSIGNMENT_BACKEND=python`` (or ``compiled``) before import to force a
backend.  Both kernels execute the same floating-point operations in the same
order, so results are identical either way.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

from . import _hungarian_py

__all__ = [
    "BACKEND_NAME",
    "available_backends",
    "use_backend",
    "min_assignment_cost",
    "assignment_solve",
    "assignment_bruteforce",
]

_BACKENDS = {"python": _hungarian_py}
try:
    from . import _hungarian as _compiled_impl

    _BACKENDS["compiled"] = _compiled_impl
except ImportError:
    _compiled_impl = None

_requested = os.environ.get("PADOT_ASSIGNMENT_BACKEND")
if _requested:
    if _requested not in _BACKENDS:
        raise ImportError(
            f"PADOT_ASSIGNMENT_BACKEND={_requested!r} is not available; "
            f"choices: {sorted(_BACKENDS)}"
        )
    BACKEND_NAME = _requested
else:
    BACKEND_NAME = "compiled" if "compiled" in _BACKENDS else "python"
_impl = _BACKENDS[BACKEND_NAME]


def available_backends() -> tuple[str, ...]:
    return tuple(sorted(_BACKENDS))


def use_backend(name: str) -> str:
    """Switch the active kernel (used by benchmarks and backend tests)."""
    global _impl, BACKEND_NAME
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choices: {sorted(_BACKENDS)}")
    _impl = _BACKENDS[name]
    BACKEND_NAME = name
    return name


def _as_flat(cost) -> tuple[np.ndarray, int]:
    arr = np.ascontiguousarray(cost, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError("cost matrix entries must be finite")
    if arr.size and arr.min() < 0.0:
        raise ValueError("cost matrix entries must be non-negative")
    return arr.ravel(), arr.shape[0]


def _call(func_name: str, flat: np.ndarray, n: int):
    func = getattr(_impl, func_name)
    if _impl is _hungarian_py:
        return func(flat.tolist(), n)
    return func(flat, n)


def min_assignment_cost(cost) -> float:
    """Minimum total cost of a perfect assignment (no tie refinement)."""
    flat, n = _as_flat(cost)
    if n == 0:
        return 0.0
    _, total = _call("solve", flat, n)
    return total


def assignment_solve(cost):
    """Optimal assignment with deterministic lexicographic tie-breaking.

    Returns ``(perm, total)`` where ``perm[i]`` is the column matched to row
    ``i`` and ``perm`` is the lexicographically smallest permutation among the
    cost minimizers (ties recognized at 1e-12 relative tolerance).
    """
    flat, n = _as_flat(cost)
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0.0
    perm, total = _call("solve_lexmin", flat, n)
    return np.asarray(perm, dtype=np.int64), total


def assignment_bruteforce(cost, tie_tol: float = 1e-12):
    """Exhaustive assignment oracle for small matrices (testing only).

    Independent of the Hungarian path: enumerates every permutation, takes the
    minimum total, and among totals within ``tie_tol`` (relative) of the
    minimum returns the lexicographically smallest permutation.
    """
    arr = np.asarray(cost, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {arr.shape}")
    n = arr.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0.0
    if n > 9:
        raise ValueError("brute-force oracle is limited to n <= 9")
    rows = arr.tolist()
    best = None
    best_total = float("inf")
    for perm in itertools.permutations(range(n)):
        total = 0.0
        for r in range(n):
            total += rows[r][perm[r]]
        if total < best_total:
            best_total = total
            best = perm
    # permutations enumerate in lexicographic order, so the first one within
    # the tie tolerance is the lexicographically smallest minimizer
    cutoff = best_total + tie_tol * (1.0 + abs(best_total))
    for perm in itertools.permutations(range(n)):
        total = 0.0
        for r in range(n):
            total += rows[r][perm[r]]
        if total <= cutoff:
            best = perm
            break
    chosen_total = 0.0
    for r in range(n):
        chosen_total += rows[r][best[r]]
    return np.asarray(best, dtype=np.int64), chosen_total
