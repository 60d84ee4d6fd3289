# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled assignment kernel; operation-for-operation mirror of _hungarian_py."""

from libc.stdlib cimport free, malloc

cdef double INF = float("inf")


cdef int _solve_flat(const double* cost, Py_ssize_t n, Py_ssize_t* col_of_row,
                     double* total_out) except -1:
    cdef double* u
    cdef double* v
    cdef double* minv
    cdef Py_ssize_t* match_row
    cdef Py_ssize_t* way
    cdef char* used
    cdef Py_ssize_t i, j, i0, j0, j1, base, r
    cdef double cur, delta, total

    if n == 0:
        total_out[0] = 0.0
        return 0

    u = <double*> malloc((n + 1) * sizeof(double))
    v = <double*> malloc((n + 1) * sizeof(double))
    minv = <double*> malloc((n + 1) * sizeof(double))
    match_row = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    way = <Py_ssize_t*> malloc((n + 1) * sizeof(Py_ssize_t))
    used = <char*> malloc((n + 1) * sizeof(char))
    if not (u and v and minv and match_row and way and used):
        free(u); free(v); free(minv); free(match_row); free(way); free(used)
        raise MemoryError()

    for j in range(n + 1):
        u[j] = 0.0
        v[j] = 0.0
        match_row[j] = n
        way[j] = n

    for i in range(n):
        match_row[n] = i
        j0 = n
        for j in range(n + 1):
            minv[j] = INF
            used[j] = 0
        while True:
            used[j0] = 1
            i0 = match_row[j0]
            base = i0 * n
            delta = INF
            j1 = -1
            for j in range(n):
                if used[j]:
                    continue
                cur = cost[base + j] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[match_row[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match_row[j0] == n:
                break
        while j0 != n:
            j1 = way[j0]
            match_row[j0] = match_row[j1]
            j0 = j1

    for j in range(n):
        if match_row[j] != n:
            col_of_row[match_row[j]] = j
    total = 0.0
    for r in range(n):
        total += cost[r * n + col_of_row[r]]
    total_out[0] = total

    free(u); free(v); free(minv); free(match_row); free(way); free(used)
    return 0


def solve(const double[::1] cost, Py_ssize_t n):
    """Minimum-cost assignment of a flat row-major n x n matrix."""
    cdef Py_ssize_t* cols
    cdef double total = 0.0
    cdef Py_ssize_t i
    if n == 0:
        return [], 0.0
    cols = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    if not cols:
        raise MemoryError()
    try:
        _solve_flat(&cost[0], n, cols, &total)
        out = [0] * n
        for i in range(n):
            out[i] = cols[i]
        return out, total
    finally:
        free(cols)


def solve_lexmin(const double[::1] cost, Py_ssize_t n):
    """Lexicographically smallest optimal assignment; mirror of the pure version."""
    cdef Py_ssize_t* scratch_cols
    cdef Py_ssize_t* free_cols
    cdef Py_ssize_t* perm
    cdef double* sub
    cdef Py_ssize_t i, j, r, c, m, idx, pos, jpos, chosen_pos, n_free
    cdef double target, rest, cand, total, chosen_rest, best_cand, best_rest
    cdef Py_ssize_t chosen, best_j, best_pos

    if n == 0:
        return [], 0.0

    scratch_cols = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    free_cols = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    perm = <Py_ssize_t*> malloc(n * sizeof(Py_ssize_t))
    sub = <double*> malloc(n * n * sizeof(double))
    if not (scratch_cols and free_cols and perm and sub):
        free(scratch_cols); free(free_cols); free(perm); free(sub)
        raise MemoryError()

    try:
        _solve_flat(&cost[0], n, scratch_cols, &target)
        for j in range(n):
            free_cols[j] = j
        n_free = n
        for i in range(n):
            m = n - i - 1
            chosen = -1
            chosen_rest = 0.0
            chosen_pos = -1
            best_cand = INF
            best_j = -1
            best_rest = 0.0
            best_pos = -1
            for jpos in range(n_free):
                j = free_cols[jpos]
                if m == 0:
                    rest = 0.0
                else:
                    idx = 0
                    for r in range(i + 1, n):
                        for pos in range(n_free):
                            c = free_cols[pos]
                            if c != j:
                                sub[idx] = cost[r * n + c]
                                idx += 1
                    _solve_flat(sub, m, scratch_cols, &rest)
                cand = cost[i * n + j] + rest
                if cand <= target + 1e-12 * (1.0 + abs(target)):
                    chosen = j
                    chosen_rest = rest
                    chosen_pos = jpos
                    break
                if cand < best_cand:
                    best_cand = cand
                    best_j = j
                    best_rest = rest
                    best_pos = jpos
            if chosen < 0:
                chosen = best_j
                chosen_rest = best_rest
                chosen_pos = best_pos
            perm[i] = chosen
            for pos in range(chosen_pos, n_free - 1):
                free_cols[pos] = free_cols[pos + 1]
            n_free -= 1
            target = chosen_rest
        total = 0.0
        for r in range(n):
            total += cost[r * n + perm[r]]
        out = [0] * n
        for i in range(n):
            out[i] = perm[i]
        return out, total
    finally:
        free(scratch_cols); free(free_cols); free(perm); free(sub)
