# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``.

Float data (``tol > 0``) runs on C doubles; exact data (``tol == 0``) runs
the same algorithm with typed loop indices over Python rationals.  Results
must match the pure-Python kernels operation for operation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()

cdef enum:
    BLAND = 0
    DEGENERATE_LIMIT = 50


def rref(list rows, col_order, tol):
    if tol == 0:
        return _rref_obj(rows, list(col_order))
    if not rows:
        return []
    cdef cnp.ndarray[cnp.float64_t, ndim=2] M = np.array(rows, dtype=np.float64)
    piv = _rref_float(M, list(col_order), float(tol))
    cdef Py_ssize_t i
    for i in range(M.shape[0]):
        rows[i] = M[i].tolist()
    return piv


cdef list _rref_float(double[:, ::1] M, list col_order, double tol):
    cdef Py_ssize_t m = M.shape[0], ncols = M.shape[1]
    cdef Py_ssize_t r = 0, i, j, piv, c
    cdef double best, v, p, f, pj, tmp
    cdef list pivots = []
    for c_obj in col_order:
        c = c_obj
        if r == m:
            break
        piv = -1
        best = tol
        for i in range(r, m):
            v = fabs(M[i, c])
            if v > best:
                best = v
                piv = i
        if piv < 0:
            for i in range(r, m):
                M[i, c] = 0.0
            continue
        if piv != r:
            for j in range(ncols):
                tmp = M[piv, j]
                M[piv, j] = M[r, j]
                M[r, j] = tmp
        p = M[r, c]
        if p != 1.0:
            for j in range(ncols):
                if M[r, j] != 0.0:
                    M[r, j] = M[r, j] / p
        for i in range(m):
            if i == r:
                continue
            f = M[i, c]
            if f == 0.0:
                continue
            for j in range(ncols):
                pj = M[r, j]
                if pj != 0.0:
                    M[i, j] = M[i, j] - f * pj
            M[i, c] = 0.0
        pivots.append(c)
        r += 1
    for i in range(m):
        for j in range(ncols):
            if fabs(M[i, j]) <= tol:
                M[i, j] = 0.0
    return pivots


cdef list _rref_obj(list rows, list col_order):
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return []
    cdef Py_ssize_t ncols = len(rows[0])
    cdef Py_ssize_t r = 0, i, j, piv, c
    cdef list prow, row
    cdef list pivots = []
    for c_obj in col_order:
        c = c_obj
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if (<list>rows[i])[c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            rows[piv], rows[r] = rows[r], rows[piv]
        prow = rows[r]
        p = prow[c]
        if p != 1:
            for j in range(ncols):
                if prow[j] != 0:
                    prow[j] = prow[j] / p
        for i in range(m):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                continue
            for j in range(ncols):
                pj = prow[j]
                if pj != 0:
                    row[j] = row[j] - f * pj
            row[c] = 0 * f
        pivots.append(c)
        r += 1
    return pivots


def phase1(list T, list beta, list basis, list at_upper, list ub, list is_art, int rule, tol):
    if tol == 0:
        return _phase1_obj(T, beta, basis, at_upper, ub, is_art, rule)
    m = len(T)
    N = len(ub)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A = np.array(T, dtype=np.float64).reshape(m, N)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] bt = np.array(beta, dtype=np.float64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] bs = np.array(basis, dtype=np.intp)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] up = np.array(at_upper, dtype=np.uint8)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] has_ub = np.array([u is not None for u in ub], dtype=np.uint8)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ubv = np.array([0.0 if u is None else u for u in ub], dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] art = np.array(is_art, dtype=np.uint8)
    pivots = _phase1_float(A, bt, bs, up, has_ub, ubv, art, rule, float(tol))
    cdef Py_ssize_t i, j
    for i in range(m):
        T[i] = A[i].tolist()
        beta[i] = bt[i]
        basis[i] = int(bs[i])
    for j in range(N):
        at_upper[j] = bool(up[j])
    return pivots


cdef void _pivot_float(double[:, ::1] T, double[::1] d, Py_ssize_t r, Py_ssize_t c):
    cdef Py_ssize_t m = T.shape[0], ncols = T.shape[1], i, j
    cdef double p = T[r, c], f, pj
    if p != 1.0:
        for j in range(ncols):
            if T[r, j] != 0.0:
                T[r, j] = T[r, j] / p
    for i in range(m):
        if i == r:
            continue
        f = T[i, c]
        if f == 0.0:
            continue
        for j in range(ncols):
            pj = T[r, j]
            if pj != 0.0:
                T[i, j] = T[i, j] - f * pj
    f = d[c]
    if f != 0.0:
        for j in range(ncols):
            pj = T[r, j]
            if pj != 0.0:
                d[j] = d[j] - f * pj


cdef int _phase1_float(double[:, ::1] T, double[::1] beta, Py_ssize_t[::1] basis,
                       unsigned char[::1] at_upper, unsigned char[::1] has_ub,
                       double[::1] ub, unsigned char[::1] is_art, int rule, double tol):
    cdef Py_ssize_t m = T.shape[0], N = ub.shape[0]
    cdef Py_ssize_t i, j, enter, leave, bi, old
    cdef double best, dj, score, a, t, t_best, step, entering_value, u
    cdef bint t_unbounded, to_upper, leave_to_upper
    cdef int direction, degenerate_run = 0, pivots = 0
    cdef bint use_bland = rule == BLAND
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d_arr = np.zeros(N)
    cdef double[::1] d = d_arr
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] in_basis_arr = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[::1] in_basis = in_basis_arr
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] banned_arr = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[::1] banned = banned_arr
    for j in range(N):
        d[j] = 1.0 if is_art[j] else 0.0
    for i in range(m):
        if is_art[basis[i]]:
            for j in range(N):
                if T[i, j] != 0.0:
                    d[j] = d[j] - T[i, j]
    for i in range(m):
        in_basis[basis[i]] = 1
    while True:
        enter = -1
        best = tol
        for j in range(N):
            if in_basis[j] or banned[j]:
                continue
            dj = d[j]
            score = dj if at_upper[j] else -dj
            if score > best:
                enter = j
                if use_bland:
                    break
                best = score
        if enter < 0:
            return pivots
        direction = -1 if at_upper[enter] else 1
        t_unbounded = not has_ub[enter]
        t_best = ub[enter]
        leave = -1
        leave_to_upper = False
        for i in range(m):
            a = T[i, enter]
            if direction < 0:
                a = -a
            if -tol <= a <= tol:
                continue
            bi = basis[i]
            if a > 0:
                t = beta[i] / a
                to_upper = False
            else:
                if not has_ub[bi]:
                    continue
                t = (ub[bi] - beta[i]) / (-a)
                to_upper = True
            if t < 0:
                t = 0.0
            if t_unbounded or t < t_best or (t == t_best and leave >= 0 and bi < basis[leave]):
                t_unbounded = False
                t_best = t
                leave = i
                leave_to_upper = to_upper
        if t_unbounded:
            return pivots
        step = t_best if direction > 0 else -t_best
        if step != 0.0:
            for i in range(m):
                a = T[i, enter]
                if a != 0.0:
                    beta[i] = beta[i] - a * step
        if leave < 0:
            at_upper[enter] = not at_upper[enter]
            degenerate_run = 0
            continue
        if t_best == 0.0:
            degenerate_run += 1
            if degenerate_run > DEGENERATE_LIMIT:
                use_bland = True
        else:
            degenerate_run = 0
        old = basis[leave]
        if at_upper[enter]:
            entering_value = ub[enter] + step
        else:
            entering_value = step
        _pivot_float(T, d, leave, enter)
        pivots += 1
        basis[leave] = enter
        beta[leave] = entering_value
        in_basis[enter] = 1
        in_basis[old] = 0
        at_upper[enter] = 0
        at_upper[old] = leave_to_upper
        if is_art[old]:
            banned[old] = 1


cdef void _pivot_obj(list T, list d, Py_ssize_t r, Py_ssize_t c):
    cdef list prow = T[r], row
    cdef Py_ssize_t ncols = len(prow), i, j
    p = prow[c]
    if p != 1:
        for j in range(ncols):
            if prow[j] != 0:
                prow[j] = prow[j] / p
    for i in range(len(T)):
        if i == r:
            continue
        row = T[i]
        f = row[c]
        if f == 0:
            continue
        for j in range(ncols):
            pj = prow[j]
            if pj != 0:
                row[j] = row[j] - f * pj
    f = d[c]
    if f != 0:
        for j in range(ncols):
            pj = prow[j]
            if pj != 0:
                d[j] = d[j] - f * pj


cdef int _phase1_obj(list T, list beta, list basis, list at_upper, list ub, list is_art, int rule):
    cdef Py_ssize_t m = len(T), N = len(ub)
    cdef Py_ssize_t i, j, enter, leave, bi, old
    cdef int direction, degenerate_run = 0, pivots = 0
    cdef bint use_bland = rule == BLAND, leave_to_upper, to_upper
    cdef list row
    cdef list d = [1 if is_art[j] else 0 for j in range(N)]
    for i in range(m):
        if is_art[basis[i]]:
            row = T[i]
            for j in range(N):
                if row[j] != 0:
                    d[j] = d[j] - row[j]
    cdef list in_basis = [False] * N
    cdef list banned = [False] * N
    for b in basis:
        in_basis[b] = True
    while True:
        enter = -1
        best = 0
        for j in range(N):
            if in_basis[j] or banned[j]:
                continue
            dj = d[j]
            score = dj if at_upper[j] else -dj
            if score > best:
                enter = j
                if use_bland:
                    break
                best = score
        if enter < 0:
            return pivots
        direction = -1 if at_upper[enter] else 1
        t_best = ub[enter]
        leave = -1
        leave_to_upper = False
        for i in range(m):
            a = (<list>T[i])[enter]
            if direction < 0:
                a = -a
            if a == 0:
                continue
            bi = basis[i]
            if a > 0:
                t = beta[i] / a
                to_upper = False
            else:
                u = ub[bi]
                if u is None:
                    continue
                t = (u - beta[i]) / (-a)
                to_upper = True
            if t_best is None or t < t_best or (
                    t == t_best and leave >= 0 and bi < basis[leave]):
                t_best = t
                leave = i
                leave_to_upper = to_upper
        if t_best is None:
            return pivots
        step = t_best if direction > 0 else -t_best
        if step != 0:
            for i in range(m):
                a = (<list>T[i])[enter]
                if a != 0:
                    beta[i] = beta[i] - a * step
        if leave < 0:
            at_upper[enter] = not at_upper[enter]
            degenerate_run = 0
            continue
        if t_best == 0:
            degenerate_run += 1
            if degenerate_run > DEGENERATE_LIMIT:
                use_bland = True
        else:
            degenerate_run = 0
        old = basis[leave]
        if at_upper[enter]:
            entering_value = ub[enter] + step
        else:
            entering_value = step
        _pivot_obj(T, d, leave, enter)
        pivots += 1
        basis[leave] = enter
        beta[leave] = entering_value
        in_basis[enter] = True
        in_basis[old] = False
        at_upper[enter] = False
        at_upper[old] = leave_to_upper
        if is_art[old]:
            banned[old] = True
