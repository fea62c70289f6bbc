"""Pure-Python hot kernels: Gauss-Jordan elimination and phase-1 simplex.

Both kernels work on plain lists of rows so the same code serves exact
(``Fraction``) and float data.  ``tol == 0`` selects exact semantics:
first nonzero pivot, exact comparisons.  ``tol > 0`` selects float
semantics: largest-magnitude pivot, everything within ``tol`` is zero.

The compiled twin in ``_ckernels.pyx`` must stay behaviourally identical.
"""

BLAND = 0
DANTZIG = 1

# consecutive degenerate pivots tolerated before Dantzig falls back to Bland
DEGENERATE_LIMIT = 50


def rref(rows, col_order, tol):
    """Reduce ``rows`` in place to reduced row echelon form.

    Columns are visited in ``col_order``; columns not listed are never
    pivoted on but are still updated.  Returns the list of pivot columns,
    pivot ``k`` living in row ``k``.
    """
    m = len(rows)
    if m == 0:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in col_order:
        if r == m:
            break
        piv = -1
        if tol == 0:
            for i in range(r, m):
                if rows[i][c] != 0:
                    piv = i
                    break
        else:
            best = tol
            for i in range(r, m):
                v = abs(rows[i][c])
                if v > best:
                    best = v
                    piv = i
        if piv < 0:
            if tol != 0:
                for i in range(r, m):
                    rows[i][c] = 0.0
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
    if tol != 0:
        for row in rows:
            for j in range(ncols):
                if abs(row[j]) <= tol:
                    row[j] = 0.0
    return pivots


def _pivot(T, d, r, c):
    prow = T[r]
    p = prow[c]
    ncols = len(prow)
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


def phase1(T, beta, basis, at_upper, ub, is_art, rule, tol):
    """Bounded-variable primal simplex minimising the sum of artificials.

    ``T`` is an m x N tableau in canonical form for ``basis``; all variables
    have lower bound 0 and upper bound ``ub[j]`` (``None`` for +inf).
    ``beta`` holds the current basic values, ``at_upper`` the nonbasic
    status.  Artificials that leave the basis are never re-entered.
    Everything is updated in place.  Returns the number of pivots.
    """
    m = len(T)
    N = len(ub)
    # reduced costs of the phase-1 objective
    d = [1 if is_art[j] else 0 for j in range(N)]
    if tol != 0:
        d = [float(v) for v in d]
    for i in range(m):
        if is_art[basis[i]]:
            row = T[i]
            for j in range(N):
                if row[j] != 0:
                    d[j] = d[j] - row[j]
    in_basis = [False] * N
    for b in basis:
        in_basis[b] = True
    banned = [False] * N
    use_bland = rule == BLAND
    degenerate_run = 0
    pivots = 0
    while True:
        # entering variable
        enter = -1
        best = tol
        for j in range(N):
            if in_basis[j] or banned[j]:
                continue
            dj = d[j]
            if at_upper[j]:
                score = dj
            else:
                score = -dj
            if score > best:
                enter = j
                if use_bland:
                    break
                best = score
        if enter < 0:
            return pivots
        direction = -1 if at_upper[enter] else 1
        # ratio test; t_best None means unbounded so far
        t_best = ub[enter]
        leave = -1
        leave_to_upper = False
        for i in range(m):
            a = T[i][enter]
            if direction < 0:
                a = -a
            if -tol <= a <= tol:
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
            if tol != 0 and t < 0:
                t = 0.0
            if t_best is None or t < t_best or (
                    t == t_best and leave >= 0 and bi < basis[leave]):
                t_best = t
                leave = i
                leave_to_upper = to_upper
        if t_best is None:
            # cannot happen for a bounded-below objective; treat as optimal
            return pivots
        step = t_best if direction > 0 else -t_best
        if step != 0:
            for i in range(m):
                a = T[i][enter]
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
        _pivot(T, d, leave, enter)
        pivots += 1
        basis[leave] = enter
        beta[leave] = entering_value
        in_basis[enter] = True
        in_basis[old] = False
        at_upper[enter] = False
        at_upper[old] = leave_to_upper
        if is_art[old]:
            banned[old] = True
