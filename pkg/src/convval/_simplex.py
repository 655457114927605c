"""Exact linear programming by the dense two-phase primal simplex method.

Problems here are tiny: a handful of equality rows (ambient dimension plus
one or two) against a moderate number of nonnegative columns.  A dense
rational tableau with Bland's anti-cycling rule is exact, always terminates,
and is fast at this scale; no sparse or floating-point machinery is wanted.

Standard form: minimize c.x subject to A x = b, x >= 0.
"""

from .rational import Q

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Q(0)
_ONE = Q(1)


def _pivot(tableau, obj, row, col):
    piv = tableau[row][col]
    inv = _ONE / piv
    tableau[row] = [v * inv for v in tableau[row]]
    prow = tableau[row]
    for r in range(len(tableau)):
        if r == row:
            continue
        factor = tableau[r][col]
        if factor != 0:
            tableau[r] = [v - factor * p for v, p in zip(tableau[r], prow)]
    factor = obj[col]
    if factor != 0:
        for j in range(len(obj)):
            obj[j] = obj[j] - factor * prow[j]


def _run(tableau, obj, basis, ncols):
    """Bland-rule simplex loop over the first ncols columns. Returns status."""
    m = len(tableau)
    while True:
        col = -1
        for j in range(ncols):
            if obj[j] < 0:
                col = j
                break
        if col < 0:
            return OPTIMAL
        row = -1
        best = None
        for r in range(m):
            a = tableau[r][col]
            if a > 0:
                ratio = tableau[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                    best = ratio
                    row = r
        if row < 0:
            return UNBOUNDED
        _pivot(tableau, obj, row, col)
        basis[row] = col


def solve_eq(A, b, c):
    """Minimize c.x over {A x = b, x >= 0}.

    Returns (status, value, x) where status is OPTIMAL, INFEASIBLE or
    UNBOUNDED; value and x are None unless OPTIMAL.
    """
    m = len(A)
    n = len(c)
    rows = []
    rhs = []
    for i in range(m):
        row = [Q(v) for v in A[i]]
        bi = Q(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)

    # Phase 1: artificial basis, minimize the sum of artificials.
    tableau = []
    for i in range(m):
        art = [_ZERO] * m
        art[i] = _ONE
        tableau.append(rows[i] + art + [rhs[i]])
    basis = list(range(n, n + m))
    obj = [_ZERO] * (n + m + 1)
    for j in range(n):
        obj[j] = -sum((tableau[i][j] for i in range(m)), _ZERO)
    obj[-1] = -sum(rhs, _ZERO)
    _run(tableau, obj, basis, n + m)
    if -obj[-1] != 0:
        return INFEASIBLE, None, None

    # Drive leftover artificials out of the basis; drop redundant rows.
    r = 0
    while r < len(tableau):
        if basis[r] >= n:
            col = -1
            for j in range(n):
                if tableau[r][j] != 0:
                    col = j
                    break
            if col < 0:
                del tableau[r]
                del basis[r]
                continue
            _pivot(tableau, obj, r, col)
            basis[r] = col
        r += 1

    # Phase 2 on the original columns only.
    tableau = [row[:n] + [row[-1]] for row in tableau]
    cost = [Q(v) for v in c]
    obj = [_ZERO] * (n + 1)
    for j in range(n + 1):
        acc = cost[j] if j < n else _ZERO
        for r in range(len(tableau)):
            cb = cost[basis[r]]
            if cb != 0:
                acc -= cb * tableau[r][j]
        obj[j] = acc

    status = _run(tableau, obj, basis, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [_ZERO] * n
    for r in range(len(tableau)):
        x[basis[r]] = tableau[r][-1]
    return OPTIMAL, -obj[-1], x


def feasible_eq(A, b):
    """Is {A x = b, x >= 0} nonempty?  Phase 1 only."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        row = [Q(v) for v in A[i]]
        bi = Q(b[i])
        if bi < 0:
            row = [-v for v in row]
            bi = -bi
        rows.append(row)
        rhs.append(bi)
    tableau = []
    for i in range(m):
        art = [_ZERO] * m
        art[i] = _ONE
        tableau.append(rows[i] + art + [rhs[i]])
    basis = list(range(n, n + m))
    obj = [_ZERO] * (n + m + 1)
    for j in range(n):
        obj[j] = -sum((tableau[i][j] for i in range(m)), _ZERO)
    obj[-1] = -sum(rhs, _ZERO)
    _run(tableau, obj, basis, n + m)
    return -obj[-1] == 0
