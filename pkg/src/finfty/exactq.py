"""Exact rational linear algebra used by all degree-by-degree solves.

Matrices are plain row-major lists of lists of ``fractions.Fraction``; vectors
are lists of Fraction.  Everything is deterministic: pivots and complements
are always chosen by the lexicographically first admissible column, so the
same input produces bit-identical output on every run.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x):
    """Coerce ints / 'p/q' strings / Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def copy_matrix(m):
    return [row[:] for row in m]


def mat_mul(a, b):
    n, k = len(a), len(b)
    assert k == 0 or all(len(row) == len(b[0]) for row in b)
    cols = len(b[0]) if b else 0
    out = zeros(n, cols)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            for j in range(cols):
                if bt[j] != 0:
                    oi[j] += c * bt[j]
    return out


def mat_vec(a, v):
    assert not a or len(a[0]) == len(v)
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j] != 0), ZERO)
            for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    c = frac(c)
    return [[c * x for x in row] for row in a]


def transpose(a):
    if not a:
        return []
    return [[a[i][j] for i in range(len(a))] for j in range(len(a[0]))]


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def rref(m):
    """Reduced row echelon form.

    Returns ``(r, pivots)`` where ``r`` is a new matrix in RREF and
    ``pivots`` is the strictly increasing list of pivot columns.  Pivot
    selection: first row (top to bottom) with a nonzero entry in the
    leftmost unfinished column.
    """
    r = copy_matrix(m)
    n_rows = len(r)
    n_cols = len(r[0]) if n_rows else 0
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r >= n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if r[i_row][piv_c] != 0:
                break
        else:
            continue
        if i_row != piv_r:
            r[piv_r], r[i_row] = r[i_row], r[piv_r]
        fp = r[piv_r][piv_c]
        if fp != 1:
            r[piv_r] = [x / fp for x in r[piv_r]]
        for i_row in range(n_rows):
            if i_row == piv_r:
                continue
            f = r[i_row][piv_c]
            if f == 0:
                continue
            rp = r[piv_r]
            r[i_row] = [x - f * y for x, y in zip(r[i_row], rp)]
        pivots.append(piv_c)
        piv_r += 1
    return r, pivots


def rank(m):
    return len(rref(m)[1])


def solve(a, b):
    """One exact solution x of a x = b, or None if b is not in the image.

    Free variables are set to zero under the lexicographic pivot rule, so the
    returned solution is canonical.
    """
    n_rows = len(a)
    assert len(b) == n_rows
    n_cols = len(a[0]) if n_rows else 0
    aug = [a[i][:] + [b[i]] for i in range(n_rows)]
    r, pivots = rref(aug)
    if n_cols in pivots:
        return None  # inconsistent
    x = [ZERO] * n_cols
    for row_idx, col in enumerate(pivots):
        x[col] = r[row_idx][n_cols]
    return x


def kernel_basis(a):
    """Basis of the null space as a list of column vectors.

    One vector per free column, in increasing column order; the free
    coordinate is set to 1 (standard rref parametrization).
    """
    n_rows = len(a)
    n_cols = len(a[0]) if n_rows else 0
    if n_rows == 0:
        return [unit_vector(n_cols, j) for j in range(n_cols)]
    r, pivots = rref(a)
    pivot_set = set(pivots)
    basis = []
    for j in range(n_cols):
        if j in pivot_set:
            continue
        v = [ZERO] * n_cols
        v[j] = ONE
        for row_idx, col in enumerate(pivots):
            v[col] = -r[row_idx][j]
        basis.append(v)
    return basis


def image_basis(a):
    """Basis of the column space: the original columns at the pivot indices."""
    _, pivots = rref(a)
    return [[a[i][j] for i in range(len(a))] for j in pivots]


def unit_vector(n, j):
    v = [ZERO] * n
    v[j] = ONE
    return v


def _eliminate(rows, pivots, v):
    """Reduce v against echelon rows in place-free fashion; return residue."""
    v = list(v)
    for row, p in zip(rows, pivots):
        c = v[p]
        if c != 0:
            v = [x - c * y for x, y in zip(v, row)]
    return v


def _absorb(rows, pivots, v):
    """Add the residue of v to the echelon span; return True if rank grew."""
    res = _eliminate(rows, pivots, v)
    for p, x in enumerate(res):
        if x != 0:
            rows.append([y / x for y in res])
            pivots.append(p)
            return True
    return False


def complement_basis(sub, ambient_dim):
    """Standard basis vectors extending ``sub`` to a basis of k^ambient_dim.

    Greedy lexicographic: scan e_0, e_1, ... and keep every vector that is
    independent of ``sub`` plus the vectors kept so far.  Raises ValueError
    if ``sub`` is not linearly independent.
    """
    rows, pivots = [], []
    for v in sub:
        assert len(v) == ambient_dim
        if not _absorb(rows, pivots, v):
            raise ValueError("dependent input")
    chosen = []
    for j in range(ambient_dim):
        if len(pivots) == ambient_dim:
            break
        candidate = unit_vector(ambient_dim, j)
        if _absorb(rows, pivots, candidate):
            chosen.append(candidate)
    return chosen


def extend_independent(base, candidates):
    """Greedily pick candidates that stay independent of ``base``.

    Scans ``candidates`` in order and keeps each vector that is linearly
    independent of ``base`` plus everything kept so far; returns the kept
    vectors.  Raises ValueError if ``base`` itself is dependent.
    """
    rows, pivots = [], []
    for v in base:
        if not _absorb(rows, pivots, list(v)):
            raise ValueError("dependent input")
    chosen = []
    for v in candidates:
        if _absorb(rows, pivots, list(v)):
            chosen.append(list(v))
    return chosen


def invert(m):
    """Exact inverse of a square matrix; ValueError if singular."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    aug = [list(row) + list(e) for row, e in zip(m, identity(n))]
    reduced, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in reduced]
