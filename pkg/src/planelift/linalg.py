"""Exact rational matrices and fraction-free elimination.

Everything in this package reduces to exact linear algebra over the
rationals: ranks and kernels of collinearity matrices, determinants of
coordinate triples, and enumeration of minors.  Entries are represented
with fractions.Fraction, and elimination is done Bareiss-style on
denominator-cleared integer rows so intermediate values stay integral
and bounded.

Row and column index sets passed to minor() / all_minors() are 1-based,
matching the point labels used throughout the package.  Raw entry access
on QMatrix is 0-based.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd


def parse_rat(text):
    """Parse a rational written as 'p' or 'p/q' into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("not a rational number: %r" % (text,)) from exc


def format_rat(q):
    """Render a Fraction as 'p' or 'p/q' with positive denominator."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


class QMatrix:
    """Dense matrix of Fractions, immutable by convention.

    The constructor copies its input rows and normalises every entry to
    Fraction, so instances can be shared freely.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows_of_entries, cols=None):
        data = [[Fraction(e) for e in row] for row in rows_of_entries]
        self.rows = len(data)
        if data:
            self.cols = len(data[0])
        else:
            self.cols = 0 if cols is None else cols
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")
        self._data = data

    @classmethod
    def empty(cls, cols):
        """A matrix with no rows but a definite column count."""
        return cls([], cols=cols)

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def entry(self, i, j):
        """0-based entry access."""
        return self._data[i][j]

    def row(self, i):
        return list(self._data[i])

    def column(self, j):
        return [self._data[i][j] for i in range(self.rows)]

    def to_lists(self):
        return [list(row) for row in self._data]

    def transpose(self):
        return QMatrix([[self._data[i][j] for i in range(self.rows)]
                        for j in range(self.cols)])

    def __eq__(self, other):
        return (isinstance(other, QMatrix)
                and self._data == other._data)

    def __repr__(self):
        return "QMatrix(%d x %d)" % (self.rows, self.cols)


def _int_rows(rows):
    """Scale each row of Fractions to integers; return (int rows, scales).

    Row i of the result equals scales[i] * rows[i] entrywise, with
    scales[i] a positive integer (the lcm of the denominators).
    """
    out = []
    scales = []
    for row in rows:
        m = 1
        for e in row:
            m = m * e.denominator // gcd(m, e.denominator)
        out.append([int(e * m) for e in row])
        scales.append(m)
    return out, scales


def _bareiss_det_int(a):
    """Determinant of a square integer matrix by fraction-free elimination.

    Mutates a.  The division in the inner loop is exact by Sylvester's
    determinant identity, which is the whole point of the method: the
    intermediate entries are themselves minors of the input.
    """
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi = a[i]
            rowk = a[k]
            for j in range(k + 1, n):
                rowi[j] = (pivot * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m):
    """Exact determinant of a square QMatrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    ints, scales = _int_rows(m.to_lists())
    d = _bareiss_det_int(ints)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(d, denom)


def rank(m):
    """Exact rank over the rationals, by fraction-free elimination.

    Row scaling does not change the rank, so the matrix is first cleared
    to integers row by row.
    """
    a, _ = _int_rows(m.to_lists())
    nrows, ncols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        pivot = a[r][c]
        for i in range(r + 1, nrows):
            aic = a[i][c]
            rowi = a[i]
            rowr = a[r]
            for j in range(c + 1, ncols):
                rowi[j] = (pivot * rowi[j] - aic * rowr[j]) // prev
            rowi[c] = 0
        prev = pivot
        r += 1
    return r


def _rref(rows):
    """Reduced row echelon form over Fractions.

    Returns (rref rows, pivot column list).  Input is not mutated.
    """
    a = [list(row) for row in rows]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = a[r][c]
        a[r] = [e / inv for e in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [e - f * p for e, p in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace(m):
    """Canonical exact basis of the right kernel {z : m z = 0}.

    The basis is unique: the raw kernel vectors read off the reduced
    echelon form are themselves row-reduced, so every basis vector has
    its first nonzero entry equal to 1 and the result does not depend
    on elimination order.  Basis size is cols - rank(m).
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [[Fraction(1 if i == j else 0) for j in range(m.cols)]
                for i in range(m.cols)]
    rref_rows, pivots = _rref(m.to_lists())
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            v[pcol] = -rref_rows[prow][f]
        basis.append(v)
    if not basis:
        return []
    canon, _ = _rref(basis)
    return canon


def _check_index_set(idx, bound, what):
    prev = 0
    for i in idx:
        if not prev < i:
            raise ValueError("%s indices must be strictly increasing" % what)
        prev = i
    if idx and (idx[0] < 1 or idx[-1] > bound):
        raise IndexError("%s index out of range 1..%d" % (what, bound))


def minor(m, row_idx, col_idx):
    """Determinant of the submatrix on 1-based index sets.

    row_idx and col_idx are strictly increasing sequences of equal
    length; the empty minor is 1.
    """
    row_idx = tuple(row_idx)
    col_idx = tuple(col_idx)
    if len(row_idx) != len(col_idx):
        raise ValueError("minor needs equally many rows and columns")
    _check_index_set(row_idx, m.rows, "row")
    _check_index_set(col_idx, m.cols, "column")
    if not row_idx:
        return Fraction(1)
    sub = [[m.entry(i - 1, j - 1) for j in col_idx] for i in row_idx]
    ints, scales = _int_rows(sub)
    d = _bareiss_det_int(ints)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(d, denom)


def _laplace_det(rows):
    """Determinant of a small square Fraction matrix.

    Repeatedly expands along columns with at most one nonzero entry
    (cheap after row reduction upstream), then falls back to Bareiss for
    whatever dense core remains.
    """
    a = [list(r) for r in rows]
    factor = Fraction(1)
    while a:
        n = len(a)
        expanded = False
        for j in range(n):
            nz = [i for i in range(n) if a[i][j] != 0]
            if not nz:
                return Fraction(0)
            if len(nz) == 1:
                i = nz[0]
                factor *= a[i][j] * (-1) ** (i + j)
                a = [row[:j] + row[j + 1:]
                     for k, row in enumerate(a) if k != i]
                expanded = True
                break
        if not expanded:
            break
    if not a:
        return factor
    ints, scales = _int_rows(a)
    d = _bareiss_det_int(ints)
    denom = 1
    for s in scales:
        denom *= s
    return factor * Fraction(d, denom)


def all_minors(m, k):
    """Yield every k x k minor of m exactly once.

    Emission order is lexicographic in (row index set, column index
    set), with 1-based index tuples, so output is reproducible no
    matter how the work is scheduled.

    For each row set the submatrix is row-reduced once.  If it has
    fewer than k pivots every minor of the row set is zero and is
    emitted as such without further arithmetic; otherwise each column
    selection costs only a small complementary determinant, because
    det(S_C) = det(S_P) * det(R_C) for R the reduced form of S and P
    its pivot columns.
    """
    if k < 0 or k > min(m.rows, m.cols):
        raise ValueError("minor size %d out of range for %d x %d"
                         % (k, m.rows, m.cols))
    col_sets = list(combinations(range(1, m.cols + 1), k))
    if k == 0:
        for rows_sel in combinations(range(1, m.rows + 1), 0):
            yield rows_sel, (), Fraction(1)
        return
    for rows_sel in combinations(range(1, m.rows + 1), k):
        sub = [m.row(i - 1) for i in rows_sel]
        rref_rows, pivots = _rref(sub)
        if len(pivots) < k:
            zero = Fraction(0)
            for cols_sel in col_sets:
                yield rows_sel, cols_sel, zero
            continue
        det_p = minor(m, rows_sel, tuple(p + 1 for p in pivots))
        for cols_sel in col_sets:
            rc = [[rref_rows[i][c - 1] for c in cols_sel] for i in range(k)]
            yield rows_sel, cols_sel, det_p * _laplace_det(rc)


def matmul(a, b):
    """Product of two QMatrix values."""
    if a.cols != b.rows:
        raise ValueError("shape mismatch")
    bt = b.transpose()
    return QMatrix([[sum(x * y for x, y in zip(a.row(i), bt.row(j)))
                     for j in range(b.cols)] for i in range(a.rows)])


def matvec(a, v):
    """Matrix times column vector, as a plain list of Fractions."""
    if a.cols != len(v):
        raise ValueError("shape mismatch")
    v = [Fraction(x) for x in v]
    return [sum(x * y for x, y in zip(a.row(i), v)) for i in range(a.rows)]


def cross(u, v):
    """Cross product of two 3-vectors; also the line through two points
    of the projective plane (and dually the intersection of two lines)."""
    u = [Fraction(x) for x in u]
    v = [Fraction(x) for x in v]
    return [u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]]


def det3(p, q, r):
    """Determinant of three column 3-vectors."""
    return (p[0] * (q[1] * r[2] - q[2] * r[1])
            - p[1] * (q[0] * r[2] - q[2] * r[0])
            + p[2] * (q[0] * r[1] - q[1] * r[0]))
