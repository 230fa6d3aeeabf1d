"""Collinearity matrices, lift spaces, and constructive liftings.

Given distinct abscissas x_1..x_n on a line, a lift assigns a height
z_i to each point; the lifted points (x_i, 1, z_i) must stay collinear
along every configuration line.  Those conditions are linear in z and
are encoded by the collinearity matrix built here.  The rest of the
module decides when a non-degenerate (realising) lift exists and
constructs one.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .config import (Realisation, analyze, circuits, components,
                     delete_line, induced)
from .linalg import QMatrix, cross, det, det3, matvec, nullspace, rank
from .poly import Poly, var_id

CONVENTIONAL_CENTER = (0, 0, 1)
CONVENTIONAL_LINE = (0, 0, 1)


@dataclass(frozen=True)
class CollinMatrix:
    """The collinearity matrix of a configuration.

    One row per 3-subset of each line (lines in configuration order,
    triples lexicographic within a line).  The row of triple
    i1 < i2 < i3 has entries x_{i2}-x_{i3}, -(x_{i1}-x_{i3}),
    x_{i1}-x_{i2} in columns i1, i2, i3 and zeros elsewhere.  `numeric`
    and `abscissas` are filled when the matrix is instantiated at a
    point; otherwise the instance only carries the symbolic pattern.
    """

    config: object
    row_triples: tuple
    abscissas: tuple = None
    numeric: QMatrix = None

    def pair(self, row, col):
        """Ordered point pair (a, b) such that the entry at 1-based
        (row, col) is x_a - x_b, or None where the entry is zero."""
        i1, i2, i3 = self.row_triples[row - 1]
        if col == i1:
            return (i2, i3)
        if col == i2:
            return (i3, i1)
        if col == i3:
            return (i1, i2)
        return None


def build_collin(c, x=None):
    """Collinearity matrix of c, numeric at abscissas x when given.

    The abscissas must be pairwise distinct.
    """
    triples = []
    for line in c.lines:
        for t in combinations(sorted(line), 3):
            triples.append(t)
    if x is None:
        return CollinMatrix(c, tuple(triples))
    xs = tuple(Fraction(v) for v in x)
    if len(xs) != c.n:
        raise ValueError("expected %d abscissas, got %d" % (c.n, len(xs)))
    seen = {}
    for i, v in enumerate(xs, start=1):
        if v in seen:
            raise ValueError("duplicate abscissa: points %d and %d both "
                             "sit at %s" % (seen[v], i, v))
        seen[v] = i
    rows = []
    for i1, i2, i3 in triples:
        row = [Fraction(0)] * c.n
        row[i1 - 1] = xs[i2 - 1] - xs[i3 - 1]
        row[i2 - 1] = -(xs[i1 - 1] - xs[i3 - 1])
        row[i3 - 1] = xs[i1 - 1] - xs[i2 - 1]
        rows.append(row)
    return CollinMatrix(c, tuple(triples), xs, QMatrix(rows, cols=c.n))


@dataclass(frozen=True)
class LiftSpace:
    """Kernel of a numeric collinearity matrix."""

    basis: tuple
    dimension: int
    trivial_plane: tuple

    @property
    def has_nontrivial(self):
        """Heights outside the trivial plane exist iff the dimension is
        at least 3."""
        return self.dimension >= 3


def lift_space(cm):
    """Exact kernel of cm.numeric, with the trivial plane spanned by
    the all-ones vector and the abscissa vector."""
    if cm.numeric is None:
        raise ValueError("collinearity matrix has no numeric instance")
    basis = nullspace(cm.numeric)
    ones = tuple(Fraction(1) for _ in range(cm.config.n))
    return LiftSpace(tuple(tuple(v) for v in basis), len(basis),
                     (ones, cm.abscissas))


@dataclass(frozen=True)
class LiftResult:
    kind: str
    realisation: Realisation = None


def classify_lift(c, r):
    """'realising', 'trivial' or 'degenerate' for a candidate lift r.

    Realising means the columns reproduce the dependence pattern of c
    exactly: a 3-subset is linearly dependent iff it is collinear in c,
    no column vanishes and no two columns coincide projectively.  A
    configuration whose every triple is collinear is realised by
    collinear points, so the realising answer takes precedence over the
    trivial one.  Trivial means all lifted points are collinear.
    """
    m = circuits(c)
    cols = r.columns()
    for i, col in enumerate(cols, start=1):
        if all(v == 0 for v in col):
            return "degenerate"
    for i, j in combinations(range(1, c.n + 1), 2):
        if all(v == 0 for v in cross(cols[i - 1], cols[j - 1])):
            return "degenerate"
    exact = True
    for t in combinations(range(1, c.n + 1), 3):
        d = det3(cols[t[0] - 1], cols[t[1] - 1], cols[t[2] - 1])
        if m.is_circuit_triple(t):
            if d != 0:
                return "degenerate"
        elif d == 0:
            exact = False
    if exact:
        return "realising"
    if rank(r.matrix) <= 2:
        return "trivial"
    return "degenerate"


def lift(c, x, attempts=32, seed=0):
    """Search the lift space at abscissas x for a realising lift.

    Returns a LiftResult of kind 'no-nontrivial-lift' when the lift
    space is at most the trivial plane; otherwise tries random integer
    combinations of the kernel basis (coefficients in [-10000, 10000])
    and returns the first realising candidate, or the first degenerate
    one if the attempt budget runs out.  Deterministic for a given seed.
    """
    cm = build_collin(c, x)
    space = lift_space(cm)
    if space.dimension <= 2:
        return LiftResult("no-nontrivial-lift")
    rng = random.Random(seed)
    xs = cm.abscissas
    ones = [Fraction(1)] * c.n
    best = None
    for _ in range(attempts):
        coeffs = [rng.randint(-10000, 10000) for _ in space.basis]
        z = [sum(cv * bv[i] for cv, bv in zip(coeffs, space.basis))
             for i in range(c.n)]
        if rank(QMatrix([ones, list(xs), z])) < 3:
            continue
        r = Realisation.from_columns(
            [(xs[i], 1, z[i]) for i in range(c.n)])
        kind = classify_lift(c, r)
        if kind == "realising":
            return LiftResult("realising", r)
        if best is None:
            best = LiftResult(kind, r)
    if best is not None:
        return best
    # Every random draw hit the trivial plane; fall back to a basis
    # vector outside it, which exists because the dimension is >= 3.
    for b in space.basis:
        if rank(QMatrix([ones, list(xs), list(b)])) == 3:
            r = Realisation.from_columns(
                [(xs[i], 1, b[i]) for i in range(c.n)])
            return LiftResult(classify_lift(c, r), r)
    raise RuntimeError("kernel basis spans only the trivial plane")


def forest_lift(c, x, retry_budget=64):
    """Constructive realising lift of a forest configuration.

    Walks the lines of each component outward, assigning each line a
    fresh affine height function z = a + b*x that matches the height of
    the (unique) already-placed point on it.  Parameters come from a
    fixed internal generator, so the output is a deterministic function
    of the input; accidental extra collinearities trigger a retry.
    """
    if not analyze(c).is_forest:
        raise ValueError("not a forest configuration")
    xs = tuple(Fraction(v) for v in x)
    if len(xs) != c.n:
        raise ValueError("expected %d abscissas, got %d" % (c.n, len(xs)))
    if len(set(xs)) != c.n:
        raise ValueError("duplicate abscissa")
    rng = random.Random(0x1f2e3d)
    for _ in range(retry_budget):
        z = [None] * (c.n + 1)
        unprocessed = set(range(len(c.lines)))
        while unprocessed:
            pick = None
            for li in sorted(unprocessed):
                if any(z[p] is not None for p in c.lines[li]):
                    pick = li
                    break
            if pick is None:
                pick = min(unprocessed)
            unprocessed.remove(pick)
            line = c.lines[pick]
            anchored = [p for p in line if z[p] is not None]
            if len(anchored) > 1:
                raise RuntimeError("forest invariant violated on line %d"
                                   % (pick + 1))
            b = Fraction(rng.randint(-999, 999))
            if anchored:
                p = anchored[0]
                a = z[p] - b * xs[p - 1]
            else:
                a = Fraction(rng.randint(-999, 999))
            for q in line:
                if z[q] is None:
                    z[q] = a + b * xs[q - 1]
        for p in range(1, c.n + 1):
            if z[p] is None:
                z[p] = Fraction(rng.randint(-999, 999))
        r = Realisation.from_columns(
            [(xs[i - 1], 1, z[i]) for i in range(1, c.n + 1)])
        if classify_lift(c, r) == "realising":
            return LiftResult("realising", r)
    raise RuntimeError("degenerate parameter collision: retry budget of %d "
                       "exhausted" % retry_budget)


def epsilon_scale(l, eps):
    """Rescale the heights of a lift by eps / (n * max |z_i|).

    Every 3x3 minor is multiplied by a fixed power of the common factor
    (one per lifted point involved), so the zero pattern of the minors,
    and with it the classification, is unchanged.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    r = l.realisation
    if r is None:
        raise ValueError("lift result carries no realisation")
    cols = r.columns()
    zmax = max(abs(col[2]) for col in cols)
    if zmax == 0:
        raise ValueError("all-zero lift cannot be rescaled")
    f = eps / (r.n * zmax)
    return LiftResult(l.kind, Realisation.from_columns(
        [(col[0], col[1], col[2] * f) for col in cols]))


@dataclass(frozen=True)
class ChartMap:
    """Affine chart of a projective line.

    Points of the line are alpha*A + beta*B; the abscissa is
    alpha/beta, read off coordinates `coords` = (i, j) where A, B are
    supported."""

    line: tuple
    basis: tuple
    coords: tuple

    def to_point(self, t):
        a, b = self.basis
        return tuple(Fraction(t) * u + v for u, v in zip(a, b))

    def abscissa(self, w):
        i, j = self.coords
        if w[j] == 0:
            raise ValueError("point at the chart's infinity")
        return Fraction(w[i]) / Fraction(w[j])


@dataclass(frozen=True)
class ProjectionResult:
    abscissas: tuple
    chart: ChartMap
    distinct: bool


def project(r, center=CONVENTIONAL_CENTER, target_line=CONVENTIONAL_LINE):
    """Central projection of the columns of r onto a target line.

    Returns the abscissas of the images in a fixed affine chart of the
    line, together with the chart map (so w = t*A + B reconstructs the
    image points).  Coincident images are reported via the `distinct`
    flag rather than as an error.  The default center (0,0,1) and line
    z = 0 invert lift(): projecting a lift recovers its abscissas.
    """
    ln = tuple(Fraction(v) for v in target_line)
    cen = tuple(Fraction(v) for v in center)
    if all(v == 0 for v in ln):
        raise ValueError("target line must have a nonzero coefficient")
    if sum(a * b for a, b in zip(cen, ln)) == 0:
        raise ValueError("projection center lies on the target line")
    m = max(range(3), key=lambda k: abs(ln[k]))
    i, j = (k for k in range(3) if k != m)
    a = [Fraction(0)] * 3
    a[i] = Fraction(1)
    a[m] = -ln[i] / ln[m]
    b = [Fraction(0)] * 3
    b[j] = Fraction(1)
    b[m] = -ln[j] / ln[m]
    chart = ChartMap(ln, (tuple(a), tuple(b)), (i, j))
    out = []
    for idx in range(1, r.n + 1):
        col = r.column(idx)
        if all(v == 0 for v in cross(cen, col)):
            raise ValueError("point %d coincides with the projection center"
                             % idx)
        w = cross(cross(cen, col), ln)
        if w[j] == 0:
            raise ValueError("point %d projects to the chart's infinity"
                             % idx)
        out.append(Fraction(w[i]) / Fraction(w[j]))
    return ProjectionResult(tuple(out), chart,
                            len(set(out)) == len(out))


def apply_projectivity(r, t, scales):
    """Transform each column i of r to scales_i * T * column_i."""
    if t.rows != 3 or t.cols != 3:
        raise ValueError("projectivity matrix must be 3x3")
    if det(t) == 0:
        raise ValueError("projectivity matrix is singular")
    ss = [Fraction(s) for s in scales]
    if len(ss) != r.n:
        raise ValueError("expected %d scales" % r.n)
    if any(s == 0 for s in ss):
        raise ValueError("scales must be nonzero")
    return Realisation.from_columns(
        [tuple(s * v for v in matvec(t, col))
         for s, col in zip(ss, r.columns())])


# --- liftability decisions ---------------------------------------------------

@dataclass(frozen=True)
class ComponentVerdict:
    points: tuple
    verdict: str
    witness_rank: int
    threshold: int
    is_forest: bool


@dataclass(frozen=True)
class LiftabilityVerdict:
    """Outcome of the generic-rank liftability test.

    witness_rank is the largest observed rank of the collinearity
    matrix (summed over components, which is exact because the matrix
    is block diagonal across them); threshold is n' - 3*omega' over the
    components that carry lines.  Isolated points impose no conditions
    and are excluded from both.
    """

    verdict: str
    witness_rank: int
    threshold: int
    omega: int
    trials: int
    assume_maximal: bool
    deterministic: bool
    components: tuple


def random_distinct_abscissas(n, rng, low=-65536, high=65536):
    while True:
        xs = [Fraction(rng.randint(low, high)) for _ in range(n)]
        if len(set(xs)) == n:
            return xs


def is_liftable_generic(c, trials=8, seed=0, assume_maximal=True,
                        deterministic=False):
    """Decide liftability component by component.

    Forest components are liftable outright (a constructive lift always
    exists).  For the others the rank of the component's collinearity
    matrix is sampled at `trials` random distinct integer abscissa
    tuples (seeds seed+0 .. seed+trials-1): an observed rank above
    n_comp - 3 certifies non-liftability, and a rank within the bound
    means the component is liftable when its matroid is maximal.  With
    assume_maximal=False such components are reported inconclusive,
    since the bound then only guarantees a non-trivial lift.  With
    deterministic=True (n <= 12) the generic rank is computed exactly
    over the polynomial ring instead of sampled.
    """
    full_omega = analyze(c).omega
    active = []
    for comp in components(c):
        sub, _ = induced(c, comp)
        if sub.lines:
            active.append((comp, sub))
    comp_forest = []
    comp_rank = [0] * len(active)
    witness = 0
    if deterministic:
        if c.n > 12:
            raise ValueError("deterministic mode supports n <= 12 only")
        for ci, (comp, sub) in enumerate(active):
            comp_rank[ci] = symbolic_collin_rank(sub)
        witness = sum(comp_rank)
    else:
        for t in range(trials):
            rng = random.Random(seed + t)
            total = 0
            for ci, (comp, sub) in enumerate(active):
                xs = random_distinct_abscissas(sub.n, rng)
                r = rank(build_collin(sub, xs).numeric)
                comp_rank[ci] = max(comp_rank[ci], r)
                total += r
            witness = max(witness, total)
    verdicts = []
    threshold = 0
    for ci, (comp, sub) in enumerate(active):
        thr = sub.n - 3
        threshold += thr
        forest = analyze(sub).is_forest
        if forest:
            v = "liftable"
        elif comp_rank[ci] > thr:
            v = "not-liftable"
        elif assume_maximal:
            v = "liftable"
        else:
            v = "inconclusive"
        verdicts.append(ComponentVerdict(tuple(comp), v, comp_rank[ci],
                                         thr, forest))
    if any(cv.verdict == "not-liftable" for cv in verdicts):
        overall = "not-liftable"
    elif any(cv.verdict == "inconclusive" for cv in verdicts):
        overall = "inconclusive"
    else:
        overall = "liftable"
    return LiftabilityVerdict(overall, witness, threshold, full_omega,
                              0 if deterministic else trials,
                              assume_maximal, deterministic, tuple(verdicts))


@dataclass(frozen=True)
class QuasiLiftability:
    is_quasi: bool
    base: LiftabilityVerdict
    deletions: tuple


def is_quasi_liftable(c, trials=8, seed=0, assume_maximal=True):
    """A configuration is quasi-liftable when it is not liftable itself
    but deleting any single line leaves a liftable configuration."""
    base = is_liftable_generic(c, trials, seed,
                               assume_maximal=assume_maximal)
    ok = base.verdict == "not-liftable"
    deletions = []
    for li in range(1, len(c.lines) + 1):
        sub, _ = delete_line(c, li)
        v = is_liftable_generic(sub, trials, seed,
                                assume_maximal=assume_maximal)
        deletions.append((li, v))
        if v.verdict != "liftable":
            ok = False
    return QuasiLiftability(ok, base, tuple(deletions))


def poly_matrix_rank(a):
    """Rank of a matrix of Poly entries over the rational function
    field, by fraction-free elimination with exact division."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    a = [row[:] for row in a]
    prev = Poly.constant(1)
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if not a[i][col].is_zero():
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pivot = a[r][col]
        for i in range(r + 1, nrows):
            f = a[i][col]
            for j in range(col + 1, ncols):
                a[i][j] = (pivot * a[i][j] - f * a[r][j]).exact_div(prev)
            a[i][col] = Poly.zero()
        prev = pivot
        r += 1
    return r


def symbolic_collin_rank(c):
    """Exact generic rank of the collinearity matrix of c."""
    cm = build_collin(c)

    def xvar(p):
        return Poly.variable(var_id("x", p))

    a = [[Poly.zero()] * c.n for _ in cm.row_triples]
    for ri, (i1, i2, i3) in enumerate(cm.row_triples):
        a[ri][i1 - 1] = xvar(i2) - xvar(i3)
        a[ri][i2 - 1] = xvar(i3) - xvar(i1)
        a[ri][i3 - 1] = xvar(i1) - xvar(i2)
    return poly_matrix_rank(a)
