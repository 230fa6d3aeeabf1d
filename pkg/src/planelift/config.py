"""Abstract point-line configurations and their rank-3 matroids.

Points are labelled 1..n throughout.  A configuration is linear: two
points lie on at most one common line.  The graph of a configuration
joins consecutive points along each line (under the natural order of
the labels); its component count and forest property drive the
liftability results.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import QMatrix, cross, det3, format_rat, parse_rat


@dataclass(frozen=True)
class Config:
    """Points 1..n and lines given as tuples of point indices."""

    n: int
    lines: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "lines",
            tuple(tuple(int(p) for p in line) for line in self.lines))

    def lines_through(self, p):
        """1-based indices of the lines containing point p."""
        return [i for i, line in enumerate(self.lines, start=1) if p in line]


@dataclass(frozen=True)
class Violation:
    """One well-formedness failure found by validate()."""

    kind: str
    points: tuple = ()
    lines: tuple = ()

    def __str__(self):
        bits = [self.kind]
        if self.points:
            bits.append("points " + ",".join(map(str, self.points)))
        if self.lines:
            bits.append("lines " + ",".join(map(str, self.lines)))
        return ": ".join((bits[0], "; ".join(bits[1:]))) if len(bits) > 1 \
            else bits[0]


def validate(c):
    """All well-formedness violations of c, empty when c is fine.

    Checks line length, monotone point lists, index range, duplicate
    and nested lines, and linearity (no point pair on two lines).
    """
    out = []
    for i, line in enumerate(c.lines, start=1):
        if len(line) < 2:
            out.append(Violation("line too short", lines=(i,)))
        if any(b <= a for a, b in zip(line, line[1:])):
            out.append(Violation("line not strictly increasing", lines=(i,)))
        bad = tuple(p for p in line if not 1 <= p <= c.n)
        if bad:
            out.append(Violation("point index out of range",
                                 points=bad, lines=(i,)))
    for i, j in combinations(range(1, len(c.lines) + 1), 2):
        a, b = set(c.lines[i - 1]), set(c.lines[j - 1])
        common = a & b
        if a == b:
            out.append(Violation("duplicate line", lines=(i, j)))
        elif a <= b or b <= a:
            out.append(Violation("line contained in another", lines=(i, j)))
        elif len(common) >= 2:
            pair = tuple(sorted(common))[:2]
            out.append(Violation("two lines share a point pair",
                                 points=pair, lines=(i, j)))
    return out


@dataclass(frozen=True)
class Rank3Matroid:
    """Rank-3 matroid on 1..n whose 3-element circuits are given.

    Every 4-subset not containing a listed triple is implicitly a
    circuit as well; rank is fixed at 3.
    """

    n: int
    circuits3: frozenset
    rank: int = 3

    def is_circuit_triple(self, triple):
        return tuple(sorted(triple)) in self.circuits3


def circuits(c):
    """Rank3Matroid whose 3-circuits are the collinear triples of c."""
    triples = set()
    for line in c.lines:
        for t in combinations(sorted(line), 3):
            triples.add(t)
    return Rank3Matroid(c.n, frozenset(triples))


class Realisation:
    """A 3 x n matrix of homogeneous point coordinates.

    Zero columns are allowed; they encode loops of the matroid.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        if matrix.rows != 3:
            raise ValueError("realisation matrix must have 3 rows")
        self.matrix = matrix

    @classmethod
    def from_columns(cls, columns):
        cols = [tuple(Fraction(x) for x in col) for col in columns]
        if any(len(col) != 3 for col in cols):
            raise ValueError("columns must have 3 entries")
        rows = [[col[r] for col in cols] for r in range(3)]
        return cls(QMatrix(rows)) if cols else cls(QMatrix([[], [], []]))

    @property
    def n(self):
        return self.matrix.cols

    def column(self, i):
        """Column of point i (1-based) as a Fraction 3-tuple."""
        return tuple(self.matrix.column(i - 1))

    def columns(self):
        return [self.column(i) for i in range(1, self.n + 1)]

    def __eq__(self, other):
        return isinstance(other, Realisation) and self.matrix == other.matrix

    def __repr__(self):
        return "Realisation(%r)" % (self.matrix,)


def projectively_equal(u, v):
    """True when u and v are nonzero scalar multiples of each other."""
    if all(x == 0 for x in u) or all(x == 0 for x in v):
        return False
    return all(x == 0 for x in cross(u, v))


def simplify(r):
    """Split r into loops, parallel classes and a simple realisation.

    Returns (loops, parallel_classes, simple, index_map).  Loops are the
    zero columns.  Parallel classes partition the remaining points into
    maximal projectively-equal groups, ordered (and represented) by
    their least member.  index_map sends every non-loop old index to the
    column of its representative in the simple realisation.
    """
    cols = r.columns()
    loops = tuple(i for i, col in enumerate(cols, start=1)
                  if all(x == 0 for x in col))
    classes = []
    for i, col in enumerate(cols, start=1):
        if i in loops:
            continue
        for cl in classes:
            if projectively_equal(cols[cl[0] - 1], col):
                cl.append(i)
                break
        else:
            classes.append([i])
    simple = Realisation.from_columns([cols[cl[0] - 1] for cl in classes])
    index_map = {}
    for new, cl in enumerate(classes, start=1):
        for old in cl:
            index_map[old] = new
    return loops, tuple(tuple(cl) for cl in classes), simple, index_map


def config_of_realisation(r):
    """Configuration whose lines are the maximal collinear sets of size
    at least 3 among the columns of r.

    Requires a simple realisation: raises ValueError on zero or
    projectively-equal columns (run simplify first).
    """
    cols = r.columns()
    n = len(cols)
    for i, col in enumerate(cols, start=1):
        if all(x == 0 for x in col):
            raise ValueError("non-simple input: point %d is a loop" % i)
    for i, j in combinations(range(1, n + 1), 2):
        if projectively_equal(cols[i - 1], cols[j - 1]):
            raise ValueError("non-simple input: points %d and %d coincide"
                             % (i, j))
    lines = set()
    for i, j in combinations(range(1, n + 1), 2):
        flat = [k for k in range(1, n + 1)
                if k in (i, j)
                or det3(cols[i - 1], cols[j - 1], cols[k - 1]) == 0]
        if len(flat) >= 3:
            lines.add(tuple(flat))
    return Config(n, tuple(sorted(lines)))


@dataclass(frozen=True)
class ConfigAnalysis:
    omega: int
    is_forest: bool
    max_lines_per_point: int
    graph_edges: tuple


def analyze(c):
    """Graph-theoretic summary of c.

    The graph joins consecutive points along each line; omega counts
    its connected components (isolated points included).
    """
    edges = set()
    for line in c.lines:
        pts = sorted(line)
        for a, b in zip(pts, pts[1:]):
            edges.add((a, b))
    parent = list(range(c.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    forest = True
    for a, b in sorted(edges):
        ra, rb = find(a), find(b)
        if ra == rb:
            forest = False
        else:
            parent[ra] = rb
    omega = len({find(p) for p in range(1, c.n + 1)})
    per_point = [0] * (c.n + 1)
    for line in c.lines:
        for p in line:
            per_point[p] += 1
    return ConfigAnalysis(omega=omega,
                          is_forest=forest,
                          max_lines_per_point=max(per_point[1:], default=0),
                          graph_edges=tuple(sorted(edges)))


def components(c):
    """Connected components of the configuration graph, as increasing
    point tuples (isolated points form singleton components)."""
    parent = list(range(c.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for line in c.lines:
        pts = sorted(line)
        for a, b in zip(pts, pts[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    groups = {}
    for p in range(1, c.n + 1):
        groups.setdefault(find(p), []).append(p)
    return sorted(tuple(g) for g in groups.values())


def induced(c, points):
    """Subconfiguration on the given point set, keeping the lines that
    lie entirely inside it.  Returns (config, old-to-new index map)."""
    pts = sorted(set(points))
    index_map = {old: new for new, old in enumerate(pts, start=1)}
    new_lines = tuple(tuple(index_map[p] for p in line)
                      for line in c.lines
                      if all(p in index_map for p in line))
    return Config(len(pts), new_lines), index_map


def delete_line(c, line_index):
    """Remove line line_index (1-based) and the points incident to no
    other line, reindexing the survivors monotonically.

    Returns (new config, old-to-new index map for surviving points).
    """
    if not 1 <= line_index <= len(c.lines):
        raise IndexError("no line %r" % (line_index,))
    doomed = c.lines[line_index - 1]
    removed = {p for p in doomed if c.lines_through(p) == [line_index]}
    survivors = [p for p in range(1, c.n + 1) if p not in removed]
    index_map = {old: new for new, old in enumerate(survivors, start=1)}
    new_lines = tuple(tuple(index_map[p] for p in line)
                      for i, line in enumerate(c.lines, start=1)
                      if i != line_index)
    return Config(len(survivors), new_lines), index_map


# --- file formats ----------------------------------------------------------

def config_to_dict(c):
    return {"points": c.n, "lines": [list(line) for line in c.lines]}


def config_from_dict(d):
    if not isinstance(d, dict) or "points" not in d or "lines" not in d:
        raise ValueError("config must be {\"points\": n, \"lines\": [...]}")
    n = d["points"]
    lines = d["lines"]
    if not isinstance(n, int) or n < 0:
        raise ValueError("\"points\" must be a nonnegative integer")
    if not isinstance(lines, list) or any(
            not isinstance(line, list)
            or any(not isinstance(p, int) for p in line) for line in lines):
        raise ValueError("\"lines\" must be a list of integer lists")
    return Config(n, tuple(tuple(line) for line in lines))


def realisation_to_dict(r):
    return {"columns": [[format_rat(x) for x in col] for col in r.columns()]}


def realisation_from_dict(d):
    if not isinstance(d, dict) or "columns" not in d:
        raise ValueError("realisation must be {\"columns\": [...]}")
    cols = []
    for col in d["columns"]:
        if not isinstance(col, list) or len(col) != 3:
            raise ValueError("each column must be a list of 3 rationals")
        cols.append([parse_rat(str(x)) for x in col])
    return Realisation.from_columns(cols)


# --- standard configurations -----------------------------------------------

def qs_config():
    """Four generic lines meeting in six points: 1 = AB, 2 = AC, 3 = AD,
    4 = CD, 5 = BD, 6 = BC."""
    return Config(6, ((1, 2, 3), (1, 5, 6), (2, 4, 6), (3, 4, 5)))


def grid_config(rows, cols):
    """The rows x cols grid; point (row j, column i) has label
    rows*(i-1) + j.  Column lines come first, then row lines."""
    lines = []
    for i in range(1, cols + 1):
        lines.append(tuple(rows * (i - 1) + j for j in range(1, rows + 1)))
    for j in range(1, rows + 1):
        lines.append(tuple(rows * (i - 1) + j for i in range(1, cols + 1)))
    return Config(rows * cols, tuple(lines))


_BUNDLED = {
    "qs": qs_config(),
    "grid3x3": Config(9, ((1, 2, 3), (1, 4, 7), (2, 5, 8), (3, 6, 9),
                          (4, 5, 6), (7, 8, 9))),
    "grid3x4": grid_config(3, 4),
    "forest_single_line": Config(6, ((1, 2, 3, 4, 5, 6),)),
    "forest_two_lines": Config(5, ((1, 2, 3), (3, 4, 5))),
    "forest_path10": Config(10, ((1, 2, 3, 4), (4, 5, 6, 7), (7, 8, 9, 10))),
}


def bundled_names():
    return sorted(_BUNDLED)


def bundled_config(name):
    try:
        return _BUNDLED[name]
    except KeyError:
        raise KeyError("unknown bundled config %r (have: %s)"
                       % (name, ", ".join(bundled_names())))
