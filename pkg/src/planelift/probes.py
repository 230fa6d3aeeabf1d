"""Random exact samplers and experimental probes.

The samplers build realisations (quadrilateral sets, grids, forests,
collinear tuples) from random integer data with rejection of degenerate
draws.  The probes run the library's equivalences on many samples and
report exact counts: positive branches must hold on every trial,
negative controls record how often genericity delivered a witness.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .config import (Config, Realisation, circuits, config_of_realisation,
                     grid_config, qs_config)
from .ideals import g34_value, qs_generators, g34_generators, qs_value, QS_LINES
from .lifting import (build_collin, classify_lift, epsilon_scale, lift,
                      forest_lift, project, random_distinct_abscissas)
from .linalg import all_minors, cross, det3, rank
from .poly import assignment_from_columns


def _trial_rng(seed, t):
    return random.Random(seed * 1000003 + t)

DEFAULT_COEFF_RANGE = 65536
RETRY_BUDGET = 64


class SampleError(RuntimeError):
    """Raised when rejection sampling exhausts its retry budget."""


@dataclass(frozen=True)
class SampleSpec:
    """What to sample: 'quadset', 'grid', 'forest' or 'collinear'.

    rows/cols apply to grids, config to forests, n to collinear tuples.
    The same spec always produces the same realisation.
    """

    kind: str
    seed: int = 0
    coeff_range: int = DEFAULT_COEFF_RANGE
    rows: int = 3
    cols: int = 4
    config: Config = None
    n: int = 6


def _rand_vec(rng, bound):
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(3))


def _rand_line(rng, bound):
    while True:
        v = _rand_vec(rng, bound)
        if any(x != 0 for x in v):
            return v


def _meet(l1, l2):
    w = cross(l1, l2)
    if all(v == 0 for v in w):
        return None
    return w


def sample_quadset(rng, bound=DEFAULT_COEFF_RANGE):
    """Four random lines in general position and their six intersection
    points, labelled so that the configuration is exactly qs_config().

    Point 1 lies on lines A and B, 2 on A and C, 3 on A and D, 4 on C
    and D, 5 on B and D, 6 on B and C; then A, B, C, D recover the
    lines 123, 156, 246 and 345.
    """
    for _ in range(RETRY_BUDGET):
        a, b, c, d = (_rand_line(rng, bound) for _ in range(4))
        pts = [_meet(a, b), _meet(a, c), _meet(a, d),
               _meet(c, d), _meet(b, d), _meet(b, c)]
        if any(p is None for p in pts):
            continue
        r = Realisation.from_columns(pts)
        if _same_config(r, qs_config()):
            return r
    raise SampleError("retry budget exhausted sampling a quadrilateral set")


def _same_config(r, target):
    """True when r's collinearity pattern is exactly target's (line
    order is immaterial)."""
    try:
        found = config_of_realisation(r)
    except ValueError:
        return False
    return found.n == target.n and set(found.lines) == set(target.lines)


def sample_grid(rng, rows=3, cols=4, bound=DEFAULT_COEFF_RANGE):
    """Two pencils of concurrent lines and their grid of intersections.

    One pencil of `cols` lines through a random apex plays the columns,
    one of `rows` lines through a second apex the rows; the point on
    column i and row j gets label rows*(i-1)+j, matching grid_config.
    """
    target = grid_config(rows, cols)
    for _ in range(RETRY_BUDGET):
        apex_c = _rand_vec(rng, bound)
        apex_r = _rand_vec(rng, bound)
        if all(v == 0 for v in apex_c) or all(v == 0 for v in apex_r):
            continue
        col_lines = [cross(apex_c, _rand_vec(rng, bound))
                     for _ in range(cols)]
        row_lines = [cross(apex_r, _rand_vec(rng, bound))
                     for _ in range(rows)]
        if any(all(v == 0 for v in l) for l in col_lines + row_lines):
            continue
        pts = []
        ok = True
        for i in range(cols):
            for j in range(rows):
                w = _meet(col_lines[i], row_lines[j])
                if w is None:
                    ok = False
                    break
                pts.append(w)
            if not ok:
                break
        if not ok:
            continue
        r = Realisation.from_columns(pts)
        if _same_config(r, target):
            return r
    raise SampleError("retry budget exhausted sampling a grid")


def sample_forest(rng, config, bound=DEFAULT_COEFF_RANGE):
    """Realise a forest configuration at random distinct abscissas."""
    xs = random_distinct_abscissas(config.n, rng, -bound, bound)
    return forest_lift(config, xs).realisation


def sample_collinear(rng, n, bound=DEFAULT_COEFF_RANGE):
    """n distinct points on a random line, in full homogeneous
    coordinates (generically no zero coordinates)."""
    for _ in range(RETRY_BUDGET):
        a = _rand_vec(rng, bound)
        b = _rand_vec(rng, bound)
        if all(v == 0 for v in cross(a, b)):
            continue
        params = set()
        while len(params) < n:
            params.add(rng.randint(-bound, bound))
        pts = [tuple(Fraction(t) * u + v for u, v in zip(a, b))
               for t in sorted(params)]
        if any(all(v == 0 for v in p) for p in pts):
            continue
        seen = set()
        distinct = True
        for p in pts:
            key = _proj_key(p)
            if key in seen:
                distinct = False
                break
            seen.add(key)
        if distinct:
            return Realisation.from_columns(pts)
    raise SampleError("retry budget exhausted sampling collinear points")


def _proj_key(p):
    for v in p:
        if v != 0:
            return tuple(u / v for u in p)
    return p


def sample(spec):
    """Dispatch on spec.kind; deterministic for a fixed spec."""
    rng = random.Random(spec.seed)
    if spec.kind == "quadset":
        return sample_quadset(rng, spec.coeff_range)
    if spec.kind == "grid":
        return sample_grid(rng, spec.rows, spec.cols, spec.coeff_range)
    if spec.kind == "forest":
        if spec.config is None:
            raise ValueError("forest sampling needs a config")
        return sample_forest(rng, spec.config, spec.coeff_range)
    if spec.kind == "collinear":
        return sample_collinear(rng, spec.n, spec.coeff_range)
    raise ValueError("unknown sample kind: %r" % (spec.kind,))


# --- membership ---------------------------------------------------------------


@dataclass(frozen=True)
class MembershipReport:
    in_circuit_variety: bool
    in_v0: bool
    realises: bool
    violated_circuit: tuple = None
    violated_independence: tuple = None


def membership(r, m):
    """Test a realisation against a rank-3 matroid.

    in_circuit_variety: every circuit triple is linearly dependent.
    in_v0: every triple is dependent (all points on one line).
    realises: circuits dependent and every other triple independent.
    """
    if r.n != m.n:
        raise ValueError("realisation has %d points, matroid %d"
                         % (r.n, m.n))
    cols = r.columns()
    in_cv = True
    in_v0 = True
    realises = True
    violated_circuit = None
    violated_independence = None
    for t in combinations(range(1, m.n + 1), 3):
        d = det3(cols[t[0] - 1], cols[t[1] - 1], cols[t[2] - 1])
        if m.is_circuit_triple(t):
            if d != 0:
                in_cv = False
                realises = False
                if violated_circuit is None:
                    violated_circuit = t
        else:
            if d != 0:
                in_v0 = False
            else:
                realises = False
                if violated_independence is None:
                    violated_independence = t
    return MembershipReport(in_cv, in_v0, realises,
                            violated_circuit, violated_independence)


# --- probe reports ------------------------------------------------------------


@dataclass
class ProbeReport:
    suite: str
    trials: int
    passed: int = 0
    failed: int = 0
    counts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def check(self, ok, label, detail=""):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.witnesses) < 20:
                msg = label if not detail else "%s: %s" % (label, detail)
                self.witnesses.append(msg)
        return ok

    def bump(self, key, amount=1):
        self.counts[key] = self.counts.get(key, 0) + amount

    def to_dict(self):
        return {"suite": self.suite, "trials": self.trials,
                "passed": self.passed, "failed": self.failed,
                "counts": dict(sorted(self.counts.items())),
                "witnesses": list(self.witnesses)}


_FRAMES = (1, 2, 3)


def _line_points(rng, n, bound=DEFAULT_COEFF_RANGE):
    """Embed n random distinct abscissas on a random generic line,
    returning (abscissas, full homogeneous columns)."""
    for _ in range(RETRY_BUDGET):
        a = _rand_vec(rng, bound)
        b = _rand_vec(rng, bound)
        if all(v == 0 for v in cross(a, b)):
            continue
        xs = random_distinct_abscissas(n, rng, -bound, bound)
        pts = [tuple(x * u + v for u, v in zip(a, b)) for x in xs]
        if any(all(v == 0 for v in p) for p in pts):
            continue
        keys = {_proj_key(p) for p in pts}
        if len(keys) == n:
            return xs, pts
    raise SampleError("retry budget exhausted embedding points on a line")


def _project_generic(r, rng, bound=256):
    """Project r from a random center onto a random generic line,
    rejecting draws with coincident images or chart accidents."""
    for _ in range(RETRY_BUDGET):
        ln = _rand_line(rng, bound)
        cen = _rand_vec(rng, bound)
        try:
            res = project(r, cen, ln)
        except ValueError:
            continue
        if res.distinct:
            return res
    raise SampleError("retry budget exhausted projecting to a line")


def probe_tfae_qs(trials, seed):
    """Exercise the quadrilateral-set equivalences on random samples.

    Positive branch, per trial: a sampled quadrilateral set is projected
    to a generic line; the image abscissas must give rank(Lambda_QS) <= 3,
    all 4*27 QS values at the image points must vanish, and lift() must
    return a realising quadrilateral set projecting back to the same
    abscissas.  Negative branch: an unconstrained random collinear
    6-tuple should generically show rank 4 and a nonzero QS value; the
    report counts how often it did.
    """
    report = ProbeReport("tfae-qs", trials)
    conf = qs_config()
    for t in range(trials):
        rng = _trial_rng(seed, t)
        r = sample_quadset(rng)
        res = _project_generic(r, rng)
        xs = res.abscissas
        cm = build_collin(conf, xs)
        report.check(rank(cm.numeric) <= 3, "trial %d rank" % t,
                     "rank(Lambda_QS) > 3 at projected abscissas")
        image = [res.chart.to_point(x) for x in xs]
        zeros = 0
        for line in QS_LINES:
            for f1 in _FRAMES:
                for f2 in _FRAMES:
                    for f3 in _FRAMES:
                        if qs_value(image, line, f1, f2, f3) == 0:
                            zeros += 1
        report.check(zeros == 108, "trial %d vanishing" % t,
                     "%d of 108 QS values vanish" % zeros)
        report.bump("qs-values-checked", 108)
        lifted = lift(conf, xs, seed=t)
        ok = lifted.kind == "realising"
        if ok:
            back = project(lifted.realisation)
            ok = back.abscissas == tuple(xs)
        report.check(ok, "trial %d lift" % t,
                     "lift kind %s" % lifted.kind)
        # negative control
        nxs, npts = _line_points(rng, 6)
        nrank = rank(build_collin(conf, nxs).numeric)
        witness = any(qs_value(npts, line, f1, f2, f3) != 0
                      for line in QS_LINES
                      for f1 in _FRAMES for f2 in _FRAMES for f3 in _FRAMES)
        if nrank == 4:
            report.bump("negative-rank-4")
        if witness:
            report.bump("negative-nonzero-witness")
        report.bump("negative-trials")
    return report


_WEAKLY_INCREASING_6 = tuple(combinations_with_replacement(_FRAMES, 6))


def probe_tfae_grid(trials, seed, minors_on_first_trial=True):
    """Mirror of probe_tfae_qs for the 3x4 grid.

    Per positive trial: projected grid abscissas give
    rank(Lambda_G34) <= 9 (equivalently, every 10-minor vanishes; the
    full 8008*66 enumeration runs on the first trial only), the grid
    values vanish on all 28 weakly increasing frame 6-tuples per column
    plus 100 random tuples, and lift() recovers a realising grid.
    Negative branch: random collinear 12-tuples generically show rank 10
    and a nonzero grid value.
    """
    report = ProbeReport("tfae-grid", trials)
    conf = grid_config(3, 4)
    for t in range(trials):
        rng = _trial_rng(seed, t)
        r = sample_grid(rng, 3, 4)
        res = _project_generic(r, rng)
        xs = res.abscissas
        cm = build_collin(conf, xs)
        report.check(rank(cm.numeric) <= 9, "trial %d rank" % t,
                     "rank(Lambda_G34) > 9 at projected abscissas")
        if minors_on_first_trial and t == 0:
            count = 0
            allzero = True
            for _, _, v in all_minors(cm.numeric, 10):
                count += 1
                if v != 0:
                    allzero = False
            report.check(count == 8008 * 66 and allzero,
                         "trial 0 ten-minors",
                         "%d minors, allzero=%s" % (count, allzero))
            report.bump("ten-minors-enumerated", count)
        image = [res.chart.to_point(x) for x in xs]
        zeros = 0
        checked = 0
        for ci in (1, 2, 3, 4):
            for frames in _WEAKLY_INCREASING_6:
                checked += 1
                if g34_value(image, ci, *frames) == 0:
                    zeros += 1
        for _ in range(100):
            ci = rng.randint(1, 4)
            frames = tuple(rng.randint(1, 3) for _ in range(6))
            checked += 1
            if g34_value(image, ci, *frames) == 0:
                zeros += 1
        report.check(zeros == checked, "trial %d vanishing" % t,
                     "%d of %d grid values vanish" % (zeros, checked))
        report.bump("grid-values-checked", checked)
        lifted = lift(conf, xs, seed=t)
        ok = lifted.kind == "realising"
        if ok:
            back = project(lifted.realisation)
            ok = back.abscissas == tuple(xs)
        report.check(ok, "trial %d lift" % t, "lift kind %s" % lifted.kind)
        # negative control
        nxs, npts = _line_points(rng, 12)
        nrank = rank(build_collin(conf, nxs).numeric)
        witness = False
        for ci in (1, 2, 3, 4):
            for frames in _WEAKLY_INCREASING_6:
                if g34_value(npts, ci, *frames) != 0:
                    witness = True
                    break
            if witness:
                break
        if nrank == 10:
            report.bump("negative-rank-10")
        if witness:
            report.bump("negative-nonzero-witness")
        report.bump("negative-trials")
    return report


def _all_generators_vanish(gens, r):
    assignment = assignment_from_columns(r.columns())
    for e in gens.entries:
        if e.poly.evaluate(assignment) != 0:
            return False, e.label
    return True, None


def probe_decomposition(matroid, trials, seed):
    """One-way membership probe of the circuit-variety decomposition.

    Samples circuit-variety points three ways (genuine realisations,
    collinear tuples, epsilon-scaled realising lifts) and checks each
    lands in the collinear branch or kills every emitted generator.
    Random general-position tuples serve as non-members and should
    leave some generator nonzero.
    """
    if matroid == "qs":
        gens = qs_generators()
        conf = qs_config()
        make = sample_quadset
    elif matroid == "grid34":
        gens = g34_generators()
        conf = grid_config(3, 4)

        def make(rng):
            return sample_grid(rng, 3, 4)
    else:
        raise ValueError("matroid must be 'qs' or 'grid34'")
    m = circuits(conf)
    report = ProbeReport("decomp-%s" % matroid, trials)
    for t in range(trials):
        rng = _trial_rng(seed, t)

        r = make(rng)
        rep = membership(r, m)
        report.check(rep.realises, "trial %d realisation membership" % t)
        ok, bad = _all_generators_vanish(gens, r)
        report.check(ok, "trial %d realisation generators" % t,
                     "nonzero %s" % bad)
        report.bump("realisation-samples")

        coll = sample_collinear(rng, conf.n)
        crep = membership(coll, m)
        report.check(crep.in_v0 and crep.in_circuit_variety,
                     "trial %d collinear membership" % t)
        report.bump("collinear-samples")

        res = _project_generic(r, rng)
        lifted = lift(conf, res.abscissas, seed=t)
        if report.check(lifted.kind == "realising",
                        "trial %d lift of projected tuple" % t,
                        "kind %s" % lifted.kind):
            scaled = epsilon_scale(lifted, Fraction(1, 1000))
            report.check(classify_lift(conf, scaled.realisation)
                         == "realising",
                         "trial %d epsilon scaling" % t)
            ok, bad = _all_generators_vanish(gens, scaled.realisation)
            report.check(ok, "trial %d scaled-lift generators" % t,
                         "nonzero %s" % bad)
            report.bump("scaled-lift-samples")

        pts = []
        while len(pts) < conf.n:
            p = _rand_vec(rng, 64)
            if any(v != 0 for v in p):
                pts.append(p)
        rnd = Realisation.from_columns(pts)
        ok, _ = _all_generators_vanish(gens, rnd)
        if not ok:
            report.bump("nonmember-nonzero-witness")
        report.bump("nonmember-trials")
    return report


PROBES = {
    "tfae-qs": probe_tfae_qs,
    "tfae-grid": probe_tfae_grid,
}


def run_probe(name, trials, seed):
    """Run a named probe suite: tfae-qs, tfae-grid, decomp-qs or
    decomp-grid34."""
    if name in PROBES:
        return PROBES[name](trials, seed)
    if name.startswith("decomp-"):
        return probe_decomposition(name[len("decomp-"):], trials, seed)
    raise ValueError("unknown probe suite: %r" % (name,))
