"""Sparse multivariate polynomials over the rationals.

Variables are the homogeneous coordinates of labelled points: point i
contributes x_i, y_i, z_i.  Internally a variable is the integer
3*(i-1) + offset with offset 0, 1, 2 for x, y, z, so the natural
variable order x_1 < y_1 < z_1 < x_2 < ... is just integer order.

A monomial is a tuple of (variable, exponent) pairs sorted by variable;
a Poly maps monomials to nonzero Fraction coefficients.  The canonical
term order used for printing and for the sign normalisation of
generators is graded reverse lexicographic over that variable order.
"""

from fractions import Fraction

LETTERS = "xyz"


def var_id(letter, point):
    """Variable id of e.g. ('y', 3)."""
    return 3 * (point - 1) + LETTERS.index(letter)


def var_name(v):
    return "%s_%d" % (LETTERS[v % 3], v // 3 + 1)


def var_point(v):
    return v // 3 + 1


def var_letter(v):
    return LETTERS[v % 3]


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def _mono_deg(m):
    return sum(e for _, e in m)


class Poly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("terms", "npoints")

    def __init__(self, terms=None, npoints=0):
        clean = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = coeff
        self.terms = clean
        n = npoints
        for mono in clean:
            for v, _ in mono:
                p = var_point(v)
                if p > n:
                    n = p
        self.npoints = n

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, c):
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, v):
        return cls({((v, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, pairs):
        mono = tuple(sorted((v, e) for v, e in pairs if e))
        return cls({mono: Fraction(coeff)})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Poly(out, max(self.npoints, other.npoints))

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, self.npoints)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly.zero()
            return Poly({m: c * other for m, c in self.terms.items()},
                        self.npoints)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Poly(out, max(self.npoints, other.npoints))

    __rmul__ = __mul__

    def total_degree(self):
        if not self.terms:
            return 0
        return max(_mono_deg(m) for m in self.terms)

    def support_vars(self):
        """Set of variable ids that occur with nonzero exponent."""
        out = set()
        for mono in self.terms:
            for v, _ in mono:
                out.add(v)
        return out

    def _grevlex_keys(self):
        vars_desc = sorted(self.support_vars(), reverse=True)
        keys = {}
        for mono in self.terms:
            exps = dict(mono)
            keys[mono] = (_mono_deg(mono),
                          tuple(-exps.get(v, 0) for v in vars_desc))
        return keys

    def terms_sorted(self):
        """Terms as (monomial, coeff) pairs, leading term first."""
        keys = self._grevlex_keys()
        return [(m, self.terms[m])
                for m in sorted(self.terms, key=keys.__getitem__,
                                reverse=True)]

    def least_monomial(self):
        if not self.terms:
            return None
        keys = self._grevlex_keys()
        return min(self.terms, key=keys.__getitem__)

    def canonical(self):
        """Sign-normalised copy: the grevlex-least monomial gets a
        positive coefficient.  Generators are only defined up to sign,
        so this fixes one representative."""
        m = self.least_monomial()
        if m is None or self.terms[m] > 0:
            return self
        return -self

    def evaluate(self, assignment):
        """Exact value at a {variable id: Fraction} assignment.

        Every variable in the support must be assigned.
        """
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            val = coeff
            for v, e in mono:
                if v not in assignment:
                    raise ValueError("no value for variable %s"
                                     % var_name(v))
                val *= Fraction(assignment[v]) ** e
            total += val
        return total

    def exact_div(self, divisor):
        """Exact polynomial quotient self / divisor.

        Used by fraction-free elimination over the polynomial ring,
        where divisibility is guaranteed; raises ArithmeticError if the
        division leaves a remainder.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Poly.zero()
        div_lead = max(divisor.terms, key=divisor._grevlex_keys().__getitem__)
        div_lead_c = divisor.terms[div_lead]
        div_lead_exps = dict(div_lead)
        rem = self
        quot_terms = {}
        while not rem.is_zero():
            keys = rem._grevlex_keys()
            lead = max(rem.terms, key=keys.__getitem__)
            exps = dict(lead)
            qm = {}
            ok = True
            for v, e in div_lead_exps.items():
                d = exps.get(v, 0) - e
                if d < 0:
                    ok = False
                    break
                if d:
                    qm[v] = d
            if ok:
                for v, e in exps.items():
                    if v not in div_lead_exps and e:
                        qm[v] = e
            if not ok:
                raise ArithmeticError("inexact polynomial division")
            qmono = tuple(sorted(qm.items()))
            qc = rem.terms[lead] / div_lead_c
            quot_terms[qmono] = quot_terms.get(qmono, 0) + qc
            rem = rem - Poly({qmono: qc}) * divisor
        return Poly(quot_terms, max(self.npoints, divisor.npoints))

    def __repr__(self):
        return "Poly(%s)" % (poly_to_plain(self),)


def bracket(i, j, k):
    """The 3x3 determinant of the coordinate columns of points i, j, k."""
    terms = {}
    cols = (i, j, k)
    # Leibniz expansion over the 6 permutations of rows x, y, z.
    for (a, b, c), sign in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                            ((0, 2, 1), -1), ((2, 1, 0), -1),
                            ((1, 0, 2), -1)):
        mono = _mono_mul(_mono_mul(((3 * (cols[0] - 1) + a, 1),),
                                   ((3 * (cols[1] - 1) + b, 1),)),
                         ((3 * (cols[2] - 1) + c, 1),))
        s = terms.get(mono, 0) + sign
        if s:
            terms[mono] = s
        else:
            terms.pop(mono, None)
    return Poly(terms)


def frame_bracket(i, j, f):
    """[i j R_f]: bracket of points i, j and the f-th standard frame point.

    f = 1 gives y_i z_j - y_j z_i, f = 2 gives x_j z_i - x_i z_j and
    f = 3 gives x_i y_j - x_j y_i (the cofactors of the unit column).
    """
    if f == 1:
        a, b = var_id("y", i), var_id("z", j)
        c, d = var_id("y", j), var_id("z", i)
    elif f == 2:
        a, b = var_id("x", j), var_id("z", i)
        c, d = var_id("x", i), var_id("z", j)
    elif f == 3:
        a, b = var_id("x", i), var_id("y", j)
        c, d = var_id("x", j), var_id("y", i)
    else:
        raise ValueError("frame index must be 1, 2 or 3")
    return (Poly.monomial(1, [(a, 1), (b, 1)])
            - Poly.monomial(1, [(c, 1), (d, 1)]))


def point_bracket(i, j, vec):
    """Bracket of points i, j and an explicit column vector.

    By multilinearity this is the frame-bracket combination
    vec_1*[i j R_1] + vec_2*[i j R_2] + vec_3*[i j R_3].
    """
    out = Poly.zero()
    for f in (1, 2, 3):
        c = Fraction(vec[f - 1])
        if c:
            out = out + frame_bracket(i, j, f) * c
    return out


class MultiDeg:
    """Pair of multidegrees of a multihomogeneous polynomial."""

    __slots__ = ("letter", "point")

    def __init__(self, letter, point):
        self.letter = tuple(letter)
        self.point = tuple(point)

    def __eq__(self, other):
        return (isinstance(other, MultiDeg)
                and self.letter == other.letter
                and self.point == other.point)

    def __hash__(self):
        return hash((self.letter, self.point))

    def __repr__(self):
        return "MultiDeg(letter=%r, point=%r)" % (self.letter, self.point)


def multidegree(p, npoints=None):
    """MultiDeg shared by all terms, or None if p is not multihomogeneous.

    The zero polynomial is multihomogeneous of degree zero.
    """
    n = npoints if npoints is not None else p.npoints
    if not p.terms:
        return MultiDeg((0, 0, 0), (0,) * n)
    found = None
    for mono in p.terms:
        letter = [0, 0, 0]
        point = [0] * n
        for v, e in mono:
            letter[v % 3] += e
            point[var_point(v) - 1] += e
        md = (tuple(letter), tuple(point))
        if found is None:
            found = md
        elif md != found:
            return None
    return MultiDeg(*found)


def _coeff_prefix(coeff, first):
    """Sign/coefficient prefix for plain-text rendering."""
    if coeff < 0:
        sign = "-" if first else " - "
        coeff = -coeff
    else:
        sign = "" if first else " + "
    if coeff == 1:
        return sign, ""
    return sign, format_frac(coeff) + "*"


def format_frac(q):
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def mono_to_plain(mono):
    if not mono:
        return "1"
    parts = []
    for v, e in mono:
        parts.append(var_name(v) if e == 1 else "%s^%d" % (var_name(v), e))
    return "*".join(parts)


def poly_to_plain(p):
    """Render with terms in canonical order, e.g. 'x_1*y_2 - 2*z_3^2'."""
    if p.is_zero():
        return "0"
    out = []
    first = True
    for mono, coeff in p.terms_sorted():
        sign, cpart = _coeff_prefix(coeff, first)
        body = mono_to_plain(mono)
        if not mono:
            body = format_frac(abs(coeff))
            cpart = ""
        out.append(sign + cpart + body)
        first = False
    return "".join(out)


def poly_to_json_terms(p):
    """List of {'coeff': 'p/q', 'exps': {'x_1': e, ...}} in canonical order."""
    out = []
    for mono, coeff in p.terms_sorted():
        out.append({"coeff": format_frac(coeff),
                    "exps": {var_name(v): e for v, e in mono}})
    return out


def assignment_from_columns(columns):
    """Assignment mapping the variables of points 1..n to the given
    3-vector columns."""
    assign = {}
    for idx, col in enumerate(columns, start=1):
        for off in range(3):
            assign[3 * (idx - 1) + off] = Fraction(col[off])
    return assign
