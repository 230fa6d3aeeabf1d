import json
import random
from collections import Counter
from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from helpers import golden_poly, leibniz_det, rand_fraction
from planelift.config import bundled_config, grid_config, qs_config
from planelift.ideals import (GRID34_LINES, QS_LINES, FramePoint, R1, R2, R3,
                              RewriteRow, _g34_products, _qs_formula,
                              _qs_line, _qs_pairing, emit, extend_minor,
                              frame_point, g34_generators, g34_poly,
                              g34_value, qs_generators, qs_poly, qs_value,
                              radical_ideal_generators, REWRITE_ROWS,
                              table1_verify, verify_rewrite_rows)
from planelift.lifting import build_collin
from planelift.linalg import det3
from planelift.poly import (assignment_from_columns, bracket, frame_bracket,
                            multidegree, poly_to_plain, var_id)

# The full expansion of the quadrilateral-set polynomial
# QS(l123; R1, R1, R2), 14 terms, transcribed term by term.
QS_112_TERMS = [
    (-1, (("x", 5), ("y", 4), ("y", 6), ("z", 1), ("z", 2), ("z", 3))),
    (+1, (("x", 4), ("y", 5), ("y", 6), ("z", 1), ("z", 2), ("z", 3))),
    (-1, (("x", 3), ("y", 5), ("y", 6), ("z", 1), ("z", 2), ("z", 4))),
    (+1, (("x", 5), ("y", 2), ("y", 6), ("z", 1), ("z", 3), ("z", 4))),
    (+1, (("x", 3), ("y", 4), ("y", 6), ("z", 1), ("z", 2), ("z", 5))),
    (-1, (("x", 4), ("y", 1), ("y", 6), ("z", 2), ("z", 3), ("z", 5))),
    (-1, (("x", 3), ("y", 2), ("y", 6), ("z", 1), ("z", 4), ("z", 5))),
    (+1, (("x", 3), ("y", 1), ("y", 6), ("z", 2), ("z", 4), ("z", 5))),
    (-1, (("x", 4), ("y", 2), ("y", 5), ("z", 1), ("z", 3), ("z", 6))),
    (+1, (("x", 5), ("y", 1), ("y", 4), ("z", 2), ("z", 3), ("z", 6))),
    (+1, (("x", 3), ("y", 2), ("y", 5), ("z", 1), ("z", 4), ("z", 6))),
    (-1, (("x", 5), ("y", 1), ("y", 2), ("z", 3), ("z", 4), ("z", 6))),
    (-1, (("x", 3), ("y", 1), ("y", 4), ("z", 2), ("z", 5), ("z", 6))),
    (+1, (("x", 4), ("y", 1), ("y", 2), ("z", 3), ("z", 5), ("z", 6))),
]

# The six signed bracket products of the grid polynomial for column 1,
# in the order the permutation sum produces them.
G34_C1_PRODUCTS = [
    (+1, ((1, 4), (2, 8), (3, 12), (5, 6), (7, 9), (10, 11))),
    (+1, ((1, 7), (2, 11), (3, 6), (4, 5), (8, 9), (10, 12))),
    (+1, ((1, 10), (2, 5), (3, 9), (4, 6), (7, 8), (11, 12))),
    (-1, ((1, 4), (2, 11), (3, 9), (5, 6), (7, 8), (10, 12))),
    (-1, ((1, 7), (2, 5), (3, 12), (4, 6), (8, 9), (10, 11))),
    (-1, ((1, 10), (2, 8), (3, 6), (4, 5), (7, 9), (11, 12))),
]

# Variables absent from QS(l123; i, j, k), one row per weakly
# increasing frame triple.
QS_MISSING_VARS = {
    (1, 1, 1): {("x", p) for p in range(1, 7)},
    (1, 1, 2): {("x", 1), ("x", 2), ("y", 3), ("x", 6)},
    (1, 1, 3): {("x", 1), ("x", 2), ("z", 3), ("x", 6)},
    (1, 2, 2): {("x", 1), ("y", 2), ("y", 3), ("y", 4)},
    (1, 2, 3): {("x", 1), ("y", 2), ("z", 3)},
    (1, 3, 3): {("x", 1), ("z", 2), ("z", 3), ("z", 4)},
    (2, 2, 2): {("y", p) for p in range(1, 7)},
    (2, 2, 3): {("y", 1), ("y", 2), ("z", 3), ("y", 6)},
    (2, 3, 3): {("y", 1), ("z", 2), ("z", 3), ("z", 4)},
    (3, 3, 3): {("z", p) for p in range(1, 7)},
}

ALL_QS_VARS = {(letter, p) for letter in "xyz" for p in range(1, 7)}


def rand_columns(rng, n, bound=9):
    return [tuple(rand_fraction(rng, bound) for _ in range(3))
            for _ in range(n)]


def test_frame_point_coercion():
    assert frame_point(2).frame_index == 2
    assert frame_point(2).vector == (0, 1, 0)
    assert frame_point(R3) is R3
    fp = frame_point((1, 2, Fraction(1, 3)))
    assert fp.frame_index is None
    assert fp.vector == (1, 2, Fraction(1, 3))
    assert repr(R1) == "R1"
    with pytest.raises(ValueError):
        FramePoint(4)
    with pytest.raises(ValueError):
        FramePoint(vector=(1, 2))


def test_qs_line_coercion():
    assert _qs_line("l123") == (1, 2, 3)
    assert _qs_line("156") == (1, 5, 6)
    assert _qs_line((6, 2, 4)) == (2, 4, 6)
    with pytest.raises(ValueError) as err:
        _qs_line((1, 2, 4))
    assert "not a quadrilateral-set line" in str(err.value)


def test_qs_pairing():
    assert _qs_pairing((1, 2, 3)) == ((1, 2, 3), (5, 6, 4))
    assert _qs_pairing((1, 5, 6)) == ((1, 5, 6), (2, 3, 4))
    assert _qs_pairing((2, 4, 6)) == ((2, 4, 6), (1, 3, 5))
    assert _qs_pairing((3, 4, 5)) == ((3, 4, 5), (1, 2, 6))


def test_qs_formula_is_the_bracket_product_difference():
    lhs = _qs_formula((1, 2, 3), 1, 1, 2)
    rhs = (frame_bracket(1, 5, 1) * frame_bracket(2, 6, 1)
           * frame_bracket(3, 4, 2)
           - frame_bracket(1, 6, 1) * frame_bracket(2, 4, 1)
           * frame_bracket(3, 5, 2))
    assert lhs == rhs


def test_qs_112_expansion_verbatim():
    golden = golden_poly(QS_112_TERMS)
    assert len(golden.terms) == 14
    assert _qs_formula((1, 2, 3), 1, 1, 2) == golden
    # the canonical representative flips the sign: the grevlex-least
    # monomial x_3*y_1*y_4*z_2*z_5*z_6 carries -1 above
    assert qs_poly((1, 2, 3), 1, 1, 2) == -golden
    assert qs_poly((1, 2, 3), 1, 1, 2).canonical() == -golden


def test_qs_value_matches_formula():
    rng = random.Random(3)
    for _ in range(25):
        cols = rand_columns(rng, 6)
        a = assignment_from_columns(cols)
        for line in QS_LINES:
            f = tuple(rng.choice((1, 2, 3)) for _ in range(3))
            expected = _qs_formula(line, *f).evaluate(a)
            assert qs_value(cols, line, *f) == expected
            canon = qs_poly(line, *f).evaluate(a)
            assert canon in (expected, -expected)


def test_qs_value_with_explicit_frame_vectors():
    rng = random.Random(5)
    cols = rand_columns(rng, 6)
    units = {1: (1, 0, 0), 2: (0, 1, 0), 3: (0, 0, 1)}
    for f1, f2, f3 in ((1, 2, 3), (2, 2, 1), (3, 1, 2)):
        assert (qs_value(cols, "123", units[f1], units[f2], units[f3])
                == qs_value(cols, "123", f1, f2, f3))
    p = (Fraction(2), Fraction(-1), Fraction(3))
    v = qs_value(cols, "123", p, 1, 1)
    expected = (2 * qs_value(cols, "123", 1, 1, 1)
                - qs_value(cols, "123", 2, 1, 1)
                + 3 * qs_value(cols, "123", 3, 1, 1))
    assert v == expected


def test_qs_multidegrees():
    for frames, missing in QS_MISSING_VARS.items():
        p = qs_poly((1, 2, 3), *frames)
        md = multidegree(p)
        assert md is not None
        assert md.point == (1, 1, 1, 1, 1, 1)
        n1, n2, n3 = (frames.count(f) for f in (1, 2, 3))
        assert md.letter == (n2 + n3, n1 + n3, n1 + n2)


def test_qs_missing_variables_table():
    for frames, missing in QS_MISSING_VARS.items():
        p = qs_poly((1, 2, 3), *frames)
        support = {(letter, pt) for letter in "xyz"
                   for pt in range(1, 7)
                   if var_id(letter, pt) in p.support_vars()}
        assert support == ALL_QS_VARS - missing, frames


def test_qs_letter_multidegrees_distinct():
    letters = {multidegree(qs_poly((1, 2, 3), *f)).letter
               for f in combinations_with_replacement((1, 2, 3), 3)}
    assert len(letters) == 10


def test_g34_products_golden():
    assert _g34_products(1) == [
        (sign, pairs) for sign, pairs in G34_C1_PRODUCTS]
    with pytest.raises(ValueError):
        _g34_products(5)


def test_g34_products_cover_all_points_once():
    for ci in (1, 2, 3, 4):
        for sign, pairs in _g34_products(ci):
            flat = [p for pair in pairs for p in pair]
            assert sorted(flat) == list(range(1, 13))


def test_g34_term_counts():
    p = g34_poly(1, 1, 1, 1, 1, 1, 1)
    assert len(p.terms) == 216
    assert p.total_degree() == 12
    assert multidegree(p).point == (1,) * 12
    q = g34_poly(1, 1, 2, 3, 1, 2, 3)
    assert len(q.terms) == 360


def test_g34_value_matches_poly():
    rng = random.Random(7)
    for _ in range(5):
        cols = rand_columns(rng, 12, bound=5)
        a = assignment_from_columns(cols)
        frames = tuple(rng.choice((1, 2, 3)) for _ in range(6))
        for ci in (1, 3):
            got = g34_value(cols, ci, *frames)
            exact = g34_poly(ci, *frames).evaluate(a)
            assert got in (exact, -exact)
            assert abs(got) == abs(exact)


def test_g34_value_frame_count():
    with pytest.raises(ValueError):
        g34_value([(0, 0, 1)] * 12, 1, 1, 1)
    with pytest.raises(ValueError):
        g34_poly(1, 1, 1)


def test_qs_generators():
    g = qs_generators()
    assert g.ideal_name == "I_QS"
    assert g.npoints == 6
    assert len(g.entries) == 14
    assert Counter(e.degree for e in g.entries) == {3: 4, 6: 10}
    labels = [e.label for e in g.entries]
    assert labels[:4] == ["bracket(1,2,3)", "bracket(1,5,6)",
                          "bracket(2,4,6)", "bracket(3,4,5)"]
    assert labels[4] == "qs(1,1,1)"
    assert labels[-1] == "qs(3,3,3)"
    for e in g.entries:
        assert e.poly == e.poly.canonical()
        assert e.multideg is not None
    assert qs_generators() is g


def test_g34_generators():
    g = g34_generators()
    assert g.ideal_name == "I_G34"
    assert g.npoints == 12
    assert len(g.entries) == 44
    assert Counter(e.degree for e in g.entries) == {3: 16, 12: 28}
    bracket_labels = [e.label for e in g.entries if e.degree == 3]
    assert bracket_labels[0] == "bracket(1,2,3)"
    assert bracket_labels[4] == "bracket(1,4,7)"
    assert "g34(1,1,1,1,1,1)" in [e.label for e in g.entries]
    counts = {len(e.poly.terms) for e in g.entries if e.degree == 12}
    assert counts == {216, 276, 300, 336, 360, 376}
    assert g34_generators() is g


def test_grid34_lines_match_grid_config():
    assert GRID34_LINES == grid_config(3, 4).lines


def test_extend_minor_full_rows_is_qs():
    cm = build_collin(qs_config())
    for frames in product((1, 2, 3), repeat=3):
        ext = extend_minor(cm, (2, 3, 4), (4, 5, 6), frames)
        assert ext == -_qs_formula((1, 2, 3), *frames)


def test_extend_minor_empty_support_vanishes():
    cm = build_collin(qs_config())
    assert extend_minor(cm, (1, 2), (4, 5), (1, 1)).is_zero()


def test_extend_minor_validates_lengths():
    cm = build_collin(qs_config())
    with pytest.raises(ValueError):
        extend_minor(cm, (1, 2), (1, 2, 3), (1, 1))
    with pytest.raises(ValueError):
        extend_minor(cm, (1, 2), (1, 2), (1, 1, 1))


def test_extension_identity_small():
    # Summing extensions against products of frame coordinates
    # recovers the determinant whose entries are full point brackets.
    rng = random.Random(11)
    cm = build_collin(qs_config())
    cols = rand_columns(rng, 6)
    for rows, cidx in (((1, 2), (1, 2)), ((2, 3), (1, 6)),
                       ((1, 3), (2, 6))):
        pts = [tuple(rand_fraction(rng, 5) for _ in range(3))
               for _ in rows]
        k = len(rows)
        entries = []
        for t in range(k):
            row = []
            for s in range(k):
                pair = cm.pair(rows[t], cidx[s])
                if pair is None:
                    row.append(Fraction(0))
                else:
                    row.append(det3(cols[pair[0] - 1], cols[pair[1] - 1],
                                    pts[t]))
            entries.append(row)
        lhs = leibniz_det(entries)
        rhs = Fraction(0)
        a = assignment_from_columns(cols)
        for frames in product((1, 2, 3), repeat=k):
            factor = Fraction(1)
            for t, f in enumerate(frames):
                factor *= pts[t][f - 1]
            if factor:
                rhs += factor * extend_minor(cm, rows, cidx,
                                             frames).evaluate(a)
        assert lhs == rhs


def test_radical_generators_contain_qs():
    g = radical_ideal_generators(qs_config(), minor_size=3)
    polys = {e.poly for e in g.entries}
    for line in QS_LINES:
        assert bracket(*line).canonical() in polys
    for frames in combinations_with_replacement((1, 2, 3), 3):
        assert qs_poly((1, 2, 3), *frames) in polys
    assert g.ideal_name == "J_radical"
    labels = [e.label for e in g.entries]
    assert labels[:4] == ["bracket(1,2,3)", "bracket(1,5,6)",
                          "bracket(2,4,6)", "bracket(3,4,5)"]
    assert any(l.startswith("ext(2.3.4|") for l in labels)


def test_radical_generators_forest_has_only_brackets():
    c = bundled_config("forest_two_lines")
    g = radical_ideal_generators(c)
    assert [e.label for e in g.entries] == ["bracket(1,2,3)",
                                            "bracket(3,4,5)"]
    with pytest.raises(ValueError):
        radical_ideal_generators(c, minor_size=-1)


def test_emit_plain():
    g = radical_ideal_generators(bundled_config("forest_two_lines"))
    text = emit(g, "plain")
    lines = text.splitlines()
    assert lines[0] == "# J_radical: 2 generators"
    assert lines[1] == ("bracket(1,2,3) = -z_1*y_2*x_3 + y_1*z_2*x_3"
                        " + z_1*x_2*y_3 - x_1*z_2*y_3 - y_1*x_2*z_3"
                        " + x_1*y_2*z_3")
    assert text.endswith("\n")
    assert emit(g, "plain") == text


def test_emit_cas():
    text = emit(qs_generators(), "cas")
    lines = text.splitlines()
    assert lines[0] == "// I_QS: 14 generators"
    assert lines[1].startswith("ring R = 0, (x1, y1, z1, x2, y2, z2,")
    assert lines[1].endswith("), dp;")
    assert lines[2].startswith("poly g_1 = ")
    assert lines[2].endswith("// bracket(1,2,3)")
    assert lines[-1] == ("ideal I_QS = "
                         + ", ".join("g_%d" % i for i in range(1, 15))
                         + ";")
    assert "_" not in lines[1]


def test_emit_json():
    text = emit(qs_generators(), "json")
    doc = json.loads(text)
    assert doc["ideal"] == "I_QS"
    assert doc["points"] == 6
    assert len(doc["generators"]) == 14
    first = doc["generators"][0]
    assert first["label"] == "bracket(1,2,3)"
    assert first["degree"] == 3
    assert first["multidegree"] == {"letter": [1, 1, 1],
                                    "point": [1, 1, 1, 0, 0, 0]}
    assert len(first["terms"]) == 6
    assert all(t["coeff"] in ("1", "-1") for t in first["terms"])
    assert text.endswith("\n")


def test_emit_unknown_format():
    with pytest.raises(ValueError):
        emit(qs_generators(), "latex")


def test_rewrite_rows_shape():
    assert len(REWRITE_ROWS) == 17
    gens = {row.generator for row in REWRITE_ROWS}
    for g in gens:
        assert list(g) == sorted(g)
    excluded = [row.excluded for row in REWRITE_ROWS]
    assert len(set(excluded)) == 17
    assert (2, 3, 2) in excluded
    assert (2, 3, 3) not in excluded
    for row in REWRITE_ROWS:
        assert sorted(row.excluded) == list(row.generator)
        assert len(row.coeffs) == 4


def test_table1_all_rows_hold():
    ok, checks = table1_verify()
    assert ok
    assert len(checks) == 17
    assert all(c.ok for c in checks)


def test_table1_detects_broken_coefficients():
    row = REWRITE_ROWS[0]
    broken = RewriteRow(row.excluded, row.generator,
                        (row.coeffs[0] + 1,) + row.coeffs[1:])
    ok, checks = verify_rewrite_rows((broken,))
    assert not ok
    assert not checks[0].ok
    dropped = RewriteRow(row.excluded, row.generator,
                         (row.coeffs[0] * 0,) + row.coeffs[1:])
    ok, _ = verify_rewrite_rows((dropped,))
    assert not ok
