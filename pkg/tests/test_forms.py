"""Quadratic forms: evaluation, short vectors, ADE naming, unimodularity.

The short-vector walker is cross-checked against a brute-force box
enumeration whose box comes from the inverse Gram matrix, so the two
routes share nothing beyond rational arithmetic.
"""

import math
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from emm import Multigraph, QuadForm, homology_basis
from emm.exact import mat_inv
from emm.forms import (
    _tu_by_row_signings,
    min_vectors,
    resistance_form,
    root_lattice_type,
    totally_unimodular,
)

A2 = QuadForm(((1, Q(-1, 2)), (Q(-1, 2), 1)))


def half_cartan(n, edges):
    """Gram with unit diagonal and -1/2 on the given Dynkin edges."""
    g = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Q(1)
    for i, j in edges:
        g[i][j] = g[j][i] = Q(-1, 2)
    return QuadForm(tuple(tuple(row) for row in g))


def box_short_vectors(form, bound):
    """Oracle: enumerate a rectangular box and filter by q(v) <= bound.

    If q(v) <= b then v_i^2 <= b * (G^-1)_ii, which bounds the box
    exactly; vectors are normalized so the first nonzero entry is > 0.
    """
    b = Q(bound)
    inv = mat_inv(form.gram)
    radii = [math.isqrt(math.floor(b * inv[i][i])) for i in range(form.dim)]

    found = {}

    def walk(i, v):
        if i == form.dim:
            if any(v):
                val = form(v)
                if val <= b:
                    w = tuple(v)
                    for c in w:
                        if c:
                            if c < 0:
                                w = tuple(-y for y in w)
                            break
                    found[w] = val
            return
        for t in range(-radii[i], radii[i] + 1):
            walk(i + 1, v + [t])

    walk(0, [])
    return dict(sorted(found.items(), key=lambda kv: (kv[1], kv[0])))


def test_evaluation_and_bilinear():
    assert A2((1, 0)) == 1
    assert A2((1, 1)) == 1
    assert A2((1, -1)) == 3
    assert A2.bilinear((1, 0), (0, 1)) == Q(-1, 2)
    with pytest.raises(ValueError):
        A2((1, 0, 0))


def test_even_integral_detection():
    assert A2.is_even_integral
    assert QuadForm(((1, Q(3, 2)), (Q(3, 2), 2))).is_even_integral
    assert not QuadForm(((Q(1, 2),),)).is_even_integral
    assert not QuadForm(((1, Q(1, 4)), (Q(1, 4), 1))).is_even_integral


def test_positive_definite_detection():
    assert A2.is_positive_definite
    assert not QuadForm(((1, 2), (2, 1))).is_positive_definite
    assert not QuadForm(((0,),)).is_positive_definite
    # positive semidefinite but singular
    assert not QuadForm(((1, 1), (1, 1))).is_positive_definite


def test_pullback_sublattice():
    square = QuadForm(((1, 0), (0, 1)))
    # index-2 checkerboard sublattice doubles the form
    sub = square.pullback(((1, 1), (1, -1)))
    assert sub.gram == ((2, 0), (0, 2))
    line = square.pullback(((1, 1),))
    assert line.gram == ((2,),)
    # pullback evaluates like the composite map
    assert sub((2, 3)) == square((2 + 3, 2 - 3))


def test_json_round_trip():
    data = A2.to_json_dict()
    assert data["gram"][0] == ["1/1", "-1/2"]
    assert QuadForm.from_json_dict(data) == A2


def test_min_vectors_requires_positive_definite():
    with pytest.raises(ValueError):
        min_vectors(QuadForm(((1, 2), (2, 1))), 1)


THETA = Multigraph.from_pairs([(0, 1), (0, 1), (0, 1)])

SHORT_VECTOR_CASES = [
    (A2, 1),
    (A2, 4),
    (half_cartan(3, [(0, 1), (1, 2)]), 2),
    (half_cartan(4, [(0, 1), (1, 2), (1, 3)]), 1),
    (QuadForm(((2, Q(1, 2), 0), (Q(1, 2), 3, 1), (0, 1, 4))), 5),
    (resistance_form(homology_basis(THETA), (1, 1, 1)), 2),
]


@pytest.mark.parametrize("form,bound", SHORT_VECTOR_CASES)
def test_min_vectors_matches_box_oracle(form, bound):
    report = min_vectors(form, bound)
    oracle = box_short_vectors(form, bound)
    assert report.vectors == tuple(oracle)
    assert report.values == tuple(oracle.values())
    assert report.bound == bound


def test_root_lattice_labels():
    cases = [
        (half_cartan(1, []), "A1", 2),
        (A2, "A2", 6),
        (half_cartan(3, [(0, 1), (1, 2)]), "A3", 12),
        (half_cartan(4, [(0, 1), (1, 2), (1, 3)]), "D4", 24),
        (half_cartan(6, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)]), "D6", 60),
        (half_cartan(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]), "E6", 72),
    ]
    for form, label, roots in cases:
        dec = root_lattice_type(form)
        assert dec.label == label
        assert dec.root_count == roots
        assert len(dec.simple_roots) == form.dim
        # simple roots really have norm one for this normalization
        assert all(form(r) == 1 for r in dec.simple_roots)


def test_root_lattice_direct_sum():
    block = QuadForm(((1, 0, 0),
                      (0, 1, Q(-1, 2)),
                      (0, Q(-1, 2), 1)))
    dec = root_lattice_type(block)
    assert dec.label == "A1 + A2"
    assert dec.root_count == 8


def test_root_lattice_rejections():
    with pytest.raises(ValueError):
        root_lattice_type(QuadForm(((Q(1, 4),),)))  # not even integral
    with pytest.raises(ValueError):
        root_lattice_type(QuadForm(((1, 2), (2, 1))))  # indefinite
    with pytest.raises(ValueError):
        root_lattice_type(QuadForm(((2,),)))  # no norm-1 vectors


@st.composite
def unimodular_matrices(draw, n):
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    ops = draw(st.lists(st.tuples(st.integers(0, n - 1),
                                  st.integers(0, n - 1),
                                  st.integers(-2, 2)),
                        max_size=8))
    for i, j, c in ops:
        if i == j:
            continue
        for k in range(n):  # row_i += c * row_j keeps det
            u[i][k] += c * u[j][k]
    if draw(st.booleans()):
        u[0] = [-x for x in u[0]]
    return tuple(tuple(row) for row in u)


@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_root_type_survives_basis_change(data):
    base = data.draw(st.sampled_from([
        A2,
        half_cartan(3, [(0, 1), (1, 2)]),
        half_cartan(4, [(0, 1), (1, 2), (1, 3)]),
    ]))
    u = data.draw(unimodular_matrices(base.dim))
    before = root_lattice_type(base)
    after = root_lattice_type(base.pullback(u))
    assert after.label == before.label
    assert after.root_count == before.root_count


def det_by_cofactors(rows):
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j]
               * det_by_cofactors([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


K4 = Multigraph.from_pairs([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3),
                            (2, 3)])


def test_totally_unimodular_accepts_coedge_matrix():
    ok, witness = totally_unimodular(homology_basis(K4).coedges)
    assert ok and witness is None


def test_totally_unimodular_entry_witness():
    ok, witness = totally_unimodular([[1, 0], [0, 2]])
    assert not ok
    assert witness == {"kind": "entry", "row": 1, "col": 1, "value": 2}


NOT_TU = ((1, 1, 0), (0, 1, 1), (1, 0, 1))  # full determinant is 2


def test_totally_unimodular_minor_witness():
    ok, witness = totally_unimodular(NOT_TU)
    assert not ok
    assert witness["kind"] == "minor"
    sub = [[NOT_TU[i][j] for j in witness["cols"]] for i in witness["rows"]]
    det = det_by_cofactors([list(r) for r in sub])
    assert det == witness["det"]
    assert det not in (-1, 0, 1)


def test_row_signing_route_agrees():
    # the Ghouila-Houri fallback reaches the same verdicts
    ok, witness = _tu_by_row_signings(NOT_TU)
    assert not ok
    assert witness == {"kind": "row_set", "rows": [0, 1, 2]}
    ok, witness = _tu_by_row_signings(tuple(homology_basis(K4).coedges))
    assert ok and witness is None


def test_resistance_form_theta():
    basis = homology_basis(THETA)
    form = resistance_form(basis, (1, 1, 1))
    # cycle Gram [[2, 1], [1, 2]] inverted by the adjugate rule
    assert form.gram == ((Q(2, 3), Q(-1, 3)), (Q(-1, 3), Q(2, 3)))
    doubled = resistance_form(basis, (2, 2, 2))
    assert doubled.gram == tuple(tuple(x / 2 for x in row)
                                 for row in form.gram)
    with pytest.raises(ValueError):
        resistance_form(basis, (1, 1))
    with pytest.raises(ValueError):
        resistance_form(basis, (1, 0, 1))
