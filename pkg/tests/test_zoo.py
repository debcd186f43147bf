import warnings

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from qfalg.algebra import check_algebra, identity_map, is_inner, multiply, power, verify_inner
from qfalg.bimodule import hom_space, regular
from qfalg.exactla import GF, QQ, Rng
from qfalg.frobenius import is_symmetric
from qfalg.hopf import left_integral_in
from qfalg.zoo import (
    MORITA_NAMES, R_NAMES, AbelianGroupSpec, CharacterSpec, MoritaAutParams, ParameterCoincidenceWarning,
    group_algebra, dual_piece_maps, indecomposable_pieces, morita_aut, morita_inner_element, morita_product, morita_R,
    nakayama_nesbitt, quantum_line, quantum_plane_quotient, sweedler, varphi_pairing, varphi_table,
)

small = st.integers(-3, 3)


@st.composite
def morita_params(draw):
    P = ((draw(small), draw(small)), (draw(small), draw(small)))
    assume(P[0][0] * P[1][1] - P[0][1] * P[1][0] != 0)
    lam = draw(small.filter(bool))
    return MoritaAutParams((draw(small), draw(small)), (draw(small), draw(small)), lam, P)


def test_R_basis_and_unit(R):
    assert R.names == R_NAMES and R.dim == 9
    assert np.array_equal(R.unit, R.element({"E": 1, "F11": 1, "F22": 1}))
    v = R.basis_vector
    assert np.array_equal(multiply(R, v("F12"), v("F21")), v("F11"))
    assert np.array_equal(multiply(R, v("F11"), v("Y1")), v("Y1"))
    for name in R_NAMES:
        assert np.array_equal(multiply(R, v(name), R.unit), v(name))


def test_R_products_outside_the_relations_vanish(R):
    listed = {("E", "E"), ("E", "X1"), ("E", "X2"), ("Y1", "E"), ("Y2", "E")}
    for i in "12":
        for j in "12":
            listed |= {("F" + i + j, "Y" + j), ("X" + i, "F" + i + j)}
            listed |= {("F" + i + j, "F" + j + k) for k in "12"}
    for a in R_NAMES:
        for b in R_NAMES:
            prod = multiply(R, R.basis_vector(a), R.basis_vector(b))
            assert any(prod) == ((a, b) in listed), (a, b)


def test_morita_presentation(R):
    M, iso = morita_R(QQ)
    assert check_algebra(M) == [] and iso.is_isomorphism()
    assert np.array_equal(iso(R.basis_vector("E")), M.basis_vector("e00"))
    assert M.names == MORITA_NAMES
    # the two off-diagonal blocks multiply to zero in either order
    x, y = M.element({"e01": 2, "e02": -1}), M.element({"e10": 3, "e20": 5})
    assert not any(morita_product(QQ, x, y)) and not any(morita_product(QQ, y, x))


def test_morita_identity_parameters():
    M, _ = morita_R(QQ)
    assert morita_aut(MoritaAutParams((0, 0), (0, 0), 1, ((1, 0), (0, 1))), QQ, M) == identity_map(M)


@pytest.mark.parametrize("params", [MoritaAutParams((0, 0), (0, 0), 0, ((1, 0), (0, 1))),
                                    MoritaAutParams((0, 0), (0, 0), 1, ((1, 2), (2, 4)))])
def test_morita_aut_rejects_degenerate_parameters(params):
    with pytest.raises(ValueError):
        morita_aut(params)


@given(morita_params(), morita_params())
def test_morita_composition_law(p, q):
    M, _ = morita_R(QQ)
    assert morita_aut(q, QQ, M).compose(morita_aut(p, QQ, M)) == morita_aut(p.then(q, QQ), QQ, M)


@given(morita_params())
def test_morita_inner_exactly_when_lambda_is_one(p):
    M, _ = morita_R(QQ)
    one = MoritaAutParams(p.x1, p.y1, 1, p.P)
    assert verify_inner(M, morita_aut(one, QQ, M), morita_inner_element(one)) is not None
    if p.lam != 1:
        res = is_inner(M, morita_aut(p, QQ, M), Rng(0))
        assert not res and (res.exact or res.failure_bound < QQ.one / 2**100)


def test_varphi_examples(R):
    phi = varphi_pairing(QQ, R)
    T = phi.source

    def image(a, b):
        return phi.matrix @ T.class_of(R.index(a), R.index(b))

    assert np.array_equal(image("Y1", "X1"), R.basis_vector("E"))
    assert np.array_equal(image("X1", "E"), R.basis_vector("Y1"))
    assert not any(image("E", "X1"))
    assert phi.is_isomorphism("bimodule")


def test_varphi_table_covers_every_nonzero_monomial(R):
    phi = varphi_pairing(QQ, R)
    T = phi.source
    table = varphi_table()
    for a in R_NAMES:
        for b in R_NAMES:
            img = phi.matrix @ T.class_of(R.index(a), R.index(b))
            want = R.basis_vector(table[(a, b)]) if (a, b) in table else QQ.zeros(9)
            assert np.array_equal(img, want), (a, b)


def test_indecomposable_pieces_and_dual_maps(R):
    pieces = indecomposable_pieces(QQ, R)
    assert [pieces[k].dim for k in ("V1", "V1'", "V2")] == [3, 3, 3]
    assert [pieces[k].dim for k in ("U1", "U2", "U2'")] == [3, 3, 3]
    for name, m in dual_piece_maps(QQ, R).items():
        assert m.is_isomorphism("left"), name


def test_quantum_plane_examples():
    Rq = quantum_plane_quotient(QQ, 7)
    v = Rq.basis_vector
    assert np.array_equal(multiply(Rq, v("y"), v("x")), 7 * v("xy"))
    assert not any(multiply(Rq, v("x"), v("xy")))
    assert not any(multiply(Rq, v("x"), v("x"))) and not any(multiply(Rq, v("y"), v("y")))
    with pytest.raises(ValueError):
        quantum_plane_quotient(QQ, 0)


@pytest.mark.parametrize("u,v", [(1, 1), (1, -1), (2, 3), (-3, 5)])
def test_nakayama_nesbitt_iso(u, v):
    A, iso = nakayama_nesbitt(QQ, u, v)
    assert check_algebra(A) == [] and iso.is_isomorphism()
    assert check_algebra(iso.target) == []


def test_nakayama_nesbitt_symmetry():
    assert is_symmetric(nakayama_nesbitt(QQ, 1, 1)[0], Rng(0))
    res = is_symmetric(nakayama_nesbitt(QQ, 1, 2)[0], Rng(0))
    assert not res


def test_nakayama_nesbitt_rejects_zero():
    with pytest.raises(ValueError):
        nakayama_nesbitt(QQ, 0, 1)


def test_collapsing_parameters_warn():
    with pytest.warns(ParameterCoincidenceWarning):
        nakayama_nesbitt(GF(3), 1, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        nakayama_nesbitt(GF(3), 1, 1)
        quantum_plane_quotient(GF(3), 1)


def test_sweedler_is_H2_over_C2():
    H, lam = sweedler(QQ)
    A = H.algebra
    assert A.dim == 4 and H.is_valid()
    x, c = A.basis_vector("g0*x"), A.basis_vector("g1")
    assert not any(multiply(A, x, x))
    assert np.array_equal(multiply(A, x, c), -multiply(A, c, x))
    assert lam[A.index("g1*x")] == 1 and sum(1 for t in lam if t) == 1


def test_h1_relation():
    H, _ = quantum_line("H1", AbelianGroupSpec((4,)), 2, (1,), CharacterSpec((-1,)), QQ)
    A = H.algebra
    x, c = A.basis_vector("g0*x"), A.basis_vector("g1")
    assert np.array_equal(multiply(A, x, x), power(A, c, 2) - A.unit)
    assert any(multiply(A, x, x))


@pytest.mark.parametrize("args", [
    ("H1", (2,), 2, (1,), (-1,), QQ),        # c^n = 1
    ("H2", (4,), 2, (1,), (1,), QQ),         # c*(c) has order 1, not 2
    ("H2", (3,), 3, (1,), (2,), GF(3)),      # p | n
    ("H2", (4,), 2, (1,), (2,), QQ),         # not a character of C4
    ("H3", (2,), 2, (1,), (-1,), QQ),
])
def test_quantum_line_preconditions(args):
    kind, C, n, c, vals, F = args
    with pytest.raises(ValueError):
        quantum_line(kind, AbelianGroupSpec(C), n, c, CharacterSpec(vals), F)


def test_group_algebra_integral_and_symmetry():
    H = group_algebra(AbelianGroupSpec((2,)), QQ)
    t = left_integral_in(H)
    assert t[0] != 0 and t[0] == t[1]
    assert is_symmetric(H.algebra, Rng(0))
    assert hom_space(regular(H.algebra), regular(H.algebra)).dim == 2

