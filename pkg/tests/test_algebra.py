import warnings

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from qfalg.algebra import (
    AlgMap, FDAlgebra, Search, center, check_algebra, find_invertible_in_subspace, identity_map,
    invert_element, is_inner, multiply, out_order, search_nonsingular, tensor_algebra, verify_inner,
)
from qfalg.exactla import GF, QQ, Rng, is_nonsingular, span
from qfalg.frobenius import frobenius_witness
from qfalg.zoo import (
    AbelianGroupSpec, CharacterSpec, MoritaAutParams, ParameterCoincidenceWarning, group_algebra,
    morita_R, morita_aut, nakayama_nesbitt, nakayama_R, quantum_line, quantum_plane_quotient, sweedler,
)


def field_one():
    return FDAlgebra(QQ, QQ.array([[[1]]]), QQ.array([1]), ("1",))


def matrix_units(F=QQ):
    names = ("e11", "e12", "e21", "e22")
    prods = {}
    for a in (1, 2):
        for b in (1, 2):
            for c in (1, 2):
                prods[("e%d%d" % (a, b), "e%d%d" % (b, c))] = {"e%d%d" % (a, c): 1}
    return FDAlgebra.from_table(F, names, prods, {"e11": 1, "e22": 1})


def zoo_algebras():
    out = {"R": nakayama_R(QQ), "R over F7": nakayama_R(GF(7)), "Morita": morita_R(QQ)[0],
           "R_-1": quantum_plane_quotient(QQ, -1), "R_3 over F13": quantum_plane_quotient(GF(13), 3),
           "A_1,2": nakayama_nesbitt(QQ, 1, 2)[0], "H4": sweedler(QQ)[0].algebra,
           "KC2xC3": group_algebra(AbelianGroupSpec((2, 3)), QQ).algebra,
           "H1(C4,2)": quantum_line("H1", AbelianGroupSpec((4,)), 2, (1,), CharacterSpec((-1,)), QQ)[0].algebra,
           "Taft3 over F7": quantum_line("H2", AbelianGroupSpec((3,)), 3, (1,), CharacterSpec((2,)), GF(7))[0].algebra}
    return out


@pytest.mark.parametrize("name", list(zoo_algebras()))
def test_zoo_outputs_are_algebras(name):
    assert check_algebra(zoo_algebras()[name]) == []


def test_check_algebra_small_cases(R):
    assert check_algebra(R) == []
    assert check_algebra(field_one()) == []


def test_tampered_product_is_reported(R):
    mult = R.mult.copy()
    mult[R.index("E"), R.index("X1"), :] = QQ.zeros(9)
    report = check_algebra(FDAlgebra(QQ, mult, R.unit, R.names))
    assert ("assoc", ("E", "X1", "F12")) in report
    assert ("unit-left", ("X1",)) in report


def test_products_in_R(R):
    v = R.basis_vector
    assert np.array_equal(multiply(R, v("X1"), v("F12")), v("X2"))
    assert not any(multiply(R, v("F11"), v("Y2")))
    for name in R.names:
        assert np.array_equal(multiply(R, R.unit, v(name)), v(name))


def test_invert_element_examples(R):
    assert np.array_equal(invert_element(R, R.unit), R.unit)
    u = R.element({"E": 1, "F11": 1, "F22": 1, "X1": 1})
    inv = invert_element(R, u)
    assert inv is not None
    assert np.array_equal(multiply(R, u, inv), R.unit) and np.array_equal(multiply(R, inv, u), R.unit)
    assert invert_element(R, R.basis_vector("X1")) is None


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_invertibility_three_ways(coeffs):
    R = nakayama_R(QQ)
    a = QQ.array(coeffs)
    by_inverse = invert_element(R, a) is not None
    assert by_inverse == is_nonsingular(QQ, R.left_matrix(a)) == is_nonsingular(QQ, R.right_matrix(a))


def _commutator_nullity(A):
    # brute-force oracle: sympy nullspace of the stacked commutator system
    rows = []
    for i in range(A.dim):
        m = A.left_mats[i] - A.right_mats[i]
        rows.extend(m.tolist())
    return len(sympy.Matrix(rows).nullspace())


def test_center_dimensions(R):
    assert center(R).dim == 1 == _commutator_nullity(R)
    assert center(R).contains(R.unit)
    assert center(quantum_plane_quotient(QQ, 1)).dim == 4
    M2 = matrix_units()
    assert check_algebra(M2) == [] and center(M2).dim == 1


def test_find_invertible_examples(R):
    rng = Rng(0)
    res = find_invertible_in_subspace(R, span(QQ, [R.unit]), rng)
    assert res and np.array_equal(res.witness, R.unit)
    res = find_invertible_in_subspace(R, span(QQ, [R.basis_vector("X1")]), rng, trials=8)
    assert not res and res.method == "sample"
    assert res.failure_bound <= (QQ.one * 9 / 2**60) ** 8
    res = find_invertible_in_subspace(R, span(QQ, QQ.eye(9)), rng)
    assert res and invert_element(R, res.witness) is not None


def test_search_nonsingular_exhaustive_over_small_field():
    F = GF(5)
    mats = F.array([[[1, 0], [0, 0]], [[0, 0], [0, 0]]])
    res = search_nonsingular(F, mats, Rng(0))
    assert not res and res.exact and res.method == "exhaustive"
    mats = F.array([[[1, 0], [0, 0]], [[0, 0], [0, 1]]])
    res = search_nonsingular(F, mats, Rng(0))
    assert res and is_nonsingular(F, res.witness[1])


def test_search_summary_reports_bound():
    res = Search(None, "sample", 8, QQ.one / 2**100)
    assert res.summary()["failure_bound_log2"] == -100


def test_is_inner_identity(R):
    res = is_inner(R, identity_map(R), Rng(0))
    assert res and np.array_equal(res.witness.u, R.unit)


def test_morita_scaling_not_inner():
    M, _ = morita_R(QQ)
    phi = morita_aut(MoritaAutParams((0, 0), (0, 0), 5, ((1, 0), (0, 1))), QQ, M)
    res = is_inner(M, phi, Rng(3))
    assert not res and (res.exact or res.failure_bound < QQ.one / 2**400)


def test_out_order_examples():
    rng = Rng(0)
    R3 = quantum_plane_quotient(GF(13), 3)
    assert out_order(R3, identity_map(R3), 4, rng).order == 1
    nu3 = frobenius_witness(R3, R3.basis_vector("xy")).nakayama
    assert out_order(R3, nu3, 8, rng).order == 3
    Rm = quantum_plane_quotient(QQ, -1)
    num = frobenius_witness(Rm, Rm.basis_vector("xy")).nakayama
    assert out_order(Rm, num, 8, rng).order == 2


def test_tensor_algebra_examples(R):
    K = field_one()
    assert np.array_equal(tensor_algebra(R, K).mult, R.mult)
    assert np.array_equal(tensor_algebra(K, R).mult, R.mult)
    H4 = sweedler(QQ)[0].algebra
    HH = tensor_algebra(H4, H4)
    assert HH.dim == 16 and check_algebra(HH) == []


def test_composition_of_anti_maps():
    H, _ = sweedler(QQ)
    S = H.antipode
    S2 = S.compose(S)
    assert S.anti and not S2.anti
    assert S.is_homomorphism() and S2.is_automorphism()


@given(st.integers(0, 10**6))
def test_inner_is_stable_under_conjugation(seed):
    rng = Rng(seed)
    M, _ = morita_R(QQ)
    p = MoritaAutParams((rng.small(-3, 3), 1), (0, rng.small(-3, 3)), 1, ((1, rng.small(-2, 2)), (0, 1)))
    b = MoritaAutParams((1, 0), (rng.small(-3, 3), 0), rng.small(1, 4), ((2, 0), (rng.small(-2, 2), 1)))
    alpha, beta = morita_aut(p, QQ, M), morita_aut(b, QQ, M)
    conj = beta.compose(alpha).compose(beta.inverse())
    res = is_inner(M, conj, rng)
    assert res and verify_inner(M, conj, res.witness.u) is not None


def test_alg_map_rejects_non_homomorphism(R):
    swap = QQ.eye(9)
    swap[:, [1, 3]] = swap[:, [3, 1]]
    assert not AlgMap(R, R, swap).is_homomorphism()


def test_char2_collapse_is_flagged():
    with pytest.warns(ParameterCoincidenceWarning):
        quantum_plane_quotient(GF(2), -1)
    with pytest.warns(ParameterCoincidenceWarning):
        nakayama_nesbitt(GF(3), 1, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        quantum_plane_quotient(GF(3), 1)
