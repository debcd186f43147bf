import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfalg.algebra import FDAlgebra, is_inner
from qfalg.exactla import GF, QQ, Rng, is_nonsingular, random_vector, span
from qfalg.frobenius import (
    NotInnerError, find_frobenius_form, frobenius_pairing_map, frobenius_witness, is_quasi_frobenius,
    is_symmetric, nakayama, out_class_equal, pairing_matrix, pic_order_probe, twisted_dual_iso,
)
from qfalg.algebra import out_order
from qfalg.extension import Pairing, is_associative_pairing
from qfalg.zoo import (
    AbelianGroupSpec, CharacterSpec, group_algebra, nakayama_nesbitt, nakayama_R, quantum_line,
    quantum_plane_quotient, sweedler,
)


def field_one():
    return FDAlgebra(QQ, QQ.array([[[1]]]), QQ.array([1]), ("1",))


def upper_triangular():
    prods = {("e11", "e11"): {"e11": 1}, ("e11", "e12"): {"e12": 1}, ("e12", "e22"): {"e12": 1},
             ("e22", "e22"): {"e22": 1}}
    return FDAlgebra.from_table(QQ, ("e11", "e12", "e22"), prods, {"e11": 1, "e22": 1})


def h1(C, n, c, values, F):
    return quantum_line("H1", AbelianGroupSpec(C), n, c, CharacterSpec(values), F)


def test_form_search_examples(R):
    rng = Rng(0)
    Rq = quantum_plane_quotient(GF(13), 3)
    w = find_frobenius_form(Rq, rng)
    assert w and is_nonsingular(Rq.field, w.witness.pairing)
    assert is_nonsingular(Rq.field, pairing_matrix(Rq, Rq.basis_vector("xy")))
    res = find_frobenius_form(R, rng)
    assert not res and res.failure_bound <= (QQ.one * 9 / 2**60) ** 8
    K = field_one()
    wk = find_frobenius_form(K, rng).witness
    assert np.array_equal(wk.functional, QQ.array([1])) and np.array_equal(wk.nakayama.matrix, QQ.eye(1))


@pytest.mark.parametrize("F,q", [(GF(13), 3), (GF(13), 5), (QQ, 2), (QQ, -1)])
def test_nakayama_on_quantum_planes(F, q):
    A = quantum_plane_quotient(F, q)
    nu = nakayama(A, A.basis_vector("xy"))
    q = F(q)
    assert np.array_equal(nu(A.basis_vector("x")), A.basis_vector("x") * (F.one / q))
    assert np.array_equal(nu(A.basis_vector("y")), A.basis_vector("y") * q)
    assert nu.is_automorphism()


@pytest.mark.parametrize("C,n,c,values,F", [((4,), 2, (1,), (-1,), QQ), ((6,), 3, (1,), (2,), GF(7))])
def test_nakayama_on_h1(C, n, c, values, F):
    H, lam = h1(C, n, c, values, F)
    A = H.algebra
    G = AbelianGroupSpec(C)
    cstar = CharacterSpec(values)
    nu = nakayama(A, lam)
    xi = cstar(c, F)
    for g in G.elements():
        gi = G.index(g) * n
        assert np.array_equal(nu(A.basis_vector(gi)), A.basis_vector(gi) * cstar(g, F) ** (1 - n))
    assert np.array_equal(nu(A.basis_vector(1)), A.basis_vector(1) * xi)


def test_nakayama_rejects_degenerate_form(R):
    with pytest.raises(ValueError):
        nakayama(R, R.basis_vector("E"))


def test_witness_maps_are_module_isos():
    A = quantum_plane_quotient(QQ, 2)
    w = frobenius_witness(A, A.basis_vector("xy"))
    assert w.left_iso().is_isomorphism("left")
    assert w.right_iso().is_isomorphism("right")
    assert twisted_dual_iso(A, w).is_isomorphism("bimodule")


@settings(max_examples=10)
@given(st.integers(0, 10**6))
def test_nakayama_maps_agree_up_to_inner(seed):
    rng = Rng(seed)
    A = quantum_plane_quotient(QQ, 3)
    forms = []
    while len(forms) < 2:
        lam = random_vector(span(QQ, QQ.eye(4)), rng)
        if is_nonsingular(QQ, pairing_matrix(A, lam)):
            forms.append(nakayama(A, lam))
    assert out_class_equal(A, forms[0], forms[1], rng)


@pytest.mark.parametrize("u,v", [(1, 1), (2, 2), (1, 2), (1, -1), (3, 2)])
def test_symmetric_iff_nakayama_inner(u, v):
    rng = Rng(1)
    A, _ = nakayama_nesbitt(QQ, u, v)
    sym = is_symmetric(A, rng)
    nu = nakayama(A, A.basis_vector("z"))
    assert bool(sym) == (u == v) == bool(is_inner(A, nu, rng))
    if sym:
        assert sym.witness.iso.is_isomorphism("bimodule")


def test_quasi_frobenius_examples(R):
    assert is_quasi_frobenius(R).invertible
    assert is_quasi_frobenius(quantum_plane_quotient(GF(13), 3)).invertible
    rep = is_quasi_frobenius(upper_triangular())
    assert not rep.invertible and rep.projective is None


def test_pic_probe_examples(R):
    rng = Rng(0)
    assert pic_order_probe(R, 4, rng).order == 2
    A = quantum_plane_quotient(GF(13), 3)
    assert pic_order_probe(A, 6, rng).order == 3
    H, lam = sweedler(QQ)
    assert pic_order_probe(H.algebra, 4, rng, frobenius=frobenius_witness(H.algebra, lam)).order == 2


def _frobenius_zoo():
    F13, F5 = GF(13), GF(5)
    out = {}
    for name, F, q in (("R_3/F13", F13, 3), ("R_5/F13", F13, 5), ("R_-1", QQ, -1)):
        A = quantum_plane_quotient(F, q)
        out[name] = (A, A.basis_vector("xy"))
    out["A_1,1"] = (nakayama_nesbitt(QQ, 1, 1)[0], QQ.unit_vector(4, 3))
    H, lam = sweedler(QQ)
    out["H4"] = (H.algebra, lam)
    K = group_algebra(AbelianGroupSpec((2,)), QQ)
    out["KC2"] = (K.algebra, QQ.unit_vector(2, 0))
    H, lam = h1((4,), 2, (1,), (-1,), QQ)
    out["H1(C4,2)"] = (H.algebra, lam)
    H, lam = quantum_line("H2", AbelianGroupSpec((4,)), 2, (2,), CharacterSpec((2,)), F5)
    out["H2(C4,2)/F5"] = (H.algebra, lam)
    return out


@pytest.mark.parametrize("name", list(_frobenius_zoo()))
def test_tensor_and_nakayama_routes_agree(name):
    A, lam = _frobenius_zoo()[name]
    probe = pic_order_probe(A, 4, Rng(2), frobenius=frobenius_witness(A, lam))
    assert probe.order is not None and probe.order == probe.nakayama_order.order
    assert not probe.notes


@pytest.mark.parametrize("q,order", [(3, 3), (5, 4), (12, 2)])
def test_nakayama_powers_not_inner_exhaustively(q, order):
    A = quantum_plane_quotient(GF(13), q)
    nu = nakayama(A, A.basis_vector("xy"))
    res = out_order(A, nu, 8, Rng(0))
    assert res.order == order
    assert all(not s and s.exact for s in res.steps[:-1])


def test_frobenius_pairing_examples():
    rng = Rng(0)
    Rm = quantum_plane_quotient(QQ, -1)
    fp = frobenius_pairing_map(Rm, frobenius_witness(Rm, Rm.basis_vector("xy")), rng)
    assert is_associative_pairing(Pairing(fp.map)) == [] and fp.nu_fixes_u
    H, lam = sweedler(QQ)
    fp = frobenius_pairing_map(H.algebra, frobenius_witness(H.algebra, lam), rng)
    assert is_associative_pairing(Pairing(fp.map)) == []
    R3 = quantum_plane_quotient(GF(13), 3)
    with pytest.raises(NotInnerError):
        frobenius_pairing_map(R3, frobenius_witness(R3, R3.basis_vector("xy")), rng)


def test_quasi_frobenius_not_frobenius_dual_still_invertible():
    R = nakayama_R(GF(7))
    assert is_quasi_frobenius(R).invertible
    assert not find_frobenius_form(R, Rng(0))
