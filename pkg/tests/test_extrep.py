from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extklr import extrep as ex
from extklr.extrep import (
    ColouredExtElt,
    ExtElt,
    act_higher_floating,
    act_klr_gen,
    act_word,
    contract,
    demazure_ext,
    floating_dot_element,
    koszul_diff,
    koszul_P,
    simple_act,
    sn_act,
    wedge,
    wedge_sign,
    xi_act,
)
from extklr.polyalg import Perm, Poly, all_perms, demazure, iter_monomials, subsets
from extklr.quivercomb import test_quivers as builtin_quivers

N = 3
QUIVERS = builtin_quivers()


def X(i: int, n: int = N) -> Poly:
    return Poly.var(i, n)


def om(lam, n: int = N, p: Poly | None = None) -> ExtElt:
    return ExtElt.omega(lam, n, p)


def polys(n: int = N):
    mono = st.tuples(*[st.integers(0, 2)] * n)
    return st.dictionaries(mono, st.integers(-3, 3), max_size=3).map(lambda d: Poly(n, d))


def ext_elts(n: int = N):
    return st.dictionaries(st.sampled_from(subsets(n)), polys(n), max_size=3).map(lambda d: ExtElt(n, d))


# ---------------------------------------------------------------------------
# symmetric group action


def test_simple_reflection_examples():
    assert simple_act(1, om({1}, 2)) == om({1}, 2) + om({2}, 2, X(1, 2) - X(2, 2))
    blk = ColouredExtElt.single(("i", "j"), om({2}, 2))
    assert sn_act(Perm.simple(1, 2), blk) == ColouredExtElt.single(("j", "i"), om({1}, 2))
    for cols in (("i", "i"), ("i", "j")):
        got = sn_act(Perm.simple(1, 2), ColouredExtElt.single(cols, ExtElt.poly(X(1, 2))))
        assert got == ColouredExtElt.single(tuple(reversed(cols)), ExtElt.poly(X(2, 2)))


def test_omega_i_is_invariant_away_from_its_index():
    # s_r fixes omega_lam unless r in lam and r + 1 not in lam
    for lam in subsets(N):
        for r in (1, 2):
            moved = r in lam and r + 1 not in lam
            assert (simple_act(r, om(lam)) == om(lam)) == (not moved)


@given(ext_elts(), st.sampled_from(all_perms(N)), st.sampled_from(all_perms(N)))
def test_sn_act_is_an_action(e, u, v):
    assert sn_act(u * v, e) == sn_act(u, sn_act(v, e))


@given(ext_elts(), ext_elts(), st.sampled_from(all_perms(N)))
def test_sn_act_is_multiplicative(a, b, w):
    assert sn_act(w, a.wedge(b)) == sn_act(w, a).wedge(sn_act(w, b))


@given(ext_elts(), st.integers(1, N - 1))
def test_simple_reflections_are_involutions(e, r):
    assert simple_act(r, simple_act(r, e)) == e
    assert simple_act(r, simple_act(r, e, swap=True), swap=True) == e


# ---------------------------------------------------------------------------
# Demazure operators on EPol


def test_demazure_ext_examples():
    assert demazure_ext(1, om({1})) == -om({2})
    assert demazure_ext(1, om({2})).is_zero()
    assert demazure_ext(1, om({3}, 3, X(1))) == om({3})


@given(ext_elts(), ext_elts(), st.integers(1, N - 1))
def test_demazure_ext_twisted_leibniz(a, b, r):
    lhs = demazure_ext(r, a.wedge(b))
    rhs = demazure_ext(r, a).wedge(b) + simple_act(r, a).wedge(demazure_ext(r, b))
    assert lhs == rhs


@given(ext_elts())
def test_demazure_ext_nil_hecke_relations(e):
    assert demazure_ext(1, demazure_ext(1, e)).is_zero()
    assert demazure_ext(1, demazure_ext(2, demazure_ext(1, e))) == \
        demazure_ext(2, demazure_ext(1, demazure_ext(2, e)))


@given(polys())
def test_demazure_ext_restricts_to_pol(p):
    assert demazure_ext(2, ExtElt.poly(p)) == ExtElt.poly(demazure(2, p))


# ---------------------------------------------------------------------------
# creation and annihilation


def test_wedge_and_contract_examples():
    one = ExtElt.poly(Poly.one(N))
    assert wedge(1, one) == om({1})
    assert wedge(1, om({1})).is_zero()
    P = X(1) ** 2 + X(3)
    assert contract(1, om({1}, N, P)) == ExtElt.poly(P)
    assert contract(2, ExtElt.poly(P)).is_zero()


def test_omega_lam_is_the_decreasing_wedge():
    # omega_{1,2} = omega_2 ^ omega_1
    assert om({2}).wedge(om({1})) == om({1, 2})
    assert om({1}).wedge(om({2})) == -om({1, 2})
    assert wedge_sign({2}, {1}) == 1 and wedge_sign({1}, {2}) == -1
    assert wedge(1, om({2, 3})) == om({1}).wedge(om({2, 3})) == om({1, 2, 3})


@given(ext_elts(), st.integers(1, N), st.integers(1, N))
def test_clifford_relations(e, i, j):
    anti = contract(j, wedge(i, e)) + wedge(i, contract(j, e))
    assert anti == (e if i == j else ExtElt.zero(N))
    assert wedge(i, wedge(j, e)) == -wedge(j, wedge(i, e))
    assert contract(i, contract(j, e)) == -contract(j, contract(i, e))


@given(ext_elts(), ext_elts(), ext_elts())
def test_exterior_product_is_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


def test_out_of_range_index_raises():
    with pytest.raises(ValueError):
        wedge(4, om({1}))
    with pytest.raises(ValueError):
        ExtElt(2, {frozenset({3}): Poly.one(2)})


# ---------------------------------------------------------------------------
# the Koszul differential


def test_koszul_examples():
    assert koszul_P(2, 2, 2) == -(X(1, 2) + X(2, 2))
    assert koszul_diff(2, om({1}, 2)) == ExtElt.poly(X(1, 2) ** 2)
    assert koszul_diff(3, ExtElt.poly(X(1) * X(2) + 1)).is_zero()


def test_koszul_P_is_a_complete_symmetric_function():
    # P_i = (-1)^(i-1) h_{N-i+1}(X_1..X_i), an independent closed form
    def h(d, m):
        if d < 0:
            return Poly.zero(N)
        acc = Poly.zero(N)
        for e in iter_monomials(m, d):
            acc = acc + Poly.monomial(tuple(e) + (0,) * (N - m))
        return acc
    for Nn in range(0, 5):
        for i in range(1, N + 1):
            assert koszul_P(i, Nn, N) == h(Nn - i + 1, i) * (-1) ** (i - 1)


@given(ext_elts(), st.integers(0, 4))
def test_koszul_diff_squares_to_zero(e, Nn):
    assert koszul_diff(Nn, koszul_diff(Nn, e)).is_zero()


@given(ext_elts(), ext_elts(), st.integers(0, 3))
def test_koszul_diff_is_an_odd_derivation(a, b, Nn):
    for lam, p in a.comps.items():
        homog = om(lam, N, p)
        sign = -1 if len(lam) % 2 else 1
        lhs = koszul_diff(Nn, homog.wedge(b))
        rhs = koszul_diff(Nn, homog).wedge(b) + homog.wedge(koszul_diff(Nn, b)).scale(sign)
        assert lhs == rhs


@given(ext_elts(), st.integers(1, N - 1), st.integers(0, 3))
@settings(max_examples=50)
def test_koszul_diff_commutes_with_demazure(e, r, Nn):
    assert koszul_diff(Nn, demazure_ext(r, e)) == demazure_ext(r, koszul_diff(Nn, e))


# ---------------------------------------------------------------------------
# the KLR action


def test_klr_action_examples():
    one_v = QUIVERS["one-vertex"]
    ij = QUIVERS["i->j"]
    x1 = ColouredExtElt.single(("i", "i"), ExtElt.poly(X(1, 2)))
    got = act_klr_gen(ex.tau(1, ("i", "i")), x1, one_v)
    assert got == ColouredExtElt.single(("i", "i"), ExtElt.poly(Poly.one(2)))
    unit = ColouredExtElt.single(("i", "j"), ExtElt.poly(Poly.one(2)))
    got = act_klr_gen(ex.tau(1, ("i", "j")), unit, ij)
    assert got == ColouredExtElt.single(("j", "i"), ExtElt.poly(X(1, 2) - X(2, 2)))
    P = X(1, 2) * X(2, 2) + 3
    e = ColouredExtElt.single(("i", "j"), ExtElt.poly(P))
    assert act_klr_gen(ex.Omega(("i", "j")), e, ij) == ColouredExtElt.single(("i", "j"), om({1}, 2, P))


def test_idempotents_kill_other_blocks():
    q = QUIVERS["i->j"]
    e = ColouredExtElt.single(("i", "j"), ExtElt.poly(Poly.one(2)))
    assert act_klr_gen(ex.idem(("j", "i")), e, q).is_zero()
    assert act_klr_gen(ex.idem(("i", "j")), e, q) == e


@pytest.mark.parametrize("name", sorted(QUIVERS))
def test_quadratic_relation_on_elements(name):
    q = QUIVERS[name]
    verts = q.vertices
    for a in verts:
        for b in verts:
            if a == b:
                continue
            cols = (a, b)
            e = ColouredExtElt.single(cols, om({1}, 2, X(1, 2) ** 2 + X(2, 2)))
            got = act_word([ex.tau(1), ex.tau(1)], e, q)
            want = e.blocks[cols].scale(q.Q(a, b, X(1, 2), X(2, 2)))
            assert got == ColouredExtElt.single(cols, want)


# ---------------------------------------------------------------------------
# floating dots


def test_floating_dot_examples():
    q = QUIVERS["one-vertex"]
    P = X(1, 2) + 2
    e = ColouredExtElt.single(("i", "i"), ExtElt.poly(P))
    assert act_higher_floating(1, "i", 0, e, q) == ColouredExtElt.single(("i", "i"), om({1}, 2, P))
    unit = ColouredExtElt.single(("i",), ExtElt.poly(Poly.one(1)))
    want = ColouredExtElt.single(("i",), om({1}, 1, -X(1, 1)))
    assert act_higher_floating(1, "i", 1, unit, q) == want


def test_floating_dot_without_colour_vanishes():
    q = QUIVERS["i->j"]
    assert floating_dot_element(1, "j", 0, ("i", "j"), q).is_zero()
    assert not floating_dot_element(2, "j", 0, ("i", "j"), q).is_zero()


def test_xi_examples():
    cols = ("i", "i")
    assert xi_act(om({1}, 2), cols, "i") == om({1}, 2, X(1, 2))
    assert xi_act(om({2}, 2), cols, "i") == om({2}, 2, X(2, 2)) - om({1}, 2)
    with pytest.raises(ValueError):
        xi_act(om({1, 2}, 2), cols, "i")


@pytest.mark.parametrize("name", sorted(QUIVERS))
def test_two_floating_dots_square_to_zero(name):
    q = QUIVERS[name]
    for cols in (tuple(q.vertices[:1]) * 2, tuple(q.vertices[:2])):
        if len(cols) < 2:
            continue
        e = ColouredExtElt.single(cols, ExtElt.poly(Poly.one(2)))
        for j0 in set(cols):
            for a in range(3):
                F = act_higher_floating(2, j0, a, act_higher_floating(2, j0, a, e, q), q)
                assert F.is_zero()
