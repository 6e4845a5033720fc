import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splitfact import invariant as I, sos, weyl as W
from splitfact.rootsys import build, coroot, positive_roots, reflect

SMALL = [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


def T(R, v):
    return I.torus_from_ambient(R, v)


def brute_rho(R, mu, a):
    """Lattice form of the definition, summed in ambient coordinates."""
    pos = R.positivity
    v = [2 * x for x in coroot(R, a)]
    for b in R.roots:
        sb = reflect(a, b)
        if pos.is_positive(b) and not pos.is_positive(sb) and not pos.is_positive(mu.inv(b)):
            v = [x + y + z for x, y, z in zip(v, coroot(R, b), coroot(R, sb))]
    return T(R, v)


def test_torus_group_law():
    t = I.TorusElem((5, -1, 2))
    assert t.w == (1, 3, 2)
    assert (t + t + t + t).is_identity()
    assert (t - t).is_identity()
    assert t.to_json() == {"w_mod4": [1, 3, 2], "basis": "simple-coroots"}


@pytest.mark.parametrize("t,n", SMALL)
def test_rho_of_simple_root_with_identity(t, n):
    R = build(t, n)
    for a in R.simple_roots:
        assert I.rho(R, None, W.identity(R), a).value == T(R, [2 * x for x in coroot(R, a)])


def test_rho_spec_examples():
    B3 = build("B", 3)
    a = (1, 1, 0)
    assert I.rho(B3, None, W.reflection(B3, (0, 1, 0)), a).value == T(B3, (2, 2, 0))
    # even rank: the value is 4e_n, not the identity
    B4 = build("B", 4)
    got = I.rho(B4, None, W.reflection(B4, (0, 1, 0, 0)), (1, 1, 0, 0)).value
    assert got == T(B4, (0, 0, 0, 4))
    assert not got.is_identity()
    C3 = build("C", 3)
    assert I.rho(C3, None, W.reflection(C3, (1, 0, -1)), (2, 0, 0)).value == T(C3, (2, 2, 2))
    D5 = build("D", 5)
    mu = W.compose(W.reflection(D5, (1, 0, 0, -1, 0)), W.reflection(D5, (0, 1, 0, 0, -1)))
    got = I.rho(D5, None, mu, (1, 1, 0, 0, 0)).value
    assert got == T(D5, (2, 2, 0, 0, 4))
    assert got != T(D5, (2, 2, 0, 0, 0))


def test_b_even_closed_form_agrees_with_b2_c2_isomorphism():
    # B2 and C2 are isomorphic via (x, y) -> (x + y, x - y) on roots; coroots follow
    B2, C2 = build("B", 2), build("C", 2)
    vb = I.rho(B2, None, W.reflection(B2, (0, 1)), (1, 1)).value
    # in C2 the image of e1+e2 is 2e1, and s_{e2} maps to s_{e1-e2}
    vc = I.rho(C2, None, W.reflection(C2, (1, -1)), (2, 0)).value
    assert not vb.is_identity() and not vc.is_identity()
    assert vb == T(B2, (0, 4)) and vc == T(C2, (2, 2))


@pytest.mark.parametrize("t,n", SMALL)
def test_rho_matches_definition(t, n):
    R = build(t, n)
    els = W.elements(R)
    for a in positive_roots(R):
        for mu in W.conjugators(R, None, a, els)[:8]:
            c = I.rho(R, None, mu, a)
            assert c.value == brute_rho(R, mu, a)
            assert I.is_cocycle(R, c)
            assert I.is_fixed(R, W.reflection(R, a), c.value)


def test_rho_preconditions():
    A2 = build("A", 2)
    with pytest.raises(I.PreconditionError):
        I.rho(A2, None, W.identity(A2), (1, 0, -1))
    with pytest.raises(I.PreconditionError):
        I.rho(A2, None, W.identity(A2), (-1, 1, 0))


@pytest.mark.parametrize("t,n", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("G", 2)])
def test_change_of_mu(t, n):
    R = build(t, n)
    els = W.elements(R)
    for a in positive_roots(R):
        cs = W.conjugators(R, None, a, els)[:6]
        two = T(R, [2 * x for x in coroot(R, a)])
        for mu, mp in itertools.product(cs, repeat=2):
            diff = I.rho(R, None, mp, a).value - I.rho(R, None, mu, a).value
            shift = two if W.epsilon(R, None, mp, a, mu) == -1 else I.torus_zero(R)
            assert diff == shift


def test_rho_sos_trivial_cases():
    B2 = build("B", 2)
    assert I.rho_sos(B2, None, None, []).value.is_identity()
    a = (1, 1)
    mu = W.conjugate_to_simple(B2, None, a)
    assert I.rho_sos(B2, None, {a: mu}, [a]).value == I.rho(B2, None, mu, a).value


def test_rho_sos_b2_pair():
    B2 = build("B", 2)
    A = [(1, -1), (1, 1)]
    c = I.rho_sos(B2, None, None, A)
    assert c.value == T(B2, (2, 2))
    assert c.value == I.rho_sum(B2, None, None, A)
    assert I.is_cocycle(B2, c)


def test_rho_sos_requires_compatibility():
    D3 = build("D", 3)
    with pytest.raises(I.PreconditionError, match="##"):
        I.rho_sos(D3, None, None, [(1, 0, -1), (1, 0, 1)])
    pos = sos.adapted_positivity(D3, [(1, 0, -1), (1, 0, 1)])
    A = [a if pos.is_positive(a) else sos.neg(a) for a in [(1, 0, -1), (1, 0, 1)]]
    assert I.is_cocycle(D3, I.rho_sos(D3, pos, None, A))
    G2 = build("G", 2)
    A = [(-1, 0, 1), (1, -2, 1)]
    assert sos.check_statement(G2, None, A, "##")
    with pytest.raises(I.PreconditionError, match="G2"):
        I.rho_sos(G2, None, None, A)


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("B", 4), ("C", 3), ("C", 4), ("D", 4), ("D", 5), ("G", 2)])
def test_decomposition_over_representative_subsets(t, n):
    R = build(t, n)
    reps = sos.msos_orbit_representatives(t, n)
    c = sos.central_representative(R, reps)
    pos = sos.adapted_positivity(R, c)
    for A in reps:
        A = [a if pos.is_positive(a) else sos.neg(a) for a in A]
        for k in range(len(A) + 1):
            for B in itertools.combinations(A, k):
                val = I.rho_sos(R, pos, None, B, within=A)
                assert val.value == I.rho_sum(R, pos, None, B)
                assert I.is_cocycle(R, val)
                assert I.is_fixed(R, W.s_A(R, B), val.value)
                for a, g in itertools.permutations(B, 2):
                    r = I.rho(R, pos, W.conjugate_to_simple(R, pos, a), a)
                    assert I.is_fixed(R, W.reflection(R, g), r.value)


@pytest.mark.parametrize("t", "ABCD")
@pytest.mark.parametrize("n", range(2, 7))
def test_table_matches_general_formula(t, n):
    if t == "D" and n < 3:
        return
    R = build(t, n)
    for e in I.classical_rho_table(t, n):
        assert I.rho(R, None, e.mu, e.alpha).value == e.closed_form
        assert e.mu.inv.apply(e.alpha) in R.simple_roots


def test_table_examples():
    A3 = build("A", 3)
    for e in I.classical_rho_table("A", 3):
        assert e.closed_form == T(A3, [2 * x for x in coroot(A3, e.alpha)])
    C3 = build("C", 3)
    e = next(x for x in I.classical_rho_table("C", 3) if x.alpha == (2, 0, 0))
    assert e.closed_form == T(C3, (2, 2, 2))
    D4 = build("D", 4)
    e = next(x for x in I.classical_rho_table("D", 4) if x.alpha == (1, 1, 0, 0))
    assert e.closed_form == T(D4, (2, 2, 0, 0))
    with pytest.raises(ValueError):
        I.classical_rho_table("G", 2)


def test_literal_readings_disagree_where_expected():
    # C_n: the literal index reading differs from the product over j
    e = next(x for x in I.classical_rho_table("C", 3) if x.alpha == (2, 0, 0))
    assert e.literal_text != e.closed_form
    # B_n, n even: the literal reading gives the identity, the formula does not
    B4 = build("B", 4)
    e = next(x for x in I.classical_rho_table("B", 4) if x.alpha == (1, 1, 0, 0))
    assert e.literal_text.is_identity() and e.closed_form == T(B4, (0, 0, 0, 4))
    # B_n, n odd: both agree
    e = next(x for x in I.classical_rho_table("B", 3) if x.alpha == (1, 1, 0))
    assert e.literal_text == e.closed_form


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_cocycle_condition_for_random_conjugators(tn, data):
    R = build(*tn)
    a = data.draw(st.sampled_from(positive_roots(R)))
    mu = data.draw(st.sampled_from(W.conjugators(R, None, a)))
    c = I.rho(R, None, mu, a)
    assert I.is_cocycle(R, c) and I.is_fixed(R, W.reflection(R, a), c.value)
    assert c.to_json()["sos"] == [list(a)]
