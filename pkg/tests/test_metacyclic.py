import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from prorel import groups as gr
from prorel.errors import InvalidParameter
from prorel.metacyclic import (MetacyclicElement, MetacyclicGroup, MetacyclicParams, act_on_root, act_on_zeta,
                               cr_quotient_check, cyclotomic_commutator_identity, mc_inverse, mc_mul, mc_power,
                               verify_metacyclic_structure)

PARAMS = [(3, 1, 1), (3, 1, 2), (3, 2, 2), (3, 1, 3), (3, 2, 3), (5, 1, 2), (5, 2, 2), (2, 2, 3), (7, 1, 2)]


class CosetOracle:
    """Regular action of G(a,m) on cosets of 1, found by coset enumeration on the presentation."""

    def __init__(self, p, k, m):
        F, s, t = free_group("s t")
        rels = [t ** (p**m), t ** -(1 + p**k) * s * t * s**-1]
        if m > k:
            rels.append(s ** (p ** (m - k)))
        else:
            rels.append(s)
        C = FpGroup(F, rels).coset_enumeration([])
        C.compress()
        C.standardize()
        self.table = C.table
        self.col = {"s": C.A_dict[s], "t": C.A_dict[t]}

    def act(self, coset, a, b):
        # right action of the word t^a s^b
        for _ in range(a):
            coset = self.table[coset][self.col["t"]]
        for _ in range(b):
            coset = self.table[coset][self.col["s"]]
        return coset

    def of(self, g):
        return self.act(0, g.a, g.b)


@pytest.fixture(scope="module", params=[(3, 1, 2), (3, 1, 3), (5, 1, 2), (3, 2, 3)], ids=str)
def oracle(request):
    p, k, m = request.param
    return MetacyclicGroup.of(p, k, m), CosetOracle(p, k, m)


def test_coset_oracle_matches_multiplication(oracle):
    G, C = oracle
    elems = list(G.elements())
    assert len(C.table) == G.params.order == len(elems)
    images = {C.of(g) for g in elems}
    assert len(images) == len(elems)
    for g, h in itertools.product(elems, repeat=2):
        assert C.of(mc_mul(g, h)) == C.act(C.of(g), h.a, h.b)


def test_mul_examples():
    G = MetacyclicGroup.of(3, 1, 2)
    s, t = G.sigma, G.tau
    assert mc_mul(mc_mul(t, s), t) == G.element(5, 1)
    assert mc_mul(s, t) == G.element(4, 1)
    assert mc_mul(G.element(4, 2), G.identity) == G.element(4, 2)
    assert G.mul(G.mul(s, t), G.inv(s)) == G.element(4, 0)


def test_mul_rejects_mixed_params():
    with pytest.raises(InvalidParameter):
        mc_mul(MetacyclicGroup.of(3, 1, 2).tau, MetacyclicGroup.of(3, 1, 3).tau)


def test_power_examples():
    G = MetacyclicGroup.of(3, 1, 2)
    ts = G.element(1, 1)
    assert mc_power(ts, 3) == G.element(3, 0)
    assert mc_power(ts, 3) == mc_mul(mc_mul(ts, ts), ts)
    assert mc_inverse(G.identity) == G.identity
    assert mc_power(G.tau, 9) == G.identity


def test_action_examples():
    G = MetacyclicGroup.of(3, 1, 2)
    assert act_on_root(G.tau) == 1
    assert act_on_zeta(G.sigma) == 4
    assert act_on_root(G.sigma) == 0
    assert act_on_zeta(G.tau) == 1


def test_elements_are_immutable_and_hashable():
    G = MetacyclicGroup.of(3, 1, 2)
    g = G.element(10, 4)
    assert (g.a, g.b) == (1, 1)
    with pytest.raises(AttributeError):
        g.a = 2
    assert len({G.element(a, b) for a in range(20) for b in range(5)}) == 27


def test_params_validation():
    with pytest.raises(InvalidParameter):
        MetacyclicParams(4, 1, 2)
    with pytest.raises(InvalidParameter):
        MetacyclicParams(3, 2, 1)
    with pytest.raises(InvalidParameter):
        MetacyclicParams(2, 1, 3)


group_and_elems = st.sampled_from(PARAMS).flatmap(
    lambda pkm: st.tuples(st.just(MetacyclicGroup.of(*pkm)),
                          *[st.tuples(st.integers(0, 10**4), st.integers(0, 10**4))] * 3))


@given(group_and_elems)
def test_group_axioms(data):
    G, *raw = data
    x, y, z = (G.element(a, b) for a, b in raw)
    assert mc_mul(mc_mul(x, y), z) == mc_mul(x, mc_mul(y, z))
    assert mc_mul(x, mc_inverse(x)) == G.identity == mc_mul(mc_inverse(x), x)


@given(group_and_elems, st.integers(-50, 50), st.integers(-50, 50))
def test_power_laws(data, e, f):
    G, (a, b), _, _ = data
    g = G.element(a, b)
    assert mc_mul(mc_power(g, e), mc_power(g, f)) == mc_power(g, e + f)
    assert mc_power(mc_power(g, e), f) == mc_power(g, e * f)


@given(group_and_elems)
def test_actions_are_characters(data):
    G, (a, b), (c, d), _ = data
    g, h = G.element(a, b), G.element(c, d)
    q = G.params.tau_order
    gh = mc_mul(g, h)
    assert act_on_zeta(gh) == act_on_zeta(g) * act_on_zeta(h) % q
    # g h (root) = g(zeta^c root) = zeta^(chi(g) c + a) root
    assert act_on_root(gh) == (act_on_root(g) + act_on_zeta(g) * act_on_root(h)) % q


def test_structure_examples():
    rep = verify_metacyclic_structure(MetacyclicParams(3, 1, 2))
    assert rep.passed
    d = rep.data
    assert (d["order"], d["exponent"], d["n0"], d["m0"]) == (27, 9, 3, 4)
    rep = verify_metacyclic_structure(MetacyclicParams(5, 1, 2))
    assert rep.passed
    assert (rep.data["order"], rep.data["exponent"], rep.data["m0"]) == (125, 25, 6)


def test_structure_degenerate_case():
    rep = verify_metacyclic_structure(MetacyclicParams(3, 1, 1))
    assert rep.passed
    assert rep.data["degenerate"] and rep.data["lcs_orders"] == [3, 1]


@pytest.mark.parametrize("p,k,m", [(3, 2, 3), (2, 2, 3), (2, 2, 4), (7, 1, 2)])
def test_structure_off_grid(p, k, m):
    assert verify_metacyclic_structure(MetacyclicParams(p, k, m)).passed


def test_cyclotomic_identity_examples():
    P = MetacyclicParams(3, 1, 2)
    G = MetacyclicGroup(P)
    assert cyclotomic_commutator_identity(P, 0, 1, 1)
    assert G.commutator(G.sigma, G.tau) == G.element(3, 0)
    P3 = MetacyclicParams(3, 1, 3)
    G3 = MetacyclicGroup(P3)
    lhs = G3.commutator(G3.mul(G3.power(G3.sigma, 2), G3.tau), G3.power(G3.tau, 2))
    assert lhs == G3.element(3, 0)
    assert cyclotomic_commutator_identity(P3, 2, 1, 2)


@given(st.sampled_from(PARAMS), st.integers(-30, 30), st.integers(-30, 30), st.integers(-30, 30))
def test_cyclotomic_identity_holds(pkm, mu, nu, lam):
    assert cyclotomic_commutator_identity(MetacyclicParams(*pkm), mu, nu, lam)


def test_cr_quotient():
    rep = cr_quotient_check(3, 1, 2, 2)
    assert rep.passed and rep.data["order"] == 243
    assert cr_quotient_check(3, 1, 2, 1).passed
    assert cr_quotient_check(5, 1, 2, 2).passed


def test_whole_group_uses_closure_bound():
    G = MetacyclicGroup.of(3, 1, 3)
    with pytest.raises(gr.ResourceLimitError):
        G.whole(max_order=50)


def test_element_constructor_reduces():
    P = MetacyclicParams(3, 1, 2)
    assert MetacyclicElement(P, -1, -1) == MetacyclicElement(P, 8, 2)
