import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from sympy import multiplicity

from prorel import words as wd
from prorel.errors import HypothesisViolation, InvalidParameter
from prorel.metacyclic import MetacyclicGroup
from prorel.obstruction import (GridSpec, RelationShape, check_relation, check_thm_1, check_thm_filtration,
                                check_thm_l_less_m, check_thm_T, geometric_exponent, grid_points, parse_relation,
                                sweep)

small_primes = st.sampled_from([3, 5, 7])


def coprime_u(p):
    return st.integers(1, 60).filter(lambda u: u % p)


def test_l_less_m_examples():
    rep = check_thm_l_less_m(3, 1, 2, 1, 1, "[y1,y2]")
    assert rep.verdict == "obstructed" and rep.witness_value == 3 and rep.image_order == 3
    rep = check_thm_l_less_m(3, None, 3, 2, 2, "[x,y1] y2")
    assert rep.passed and rep.witness_value == 18 and rep.image_order == 3
    with pytest.raises(HypothesisViolation):
        check_thm_l_less_m(3, 1, 2, 2, 1)


def test_l_less_m_rejects_tails_outside_commutators_times_t():
    with pytest.raises(HypothesisViolation):
        check_thm_l_less_m(3, 1, 3, 1, 1, "x y1")
    # x-exponent sum zero, so this one is allowed
    assert check_thm_l_less_m(3, 1, 3, 1, 1, "x y1 x^-1").passed


def test_thm1_examples():
    rep = check_thm_1(3, 1, 2, 1, 1, "x^3 [y1,y2]")
    assert rep.passed
    G = MetacyclicGroup.of(3, 1, 2)
    assert rep.image == str(G.element(3, 0)) and rep.image_order == 3
    rep = check_thm_1(3, 1, 3, 2, 1, "x^9 [y1,y2] [y3,y4]")
    assert rep.passed and rep.witness_value == 9 and rep.image_order == 3
    with pytest.raises(HypothesisViolation, match=r"\[x,y1\]"):
        check_thm_1(3, 1, 2, 1, 1, "x^3 [x,y1]")


def test_thm1_hypotheses():
    with pytest.raises(HypothesisViolation):
        check_thm_1(3, 2, 2, 1, 1, "x^3 [y1,y2]")  # m <= k
    with pytest.raises(HypothesisViolation):
        check_thm_1(3, 1, 2, 1, 1, "x^9 [y1,y2]")  # wrong leading exponent
    with pytest.raises(HypothesisViolation):
        check_thm_1(3, 1, 2, 1, 1, "x^3 y1")  # tail is not a commutator expression
    with pytest.raises(HypothesisViolation):
        check_thm_1(3, 1, 3, 1, 3, "x^9 [y1,y2]")  # u divisible by p


@given(small_primes, st.integers(1, 2), st.integers(2, 4), st.data())
def test_thm1_image_order(p, k, m, data):
    assume(m > k)
    l = data.draw(st.integers(1, m - 1))
    u = data.draw(coprime_u(p))
    c = data.draw(st.lists(st.integers(0, 50), min_size=4, max_size=4))
    rep = check_thm_1(p, k, m, l, u, f"x^{p**l * u} [y1,y2] [[y3,y4],y1]", c=c)
    assert rep.passed and rep.image_order == p ** (m - l)


def test_thm_T_examples():
    assert geometric_exponent(3, 1, 1, 3) == 21
    rep = check_thm_T(3, 1, 2, 1, 1, "", w=1)
    assert rep.passed and rep.params["N"] == 21 and rep.params["v_p(N)"] == 1
    N = (4**18 - 1) // (4**2 - 1)
    rep = check_thm_T(3, 1, 3, 2, 1, "y1 [y1,y2]", w=2)
    assert rep.passed and rep.params["N"] == N and multiplicity(3, N) == 2
    rep = check_thm_T(3, 1, 2, 1, 2)
    assert rep.passed and rep.witness_value == 6
    with pytest.raises(HypothesisViolation):
        check_thm_T(3, 1, 2, 2, 1)
    with pytest.raises(HypothesisViolation):
        check_thm_T(3, 1, 3, 1, 1, "x y1")


@given(small_primes, st.integers(1, 3), st.integers(2, 5), st.data())
def test_thm_T_case_two_valuation(p, k, m, data):
    l = data.draw(st.integers(1, m - 1))
    u = data.draw(coprime_u(p))
    w = data.draw(st.integers(1, 40))
    assume(m > k and w % p ** (m - k))
    N = geometric_exponent(p, k, w, p**l * u)
    assert multiplicity(p, N) == l
    rep = check_thm_T(p, k, m, l, u, "y1^2 [y1,y2]", w=w)
    assert rep.passed and rep.witness_value == N % p**m
    assert rep.image_order == p ** (m - l)


def test_thm_T_case_two_needs_nontrivial_sigma():
    with pytest.raises(HypothesisViolation):
        check_thm_T(3, 1, 2, 1, 1, w=3)


def test_filtration_examples():
    rep = check_thm_filtration(3, 1, 2, 1, "[y1,y2]")
    assert rep.passed and rep.witness_value == 3 and rep.image_order == 3
    rep = check_thm_filtration(5, 1, 2, 3)
    assert rep.passed and rep.witness_value == 15 and rep.image_order == 5
    with pytest.raises(HypothesisViolation):
        check_thm_filtration(3, 1, 1, 1)


def test_filtration_with_t():
    assert check_thm_filtration(3, 1, 3, 2, "[y1,y2]", t="[x,y1]^9").passed
    assert check_thm_filtration(5, 2, 3, 1, with_t=True, seed=4).passed
    with pytest.raises(HypothesisViolation):
        check_thm_filtration(3, 1, 2, 1, t="y1")
    with pytest.raises(HypothesisViolation):
        check_thm_filtration(3, 1, 2, 1, "y1 y2")


def test_filtration_with_l_below_k_uses_cyclic_quotient():
    rep = check_thm_filtration(3, 3, 2, 1, "[y1,y2]")
    assert rep.passed and any("cyclic" in n for n in rep.notes)


def test_parse_relation():
    shape = parse_relation("x^9 [y1,y2] [y3,y4]", 3, 2, 1, "commutator-expr-avoiding-x")
    assert shape.alphabet.ys == ("y1", "y2", "y3", "y4")
    assert wd.render_word(shape.relation(3)) == "x^9 [y1,y2] [y3,y4]"
    with pytest.raises(HypothesisViolation):
        parse_relation("[y1,y2]", 3, 1, 1, "in-T")
    with pytest.raises(InvalidParameter):
        RelationShape(wd.Alphabet.standard(1), 1, 1, wd.parse_word("y2"))


def test_check_relation_dispatch():
    assert check_relation("thm1", 3, 1, 2, 1, 1, "x^3 [y1,y2]").passed
    assert check_relation("l<m", 3, 1, 3, 1, 2, "x^6 [x,y1]").passed
    assert check_relation("thmT", 5, 1, 3, 2, 1, "x^25 y1", w=1).passed
    assert check_relation("filtration", 3, 1, None, 2, 1, "x^3 [y1,y2]", t="[x,y1]^3").passed


def test_report_serializes():
    rep = check_thm_1(3, 1, 2, 1, 1, "x^3 [y1,y2]")
    d = rep.to_dict()
    assert d["verdict"] == "obstructed" and d["passed"] and d["assertions"]
    assert "obstructed" in rep.to_text()


def test_sweep_thm1_grid():
    res = sweep(GridSpec(theorems=("thm1",), ks=(1,), ms=(1, 2, 3), us=(1, 2)))
    assert res.passed
    assert res.counts["obstructed"] > 0 and res.counts["error"] == 0
    for r in res.points:
        if r.params["l"] < r.params["m"]:
            assert r.verdict == "obstructed"
        else:
            assert r.verdict == "hypothesis-violation"


def test_sweep_empty_grid():
    res = sweep([])
    assert res.points == [] and res.passed


def test_grid_points_are_deterministic():
    g = GridSpec()
    assert grid_points(g) == grid_points(g)
    assert sweep(GridSpec(theorems=("thmT",), ps=(3,), ms=(2, 3))).to_dict() == \
        sweep(GridSpec(theorems=("thmT",), ps=(3,), ms=(2, 3))).to_dict()
