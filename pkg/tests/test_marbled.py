import json

import pytest

from burnside_kit.corpus import category, diagram, diagram_from_data, marbled_family
from burnside_kit.marbled import (
    F_inclusion,
    F_marked,
    FlatnessError,
    MarbledFibration,
    MarbledSSet,
    MarkedSSet,
    aeff_fibrewise,
    fiber_comparison,
    flat,
    is_constant_square,
    l_marking,
    marbled_from_json,
    marbled_map_ok,
    marbled_to_json,
    marbled_trivial_cofib_test,
    representability_check,
    sharp,
    triples,
    verify_thm310,
)
from burnside_kit.simplicial import (
    ChainSSet,
    horn,
    identity_map,
    iso_check,
    pushout,
    SimplicialMap,
    nd,
    spine,
    standard_simplex,
)


def nonconstant_blazes(X):
    return {frozenset(sq) for sq in X.blazed if not is_constant_square(X.sset, sq)}


# --- markings ---------------------------------------------------------------------


def test_marked_sets_reject_non_edges():
    with pytest.raises(ValueError):
        MarkedSSet(standard_simplex(2), [(0, 1, 2)])


def test_l_marking_examples():
    D = standard_simplex(3)
    assert l_marking(ChainSSet([(0, 1)])).marked == {(0, 1)}
    assert l_marking(ChainSSet([(1, 2)])).marked == frozenset()
    L = l_marking(horn(2, 0).source)
    assert L.marked == {(0, 1)} and (0, 2) in L.sset.cells
    assert l_marking(D).marked == {(0, 1)}


def test_flat_and_sharp():
    D = standard_simplex(2)
    assert flat(D).marked == frozenset()
    assert sharp(D).marked == set(D.nondeg(1))


# --- the functor F -----------------------------------------------------------------


def test_F_of_point_is_sharp_point():
    F0 = F_marked(flat(standard_simplex(0)))
    assert F0.sset.counts() == [1]
    assert not nonconstant_blazes(F0)


def test_F_of_edge():
    F1 = F_marked(flat(standard_simplex(1)))
    assert F1.sset.counts() == [4, 3]
    assert len(F1.marked) == 1
    assert not nonconstant_blazes(F1)


def test_F_of_sharp_edge_marks_everything_over_the_edge():
    F1 = F_marked(sharp(standard_simplex(1)))
    assert len(F1.marked) > len(F_marked(flat(standard_simplex(1))).marked)


def test_F_of_triangle_has_one_blazed_square():
    F2 = F_marked(flat(standard_simplex(2)))
    assert F2.sset.counts()[0] == 10
    assert len(nonconstant_blazes(F2)) == 1


@pytest.mark.parametrize("n", range(5))
def test_vertex_count_of_F_simplex(n):
    expected = (n + 1) * (n + 2) * (n + 3) // 6
    assert len(triples(n)) == expected
    if n <= 3:
        assert F_marked(flat(standard_simplex(n))).sset.counts()[0] == expected


def test_F_commutes_with_a_gluing():
    # F(Lambda^2_1) is F(Delta^{01}) glued to F(Delta^{12}) along F(Delta^{1})
    D1, pt = standard_simplex(1), standard_simplex(0)
    glued = F_marked(flat(spine(2).source))
    f = SimplicialMap(pt, D1, {(0,): nd((1,), 0)})
    g = SimplicialMap(pt, D1, {(0,): nd((0,), 0)})
    Fe, Fp = F_marked(flat(D1)), F_marked(flat(pt))
    fF = F_inclusion(f)[0]
    gF = F_inclusion(g)[0]
    P, inl, inr = pushout(fF, gF)
    assert iso_check(P, glued.sset) is not None
    assert len(glued.marked) == 2 * len(Fe.marked) - len(Fp.marked)


def test_F_projection_is_natural():
    s = spine(2)
    Fs, FK, FL = F_inclusion(s)
    pK, pL = FK.projection(), FL.projection()
    for x in FK.sset.cells:
        assert pL(Fs.assign[x]) == s(pK.assign[x])


def test_F_inclusion_preserves_structure():
    i, FK, FL = F_inclusion(horn(3, 1))
    i.check()
    assert i.is_mono()
    assert marbled_map_ok(i, FK, FL)


# --- marbled fibrations ------------------------------------------------------------


def test_family_covers_three_bases():
    assert {len(P.S.objects) for P in marbled_family()} == {1, 2, 3}


def test_flatness_refuses_a_pushforward_breaking_pullbacks():
    # P(12) -> [1] with the empty set over 0 and the rest over 1: the pullback {1} x_{12} {2} = e
    # goes to 0 while the pullback of 1 <- 1 -> 1 is 1
    spec = {"base": 1, "fibers": ["P(12)", "poset2.1"], "pushes": [{"e": "a", "1": "b", "2": "b", "12": "b"}]}
    with pytest.raises(FlatnessError):
        MarbledFibration(diagram_from_data(spec), name="bad")


def test_fiber_without_pullbacks_is_refused():
    with pytest.raises(FlatnessError):
        MarbledFibration(diagram_from_data({"base": 0, "fibers": ["poset3.3"], "pushes": []}))


def test_contravariant_diagrams_are_refused():
    with pytest.raises(ValueError):
        MarbledFibration(diagram("chain-top", "contra"))


def constant_chain():
    spec = {"base": 1, "fibers": ["poset2.1", "poset2.1"], "pushes": [{"a": "a", "b": "b"}]}
    return MarbledFibration(diagram_from_data(spec), name="constant-chain")


def test_literal_lift_test_finds_the_counterexample():
    # with every marbled bottom map F(Delta^2) -> S, F(s_2) fails to lift
    i, FK, FL = F_inclusion(spine(2))
    rep = marbled_trivial_cofib_test(i, FK, FL, [constant_chain()])
    assert not rep["ok"] and rep["fibration"] == "constant-chain"


def test_projection_lift_test_passes_on_the_same_fibration():
    i, FK, FL = F_inclusion(spine(2))
    assert marbled_trivial_cofib_test(i, FK, FL, [constant_chain()], over=FL.projection())["ok"]


def test_identity_lifts_vacuously():
    FL = F_marked(flat(standard_simplex(1)))
    i = identity_map(FL.sset)
    assert marbled_trivial_cofib_test(i, FL, FL, marbled_family(["chain-top"]))["ok"]


def test_F_of_marked_left_horn_lifts():
    K = l_marking(horn(2, 0).source)
    L = l_marking(standard_simplex(2))
    i, FK, FL = F_inclusion(horn(2, 0), K, L)
    rep = marbled_trivial_cofib_test(i, FK, FL, marbled_family(["chain-top", "const-a", "point-chain"]),
                                     over=FL.projection())
    assert rep["ok"]


# --- the fibrewise construction -------------------------------------------------------


def test_fibrewise_over_a_point_has_the_fiber_vertices():
    P = MarbledFibration(diagram("point-span"), name="point-span")
    A = aeff_fibrewise(P)
    assert A.count(0) == len(category("poset3.2").objects)


def test_constant_chain_fiber_counts():
    P = constant_chain()
    A = aeff_fibrewise(P)
    over = {}
    for v in A.simplices(0):
        over.setdefault(A.rho(v), []).append(v)
    assert sorted(len(vs) for vs in over.values()) == [2, 2]


@pytest.mark.parametrize("s", [0, 1])
def test_fiber_comparison_on_constant_chain(s):
    assert fiber_comparison(constant_chain(), s, 3).ok


def test_thm310_on_constant_chain():
    rep = verify_thm310(constant_chain(), 3)
    assert rep["ok"], rep


def test_representability_on_an_edge():
    P = constant_chain()
    NS = P.base.sset
    edge = next(e for e in NS.simplices(1) if not NS.is_degenerate(e))
    assign = {(0,): NS.act((0,), edge), (1,): NS.act((1,), edge), (0, 1): edge}
    sigma = lambda s: NS.act(s.sigma, assign[s.target])  # noqa: E731
    rep = representability_check(P, flat(standard_simplex(1)), sigma)
    assert rep["ok"] and rep["maps"] > 0


# --- JSON ----------------------------------------------------------------------------


@pytest.mark.parametrize("K", [flat(standard_simplex(1)), l_marking(standard_simplex(2))], ids=["d1", "ld2"])
def test_marbled_json_round_trip(K):
    X = F_marked(K)
    data = json.loads(json.dumps(marbled_to_json(X)))
    Y = marbled_from_json(data)
    assert Y.sset.counts() == X.sset.counts()
    assert len(Y.marked) == len(X.marked)
    assert len(nonconstant_blazes(Y)) == len(nonconstant_blazes(X))


def test_marbled_rejects_a_non_square():
    D = standard_simplex(2)
    with pytest.raises(ValueError):
        MarbledSSet(D, (), [(D.ref((0, 1, 2)), D.act((0, 0, 1), D.ref((0, 1))))])
