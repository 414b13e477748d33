import pytest

from burnside_kit.burnside import (
    AdequateTriple,
    aeff,
    check_adequate,
    check_pr22,
    check_thm24,
    compare_with_spans,
    dual_comparisons,
    full_triple,
    is_pullback,
    minimal_ingressive_triple,
    right_dual,
    triple_inclusions,
)
from burnside_kit.category import (
    CategoryError,
    chain_category,
    constant_functor,
    cyclic_group,
    grothendieck,
    identity_functor,
    terminal_category,
)
from burnside_kit.corpus import category, diagram, has_pullbacks, posets, pullback_posets


def posets_with_cospan_no_meet():
    return [P for P in posets(3) if not has_pullbacks(P)]


def arrow(C, a, b):
    return C.hom(a, b)[0]


# --- pullbacks ------------------------------------------------------------------


def test_identity_square_is_a_pullback():
    C = chain_category(1)
    i0 = C.ids[0]
    assert is_pullback(C, (i0, i0, i0, i0))


def test_corner_must_be_the_meet():
    C = chain_category(1)
    u, i0, i1 = arrow(C, 0, 1), C.ids[0], C.ids[1]
    # legs 0 -> 1 <- 0 with corner 0 is a pullback
    assert is_pullback(C, (i0, i0, u, u))
    # legs 1 -> 1 <- 1 with corner 0: the identity cone from 1 does not factor
    assert not is_pullback(C, (u, u, i1, i1))


def test_meets_in_the_subset_lattice():
    P = next(P for P in pullback_posets(4) if len(P.objects) == 4 and len(P.morphisms) == 9)
    for x in P.objects:
        for y in P.objects:
            for z in P.objects:
                for m in P.objects:
                    if not (P.hom(m, x) and P.hom(m, y) and P.hom(x, z) and P.hom(y, z)):
                        continue
                    sq = (arrow(P, m, x), arrow(P, m, y), arrow(P, x, z), arrow(P, y, z))
                    lower = [w for w in P.objects if P.hom(w, x) and P.hom(w, y)]
                    is_meet = all(P.hom(w, m) for w in lower)
                    assert is_pullback(P, sq) == is_meet


def test_noncommuting_square_is_an_error():
    C = cyclic_group(2)
    e = C.ids[next(iter(C.objects))]
    g = next(f for f in C.morphisms if f != e)
    with pytest.raises(CategoryError):
        is_pullback(C, (e, g, e, e))


# --- adequacy --------------------------------------------------------------------


@pytest.mark.parametrize("C", pullback_posets(3), ids=lambda C: C.name)
def test_full_triple_on_pullback_posets_is_adequate(C):
    assert check_adequate(full_triple(C)).ok


@pytest.mark.parametrize("name", ["poset3.3", "Z/2", "Iso", "poset2.1"])
def test_iso_ingressives_are_adequate(name):
    assert check_adequate(minimal_ingressive_triple(category(name))).ok


def test_classes_must_contain_isomorphisms():
    C = chain_category(1)
    with pytest.raises(CategoryError):
        AdequateTriple(C, [C.ids[0]], None)


def test_missing_pullback_is_reported():
    # two minimal elements under a common top have no meet
    C = next(P for P in posets_with_cospan_no_meet())
    rep = check_adequate(full_triple(C))
    assert not rep.ok and rep.failure is not None


# --- A^eff -----------------------------------------------------------------------


def test_aeff_of_an_arrow():
    A = aeff(full_triple(chain_category(1)))
    assert A.count(0) == 2
    edges = list(A.simplices(1))
    assert len(edges) == 5
    assert sum(1 for e in edges if not A.is_degenerate(e)) == 3


def test_aeff_of_the_point():
    A = aeff(full_triple(terminal_category()))
    assert [A.count(n) for n in range(4)] == [1, 1, 1, 1]


def test_two_simplices_over_top_vertices():
    A = aeff(full_triple(chain_category(1)))
    top = [x for x in A.simplices(2) if all(A.vertex_object(A.act((k,), x)) == 1 for k in range(3))]
    assert len(top) == 4


def test_edges_are_spans():
    t = full_triple(chain_category(1))
    A = aeff(t)
    for e in A.simplices(1):
        x, u, y, r, l = A.edge_span(e)
        assert t.C.morphisms[r] == (u, x) and t.C.morphisms[l] == (u, y)
        assert A.span_edge(x, u, y, r, l) == e


@pytest.mark.parametrize("name", ["poset2.1", "Z/2", "Iso"])
def test_homotopy_category_matches_spans(name):
    assert compare_with_spans(full_triple(category(name)))["ok"]


@pytest.mark.parametrize("C", [chain_category(1), category("Z/2")], ids=["arrow", "Z/2"])
def test_inclusions(C):
    rep = triple_inclusions(full_triple(C), 2)
    assert rep["ok"], rep


def test_aeff_is_a_quasicategory():
    rep = check_pr22(full_triple(chain_category(1)), 4)
    assert rep.ok and rep.definitive


def test_aeff_of_z2_is_inner_within_bound():
    assert check_pr22(full_triple(category("Z/2")), 3).ok


# --- the fibration criterion --------------------------------------------------------


def test_identity_functor_passes():
    C = chain_category(1)
    t = full_triple(C)
    rep = check_thm24(identity_functor(C), t, t, 2)
    assert rep["ok"], rep


def test_collapse_to_a_point_has_trivial_lifts():
    C = chain_category(1)
    tC = AdequateTriple(C, C.isos(), None)
    pt = terminal_category()
    rep = check_thm24(constant_functor(C, pt, "*"), tC, full_triple(pt), 2, inner=False)
    assert rep["cocartesian_lifts"]["ok"]


def test_missing_ingressive_lift_is_reported():
    C = chain_category(1)
    tC = AdequateTriple(C, C.isos(), None)
    rep = check_thm24(identity_functor(C), tC, full_triple(C), 2)
    assert not rep["ok"]
    assert not rep["cocartesian_lifts"]["ok"]
    assert rep["cocartesian_lifts"]["g"] == repr(arrow(C, 0, 1))


# --- duals --------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["chain-top", "point-chain", "span-to-chain"])
@pytest.mark.parametrize("variance", ["co", "contra"])
def test_dual_comparisons(name, variance):
    rep = dual_comparisons(diagram(name, variance), 2)
    assert rep["ok"], rep


def test_right_dual_over_a_point():
    _, p, _ = grothendieck(diagram("point-span", "contra"))
    D, to_base = right_dual(p)
    assert D.count(0) == len(p.source.objects)
    assert all(to_base(x)[0] == ("*",) * 1 or len(set(to_base(x)[0])) == 1 for x in D.simplices(1))
